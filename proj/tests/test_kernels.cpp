#include <doctest.h>

#include <cmath>
#include <vector>

#include "macrolens/fock.hpp"
#include "macrolens/kernels.hpp"
#include "support.hpp"

using namespace macrolens;
using namespace macrolens::kernels;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<complex_t> rotated(const FockVector& s, double phi) {
  std::vector<complex_t> out(s.amplitudes().begin(), s.amplitudes().end());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= std::polar(1.0, -static_cast<double>(n) * phi);
  return out;
}

}  // namespace

TEST_CASE("homodyne density: parallel matches serial") {
  const auto a = rotated(superpose(coherent_state(2.0), coherent_state(-2.0), -1), 0.4);
  const auto b = rotated(squeezed_vacuum(1.2), 0.4);
  const std::vector<WeightedAmplitudes> comps{{0.3, a}, {0.7, b}};
  const Lattice grid{-15.0, 30.0 / 1999.0, 2000};
  std::vector<double> s(grid.n), p(grid.n);
  serial::homodyne_density(comps, grid, s);
  parallel::homodyne_density(comps, grid, p);
  CHECK(max_abs_diff(s, p) < 1e-12);
}

TEST_CASE("homodyne density: far tails stay finite") {
  const auto v = squeezed_vacuum(2.5);
  const std::vector<WeightedAmplitudes> comps{{1.0, v.amplitudes()}};
  const Lattice grid{-40.0, 1.0, 81};
  std::vector<double> s(grid.n), p(grid.n);
  serial::homodyne_density(comps, grid, s);
  parallel::homodyne_density(comps, grid, p);
  for (std::size_t i = 0; i < grid.n; ++i) {
    CHECK(std::isfinite(p[i]));
    CHECK(std::abs(s[i] - p[i]) <= 1e-12 * std::max(1.0, s[i]));
  }
}

TEST_CASE("gaussian mixture: parallel matches serial") {
  std::vector<double> w(300);
  for (auto& x : w) x = testing::uniform(0.0, 1.0);
  const Lattice src{-3.0, 0.02, w.size()};
  const Lattice out{-10.0, 0.01, 2000};
  for (double sigma : {0.05, 0.7, 3.0}) {
    std::vector<double> s(out.n), p(out.n);
    serial::gaussian_mixture(src, w, out, sigma, s);
    parallel::gaussian_mixture(src, w, out, sigma, p);
    CHECK(max_abs_diff(s, p) < 1e-12);
  }
}

TEST_CASE("lattice convolution: parallel matches serial") {
  std::vector<double> masses(1000), kernel(40);
  for (auto& m : masses) m = testing::uniform(0.0, 1.0);
  for (std::size_t k = 0; k < kernel.size(); ++k) kernel[k] = std::exp(-0.01 * static_cast<double>(k * k));
  std::vector<double> s(masses.size()), p(masses.size());
  serial::lattice_convolve(masses, kernel, s);
  parallel::lattice_convolve(masses, kernel, p);
  CHECK(max_abs_diff(s, p) < 1e-12);
}

TEST_CASE("wigner grid: parallel matches serial") {
  const auto cat = superpose(coherent_state(1.5), coherent_state(-1.5), -1);
  const auto sq = displace(squeezed_vacuum(0.5), complex_t{0.3, 0.8});
  const std::vector<WeightedAmplitudes> comps{{0.5, cat.amplitudes()}, {0.5, sq.amplitudes()}};
  const Lattice xs{-4.0, 0.2, 41};
  const Lattice ps{-3.0, 0.25, 25};
  std::vector<double> s(xs.n * ps.n), p(xs.n * ps.n);
  serial::wigner_grid(comps, xs, ps, s);
  parallel::wigner_grid(comps, xs, ps, p);
  CHECK(max_abs_diff(s, p) < 1e-13);
}
