// Reference kernels: straightforward loops, kept for cross-checking the
// OpenMP versions in kernels_omp.cpp.

#include <cmath>
#include <numbers>
#include <vector>

#include "macrolens/displacement.hpp"
#include "macrolens/kernels.hpp"
#include "macrolens/measurement.hpp"

namespace macrolens::kernels::serial {

void homodyne_density(std::span<const WeightedAmplitudes> components, const Lattice& grid, std::span<double> out) {
  int n_max = 0;
  for (const auto& c : components) n_max = std::max(n_max, static_cast<int>(c.amplitudes.size()) - 1);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const std::vector<double> psi = hermite_functions(grid.at(i), n_max);
    double density = 0.0;
    for (const auto& c : components) {
      std::complex<double> amp{};
      for (std::size_t n = 0; n < c.amplitudes.size(); ++n) amp += c.amplitudes[n] * psi[n];
      density += c.weight * std::norm(amp);
    }
    out[i] = density;
  }
}

void gaussian_mixture(const Lattice& src_grid, std::span<const double> weights, const Lattice& out_grid, double sigma,
                      std::span<double> out) {
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t i = 0; i < out_grid.n; ++i) {
    const double y = out_grid.at(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < src_grid.n; ++j) {
      const double z = (y - src_grid.at(j)) / sigma;
      if (std::abs(z) > 8.0) continue;
      acc += weights[j] * std::exp(-0.5 * z * z);
    }
    out[i] = acc * norm;
  }
}

void lattice_convolve(std::span<const double> masses, std::span<const double> kernel, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(masses.size());
  const auto half = static_cast<std::ptrdiff_t>(kernel.size());
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i) {
    double acc = 0.0;
    for (std::ptrdiff_t k = -(half - 1); k < half; ++k) {
      const std::ptrdiff_t j = i - k;
      if (j < 0 || j >= n) continue;
      acc += kernel[static_cast<std::size_t>(std::abs(k))] * masses[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
}

void wigner_grid(std::span<const WeightedAmplitudes> components, const Lattice& xs, const Lattice& ps,
                 std::span<double> out) {
  std::vector<std::complex<double>> work;
  for (std::size_t ip = 0; ip < ps.n; ++ip) {
    for (std::size_t ix = 0; ix < xs.n; ++ix) {
      const std::complex<double> a(xs.at(ix) / std::sqrt(2.0), ps.at(ip) / std::sqrt(2.0));
      double value = 0.0;
      for (const auto& c : components) value += c.weight * detail::displaced_parity(c.amplitudes, a, work);
      out[ip * xs.n + ix] = value / std::numbers::pi;
    }
  }
}

}  // namespace macrolens::kernels::serial
