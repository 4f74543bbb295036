#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "macrolens/displacement.hpp"
#include "macrolens/kernels.hpp"

namespace macrolens::kernels::parallel {

namespace {

constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);

// Hermite-function recurrence fused with the amplitude sums of every
// component. Mantissas are rescaled whenever they grow past 1e150 so that
// psi_n(x) stays representable where exp(-x^2/2) alone would underflow.
double density_at(double x, std::span<const WeightedAmplitudes> components, std::size_t n_terms,
                  std::vector<std::complex<double>>& acc) {
  std::fill(acc.begin(), acc.end(), std::complex<double>{});
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  for (std::size_t n = 0; n < n_terms; ++n) {
    for (std::size_t k = 0; k < components.size(); ++k) {
      const auto amps = components[k].amplitudes;
      if (n < amps.size()) acc[k] += amps[n] * cur;
    }
    const double dn = static_cast<double>(n);
    const double next = std::sqrt(2.0 / (dn + 1.0)) * x * cur - std::sqrt(dn / (dn + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      for (auto& a : acc) a /= kRescale;
      log_scale += kLogRescale;
    }
  }
  const double factor = std::exp(log_scale);
  double density = 0.0;
  for (std::size_t k = 0; k < components.size(); ++k) {
    const std::complex<double> amp = acc[k] * factor;
    density += components[k].weight * std::norm(amp);
  }
  return density;
}

}  // namespace

void homodyne_density(std::span<const WeightedAmplitudes> components, const Lattice& grid, std::span<double> out) {
  std::size_t n_terms = 0;
  for (const auto& c : components) n_terms = std::max(n_terms, c.amplitudes.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.n);
#pragma omp parallel
  {
    std::vector<std::complex<double>> acc(components.size());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = density_at(grid.at(static_cast<std::size_t>(i)), components, n_terms, acc);
    }
  }
}

void gaussian_mixture(const Lattice& src_grid, std::span<const double> weights, const Lattice& out_grid, double sigma,
                      std::span<double> out) {
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  const double reach = 8.0 * sigma + src_grid.dx;
  const auto n = static_cast<std::ptrdiff_t>(out_grid.n);
  const auto last = static_cast<std::ptrdiff_t>(src_grid.n) - 1;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double y = out_grid.at(static_cast<std::size_t>(i));
    const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::floor((y - reach - src_grid.x0) / src_grid.dx)));
    const auto hi = std::min<std::ptrdiff_t>(last, static_cast<std::ptrdiff_t>(std::ceil((y + reach - src_grid.x0) / src_grid.dx)));
    double acc = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      const double z = (y - src_grid.at(static_cast<std::size_t>(j))) / sigma;
      if (std::abs(z) > 8.0) continue;
      acc += weights[static_cast<std::size_t>(j)] * std::exp(-0.5 * z * z);
    }
    out[static_cast<std::size_t>(i)] = acc * norm;
  }
}

void lattice_convolve(std::span<const double> masses, std::span<const double> kernel, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(masses.size());
  const auto half = static_cast<std::ptrdiff_t>(kernel.size());
  const auto n_out = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n_out; ++i) {
    const std::ptrdiff_t k_lo = std::max(-(half - 1), i - (n - 1));
    const std::ptrdiff_t k_hi = std::min(half - 1, i);
    double acc = 0.0;
    for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k) {
      acc += kernel[static_cast<std::size_t>(k < 0 ? -k : k)] * masses[static_cast<std::size_t>(i - k)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
}

void wigner_grid(std::span<const WeightedAmplitudes> components, const Lattice& xs, const Lattice& ps,
                 std::span<double> out) {
  const auto total = static_cast<std::ptrdiff_t>(xs.n * ps.n);
#pragma omp parallel
  {
    std::vector<std::complex<double>> work;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
      const auto ix = static_cast<std::size_t>(idx) % xs.n;
      const auto ip = static_cast<std::size_t>(idx) / xs.n;
      const std::complex<double> a(xs.at(ix) / std::sqrt(2.0), ps.at(ip) / std::sqrt(2.0));
      double value = 0.0;
      for (const auto& c : components) value += c.weight * detail::displaced_parity(c.amplitudes, a, work);
      out[static_cast<std::size_t>(idx)] = value / std::numbers::pi;
    }
  }
}

}  // namespace macrolens::kernels::parallel
