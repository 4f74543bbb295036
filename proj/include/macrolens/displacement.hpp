#pragma once
// Displacement-operator matrix elements, shared by the Fock-space code and
// the Wigner kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace macrolens::detail {

/// Calls emit(k, value) with value = <k+offset|D(beta)|k> / e^{i offset arg beta}
/// for k = 0..len-1, where |beta| = mag. The same magnitudes, with phase
/// e^{i offset arg(-conj beta)}, give <k|D(beta)|k+offset>.
///
/// value = |beta|^offset e^{-|beta|^2/2} sqrt(k!/(k+offset)!) L_k^{(offset)}(|beta|^2),
/// computed by the normalized Laguerre recurrence with a running log scale.
/// `roots[i]` must hold sqrt(i) for i < offset + len.
template <class Fn>
void for_each_displacement_element(double mag, std::size_t offset, std::size_t len, std::span<const double> roots,
                                   Fn&& emit) {
  const double x = mag * mag;
  const double a = static_cast<double>(offset);
  const double log_prefactor = (offset == 0 ? 0.0 : a * std::log(mag)) - x / 2.0 - 0.5 * std::lgamma(a + 1.0);
  double factor = std::exp(log_prefactor);
  double log_scale = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  for (std::size_t k = 0; k < len; ++k) {
    if (k > 0) {
      const double dk = static_cast<double>(k - 1);
      const double next = ((2.0 * dk + 1.0 + a - x) * cur - roots[k - 1] * roots[k - 1 + offset] * prev) /
                          (roots[k] * roots[k + offset]);
      prev = cur;
      cur = next;
      if (std::abs(cur) > 1e150) {
        const double s = std::abs(cur);
        prev /= s;
        cur /= s;
        log_scale += std::log(s);
        factor = std::exp(log_prefactor + log_scale);
      }
    }
    emit(k, cur * factor);
  }
}

/// out[m] = sum_n <m|D(beta)|n> in[n] for m < out.size(); out is overwritten.
inline void apply_displacement(std::span<const std::complex<double>> in, std::complex<double> beta,
                               std::span<std::complex<double>> out) {
  std::fill(out.begin(), out.end(), std::complex<double>{});
  const double mag = std::abs(beta);
  if (mag == 0.0) {
    std::copy_n(in.begin(), std::min(in.size(), out.size()), out.begin());
    return;
  }
  const std::size_t n_in = in.size();
  const std::size_t n_out = out.size();
  std::vector<double> roots(n_in + n_out);
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = std::sqrt(static_cast<double>(i));
  const double up = std::arg(beta);
  const double down = std::arg(-std::conj(beta));
  for (std::size_t offset = 0; offset < n_out; ++offset) {
    const std::size_t len = std::min(n_out - offset, n_in);
    if (len == 0) break;
    const auto phase = std::polar(1.0, static_cast<double>(offset) * up);
    for_each_displacement_element(mag, offset, len, roots,
                                  [&](std::size_t k, double v) { out[k + offset] += v * phase * in[k]; });
  }
  for (std::size_t offset = 1; offset < n_in; ++offset) {
    const std::size_t len = std::min(n_in - offset, n_out);
    if (len == 0) break;
    const auto phase = std::polar(1.0, static_cast<double>(offset) * down);
    for_each_displacement_element(mag, offset, len, roots, [&](std::size_t k, double v) { out[k] += v * phase * in[k + offset]; });
  }
}

/// Output dimension that holds D(beta) applied to a state confined below `n_in`.
inline std::size_t displaced_dimension(std::size_t n_in, double mag) {
  return n_in + static_cast<std::size_t>(std::ceil(mag * mag + 8.0 * mag + 8.0));
}

/// Parity expectation of D(-a)|psi>, i.e. pi * W(a) for |psi>. The work
/// dimension doubles until the displaced norm is captured to 1e-13.
inline double displaced_parity(std::span<const std::complex<double>> amps, std::complex<double> a,
                               std::vector<std::complex<double>>& work) {
  double in_norm = 0.0;
  for (const auto& c : amps) in_norm += std::norm(c);
  std::size_t dim = displaced_dimension(amps.size(), std::abs(a));
  for (;;) {
    work.resize(dim);
    apply_displacement(amps, -a, work);
    double parity = 0.0;
    double norm = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double p = std::norm(work[k]);
      norm += p;
      parity += (k % 2 == 0) ? p : -p;
    }
    if (in_norm - norm < 1e-13 * in_norm) return parity;
    dim *= 2;
  }
}

}  // namespace macrolens::detail
