#include "macrolens/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "macrolens/displacement.hpp"
#include "macrolens/error.hpp"

namespace macrolens {

namespace {

constexpr std::size_t kMaxCutoff = std::size_t{1} << 15;
constexpr double kSubtractionFloor = 1e-14;
constexpr double kSuperpositionFloor = 1e-10;

void check_truncation(const Truncation& trunc) {
  if (!(trunc.tail_tolerance > 0.0 && trunc.tail_tolerance <= 1e-6)) {
    throw Error(ErrorKind::InvalidArgument,
                "tail_tolerance must lie in (0, 1e-6], got " + std::to_string(trunc.tail_tolerance));
  }
  if (trunc.cutoff_scale < 1) {
    throw Error(ErrorKind::InvalidArgument, "cutoff_scale must be >= 1");
  }
}

void check_finite(complex_t z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be finite");
  }
}

std::size_t next_cutoff(std::size_t n) {
  if (n >= kMaxCutoff) {
    throw Error(ErrorKind::UnsupportedRange,
                "truncation did not converge below cutoff " + std::to_string(kMaxCutoff));
  }
  return std::min(2 * n, kMaxCutoff);
}

double squared_norm(std::span<const complex_t> v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

FockVector finish(std::vector<complex_t> amps, double tail, const Truncation& trunc) {
  const double nrm = std::sqrt(squared_norm(amps));
  for (auto& c : amps) c /= nrm;
  amps.resize(amps.size() * static_cast<std::size_t>(trunc.cutoff_scale));
  return FockVector(std::move(amps), tail);
}

// <n|alpha> evaluated in log space so large n neither overflows nor loses the phase.
complex_t coherent_amplitude(double log_abs_alpha, double phase, double half_mean, std::size_t n) {
  const double dn = static_cast<double>(n);
  const double log_mag = -half_mean + dn * log_abs_alpha - 0.5 * std::lgamma(dn + 1.0);
  return std::polar(std::exp(log_mag), dn * phase);
}

// <a>, <a^2>, <n> from the tridiagonal ladder action.
struct LadderExpectations {
  complex_t a;
  complex_t a2;
  double n = 0.0;
};

LadderExpectations ladder_expectations(const FockVector& state) {
  const auto c = state.amplitudes();
  const std::size_t size = c.size();
  LadderExpectations e;
  for (std::size_t k = 0; k < size; ++k) {
    const double dk = static_cast<double>(k);
    e.n += dk * std::norm(c[k]);
    if (k + 1 < size) e.a += std::conj(c[k]) * std::sqrt(dk + 1.0) * c[k + 1];
    if (k + 2 < size) e.a2 += std::conj(c[k]) * std::sqrt((dk + 1.0) * (dk + 2.0)) * c[k + 2];
  }
  return e;
}

}  // namespace

FockVector::FockVector(std::vector<complex_t> amplitudes, double tail_mass)
    : amps_(std::move(amplitudes)), tail_mass_(tail_mass) {
  if (amps_.empty()) throw Error(ErrorKind::InvalidArgument, "FockVector needs cutoff >= 1");
}

double FockVector::norm() const noexcept { return std::sqrt(squared_norm(amps_)); }

Ensemble::Ensemble(std::vector<EnsembleComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::InvalidArgument, "empty ensemble");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight > 0.0 && c.weight <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "ensemble weights must lie in (0, 1]");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "ensemble weights must sum to 1");
  }
}

std::size_t Ensemble::max_cutoff() const noexcept {
  std::size_t n = 0;
  for (const auto& c : components_) n = std::max(n, c.state.cutoff());
  return n;
}

Ensemble Ensemble::padded() const {
  const std::size_t n = max_cutoff();
  std::vector<EnsembleComponent> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back({c.weight, pad_to_cutoff(c.state, n)});
  return Ensemble(std::move(out));
}

FockVector coherent_state(complex_t alpha, const Truncation& trunc) {
  check_finite(alpha, "alpha");
  check_truncation(trunc);
  const double mean = std::norm(alpha);
  if (mean == 0.0) {
    std::vector<complex_t> amps(16);
    amps[0] = 1.0;
    return finish(std::move(amps), 0.0, trunc);
  }
  const double log_abs = std::log(std::abs(alpha));
  const double phase = std::arg(alpha);
  auto cutoff = static_cast<std::size_t>(std::ceil(mean + 10.0 * std::sqrt(mean + 1.0)));
  cutoff = std::max<std::size_t>(16, cutoff);
  for (;;) {
    std::vector<complex_t> amps(cutoff);
    for (std::size_t n = 0; n < cutoff; ++n) amps[n] = coherent_amplitude(log_abs, phase, mean / 2, n);
    // Poisson tail beyond the cutoff, summed term by term past the peak.
    double tail = 0.0;
    for (std::size_t n = cutoff;; ++n) {
      const double term = std::norm(coherent_amplitude(log_abs, phase, mean / 2, n));
      tail += term;
      if (static_cast<double>(n) > mean && term < 1e-40) break;
    }
    if (tail < trunc.tail_tolerance) return finish(std::move(amps), tail, trunc);
    cutoff = next_cutoff(cutoff);
  }
}

FockVector squeezed_vacuum(double r, const Truncation& trunc) {
  if (!std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "squeezing must be finite");
  if (std::abs(r) > 3.0) {
    throw Error(ErrorKind::UnsupportedRange, "|r| > 3 is outside the supported squeezing range");
  }
  check_truncation(trunc);
  const double ratio = -std::tanh(r);
  auto cutoff = static_cast<std::size_t>(std::ceil(20.0 * std::exp(2.0 * std::abs(r))));
  cutoff = std::max<std::size_t>(16, cutoff);
  for (;;) {
    std::vector<complex_t> amps(cutoff);
    // c_{2k+2} = c_{2k} * (-tanh r) * sqrt((2k+1)/(2k+2))
    double c = 1.0 / std::sqrt(std::cosh(r));
    std::size_t n = 0;
    for (; n < cutoff; n += 2) {
      amps[n] = c;
      c *= ratio * std::sqrt((n + 1.0) / (n + 2.0));
    }
    double tail = 0.0;
    for (; c * c >= 1e-40; n += 2) {
      tail += c * c;
      c *= ratio * std::sqrt((n + 1.0) / (n + 2.0));
    }
    if (tail < trunc.tail_tolerance) return finish(std::move(amps), tail, trunc);
    cutoff = next_cutoff(cutoff);
  }
}

FockVector fock_state(std::size_t n, std::size_t cutoff) {
  if (n >= cutoff) {
    throw Error(ErrorKind::InvalidArgument,
                "fock_state: n=" + std::to_string(n) + " must be below cutoff=" + std::to_string(cutoff));
  }
  std::vector<complex_t> amps(cutoff);
  amps[n] = 1.0;
  return FockVector(std::move(amps));
}

std::pair<FockVector, double> subtract_photons(const FockVector& state, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "photon subtraction needs m >= 1");
  std::vector<complex_t> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (int step = 0; step < m; ++step) {
    for (std::size_t n = 0; n + 1 < amps.size(); ++n) amps[n] = std::sqrt(n + 1.0) * amps[n + 1];
    amps.back() = 0.0;
  }
  const double norm2 = squared_norm(amps);
  if (!(norm2 > kSubtractionFloor)) {
    throw Error(ErrorKind::DegenerateSubtraction,
                "a^" + std::to_string(m) + " annihilates the state (norm^2=" + std::to_string(norm2) + ")");
  }
  const double factor = 1.0 / std::sqrt(norm2);
  for (auto& c : amps) c *= factor;
  return {FockVector(std::move(amps), state.tail_mass()), factor};
}

FockVector displace(const FockVector& state, complex_t alpha, const Truncation& trunc) {
  check_finite(alpha, "alpha");
  check_truncation(trunc);
  for (const auto& c : state.amplitudes()) check_finite(c, "amplitude");
  if (alpha == complex_t{}) return state;

  const double in_norm2 = squared_norm(state.amplitudes());
  std::size_t out_cutoff = detail::displaced_dimension(state.cutoff(), std::abs(alpha));
  for (;;) {
    std::vector<complex_t> out(out_cutoff);
    detail::apply_displacement(state.amplitudes(), alpha, out);
    const double tail = std::max(0.0, 1.0 - squared_norm(out) / in_norm2);
    if (tail < trunc.tail_tolerance) return finish(std::move(out), tail, trunc);
    out_cutoff = next_cutoff(out_cutoff);
  }
}

FockVector superpose(const FockVector& a, const FockVector& b, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "superposition sign must be +1 or -1");
  const std::size_t n = std::max(a.cutoff(), b.cutoff());
  std::vector<complex_t> amps(n);
  for (std::size_t i = 0; i < n; ++i) amps[i] = a[i] + static_cast<double>(sign) * b[i];
  const double nrm = std::sqrt(squared_norm(amps));
  if (!(nrm > kSuperpositionFloor)) {
    throw Error(ErrorKind::DegenerateSuperposition, "superposition cancels to zero norm");
  }
  for (auto& c : amps) c /= nrm;
  return FockVector(std::move(amps), std::max(a.tail_mass(), b.tail_mass()));
}

Moments moments(const FockVector& state) {
  const auto e = ladder_expectations(state);
  Moments out;
  out.mean_a = e.a;
  out.mean_n = e.n;
  out.mean_x = std::sqrt(2.0) * e.a.real();
  out.mean_p = std::sqrt(2.0) * e.a.imag();
  out.var_x = e.a2.real() + e.n + 0.5 - out.mean_x * out.mean_x;
  out.var_p = -e.a2.real() + e.n + 0.5 - out.mean_p * out.mean_p;
  return out;
}

QuadratureMoments quadrature_moments(const FockVector& state, double angle) {
  const auto e = ladder_expectations(state);
  const complex_t rot = std::polar(1.0, -angle);
  QuadratureMoments q;
  q.mean = std::sqrt(2.0) * (e.a * rot).real();
  q.var = (e.a2 * rot * rot).real() + e.n + 0.5 - q.mean * q.mean;
  return q;
}

FockVector pad_to_cutoff(const FockVector& state, std::size_t cutoff) {
  if (cutoff < state.cutoff()) {
    throw Error(ErrorKind::InvalidArgument, "pad_to_cutoff cannot shrink from " + std::to_string(state.cutoff()) +
                                                " to " + std::to_string(cutoff));
  }
  std::vector<complex_t> amps(state.amplitudes().begin(), state.amplitudes().end());
  amps.resize(cutoff);
  return FockVector(std::move(amps), state.tail_mass());
}

double fidelity(const FockVector& a, const FockVector& b) {
  const std::size_t n = std::min(a.cutoff(), b.cutoff());
  complex_t overlap{};
  for (std::size_t i = 0; i < n; ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::UnsupportedRange: return "unsupported-range";
    case ErrorKind::DegenerateSubtraction: return "degenerate-subtraction";
    case ErrorKind::DegenerateSuperposition: return "degenerate-superposition";
    case ErrorKind::GridCoverage: return "grid-coverage-error";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::UsePmfDirectly: return "use-pmf-directly";
    case ErrorKind::UnsupportedMixedState: return "unsupported-mixed-state";
    case ErrorKind::InvalidId: return "invalid-id";
    case ErrorKind::Config: return "config-error";
  }
  return "unknown";
}

}  // namespace macrolens
