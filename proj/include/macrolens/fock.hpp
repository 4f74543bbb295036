#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace macrolens {

using complex_t = std::complex<double>;

inline constexpr double kDefaultTailTolerance = 1e-12;

/// Truncation policy shared by every state constructor.
///
/// Constructors grow the cutoff until the mass estimated beyond it drops below
/// `tail_tolerance`, then multiply the converged cutoff by `cutoff_scale`
/// (zero padding). A scale of 2 is how the truncation-robustness checks double
/// every cutoff without touching call sites.
struct Truncation {
  double tail_tolerance = kDefaultTailTolerance;
  int cutoff_scale = 1;
};

/// Pure state over photon numbers 0..cutoff-1.
class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(std::vector<complex_t> amplitudes, double tail_mass = 0.0);

  std::size_t cutoff() const noexcept { return amps_.size(); }
  std::span<const complex_t> amplitudes() const noexcept { return amps_; }
  complex_t operator[](std::size_t n) const noexcept { return n < amps_.size() ? amps_[n] : complex_t{}; }
  double tail_mass() const noexcept { return tail_mass_; }
  double norm() const noexcept;

 private:
  std::vector<complex_t> amps_;
  double tail_mass_ = 0.0;
};

/// First and second moments. Quadratures follow x = (a + a^dag)/sqrt(2),
/// p = (a - a^dag)/(i sqrt(2)); the vacuum has var_x = var_p = 1/2.
struct Moments {
  complex_t mean_a;
  double mean_n = 0.0;
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
};

/// Mean and variance of the rotated quadrature x_phi = x cos(phi) + p sin(phi).
struct QuadratureMoments {
  double mean = 0.0;
  double var = 0.0;
};

struct EnsembleComponent {
  double weight;
  FockVector state;
};

/// Statistical mixture of pure states. Weights are positive and sum to one.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleComponent> components);

  std::span<const EnsembleComponent> components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  std::size_t max_cutoff() const noexcept;
  /// Copy with every component zero-padded to max_cutoff().
  Ensemble padded() const;

 private:
  std::vector<EnsembleComponent> components_;
};

FockVector coherent_state(complex_t alpha, const Truncation& trunc = {});
FockVector squeezed_vacuum(double r, const Truncation& trunc = {});
FockVector fock_state(std::size_t n, std::size_t cutoff);

/// Normalized a^m|state> together with N_m = 1/||a^m|state>||.
std::pair<FockVector, double> subtract_photons(const FockVector& state, int m);

/// D(alpha)|state>; the cutoff grows until the output is truncation-converged.
FockVector displace(const FockVector& state, complex_t alpha, const Truncation& trunc = {});

/// (a + sign*b)/||a + sign*b||; sign must be +1 or -1.
FockVector superpose(const FockVector& a, const FockVector& b, int sign);

Moments moments(const FockVector& state);
QuadratureMoments quadrature_moments(const FockVector& state, double angle);

FockVector pad_to_cutoff(const FockVector& state, std::size_t cutoff);

/// |<a|b>|^2, padding the shorter vector with zeros.
double fidelity(const FockVector& a, const FockVector& b);

}  // namespace macrolens
