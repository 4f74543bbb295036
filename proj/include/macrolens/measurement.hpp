#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "macrolens/fock.hpp"

namespace macrolens {

inline constexpr std::size_t kDefaultGridPoints = 2048;

/// Uniform grid [min, max] with n_points samples (endpoints included).
struct Grid {
  double min = 0.0;
  double max = 0.0;
  std::size_t n_points = 0;

  double step() const noexcept { return (max - min) / static_cast<double>(n_points - 1); }
  double at(std::size_t i) const noexcept { return min + static_cast<double>(i) * step(); }
  bool operator==(const Grid&) const = default;
};

/// Sampled probability density on a uniform grid.
struct Pdf {
  Grid grid;
  std::vector<double> values;

  std::size_t n_points() const noexcept { return values.size(); }
};

/// Photon-count distribution over n = 0..cutoff-1.
struct Pmf {
  std::vector<double> probabilities;
};

enum class DetectorKind { Homodyne, Pnrd };

/// Measurement kind plus Gaussian resolution sigma. Sigma is in quadrature
/// units for homodyne and photon-number units for PNRD; the two are never
/// converted into each other.
struct DetectorModel {
  DetectorKind kind = DetectorKind::Homodyne;
  double angle = 0.0;
  double sigma = 0.0;

  static DetectorModel homodyne(double angle, double sigma = 0.0) { return {DetectorKind::Homodyne, angle, sigma}; }
  static DetectorModel pnrd(double sigma = 0.0) { return {DetectorKind::Pnrd, 0.0, sigma}; }

  /// Throws invalid-argument on negative sigma or a non-finite angle.
  void validate() const;
};

/// Normalized Hermite functions psi_0..psi_{n_max} at x.
std::vector<double> hermite_functions(double x, int n_max);

double trapezoid(std::span<const double> values, double step);
double integral(const Pdf& pdf);
double mean(const Pdf& pdf);
double variance(const Pdf& pdf);

/// Grid spanning mean +- (6 sqrt(max var) + 1) of every state's rotated quadrature.
Grid auto_homodyne_grid(std::span<const FockVector* const> states, double angle,
                        std::size_t n_points = kDefaultGridPoints);

/// P(x) = |sum_n c_n e^{-i n angle} psi_n(x)|^2 on `grid`; an Ensemble gives the
/// weight-averaged density. Throws grid-coverage-error if the captured mass
/// misses 1 by more than 1e-6.
Pdf homodyne_pdf(const FockVector& state, double angle, const Grid& grid);
Pdf homodyne_pdf(const Ensemble& ensemble, double angle, const Grid& grid);

/// Same, on an automatically chosen grid that widens until coverage holds.
Pdf homodyne_pdf(const FockVector& state, double angle);
Pdf homodyne_pdf(const Ensemble& ensemble, double angle);

Pmf pnrd_pmf(const FockVector& state);
Pmf pnrd_pmf(const Ensemble& ensemble);

/// Convolution with a unit-mass Gaussian of width sigma. The output grid is
/// the input grid extended by 6 sigma on both sides (coarsened to at most
/// 4096 points for wide kernels); it depends only on the input grid and sigma.
Pdf blur_pdf(const Pdf& pdf, double sigma);

/// Gaussian mixture with width sigma centred on the integer outcomes, sampled
/// on [-6 sigma, cutoff - 1 + 6 sigma]. sigma == 0 throws use-pmf-directly.
Pdf blur_pmf(const Pmf& pmf, double sigma);

/// Wigner function W(x, p) on a tensor grid, x as the fast index.
struct WignerField {
  Grid x;
  Grid p;
  std::vector<double> values;

  double at(std::size_t ix, std::size_t ip) const noexcept { return values[ip * x.n_points + ix]; }
};

WignerField wigner(const FockVector& state, const Grid& x, const Grid& p);
WignerField wigner(const Ensemble& ensemble, const Grid& x, const Grid& p);

/// Integral of W over p at every x (trapezoid), i.e. the x marginal.
std::vector<double> x_marginal(const WignerField& field);
std::vector<double> p_marginal(const WignerField& field);

}  // namespace macrolens
