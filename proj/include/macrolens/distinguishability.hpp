#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "macrolens/fock.hpp"
#include "macrolens/measurement.hpp"

namespace macrolens {

/// Branches |b_k> with coefficients c_k of a state sum_k c_k |q_k>|b_k>, where
/// the heralding states |q_k> are orthogonal and idealized away.
class BranchSet {
 public:
  /// Requires B >= 2 matching entries, sum |c_k|^2 = 1 and normalized branches.
  BranchSet(std::vector<complex_t> coefficients, std::vector<FockVector> branches);

  std::size_t size() const noexcept { return branches_.size(); }
  std::span<const complex_t> coefficients() const noexcept { return coefficients_; }
  std::span<const FockVector> branches() const noexcept { return branches_; }
  double weight(std::size_t k) const { return std::norm(coefficients_.at(k)); }

 private:
  std::vector<complex_t> coefficients_;
  std::vector<FockVector> branches_;
};

/// Weights of the mixture of every branch except `k` (0-based), renormalized;
/// entry k is zero.
std::vector<double> complement_weights(const BranchSet& set, std::size_t k);

/// The mixed state of the remaining branches, l != k, with weights
/// |c_l|^2 / sum_{l != k} |c_l|^2. `k` is 0-based.
Ensemble complement_mixture(const BranchSet& set, std::size_t k);

/// Overlap integral of sqrt(P Q); throws grid-mismatch unless both live on the same grid.
double bhattacharyya_coeff(const Pdf& p, const Pdf& q);
double bhattacharyya_coeff(const Pmf& p, const Pmf& q);

/// Half the L1 distance between P and Q.
double kolmogorov_distance(const Pdf& p, const Pdf& q);
double kolmogorov_distance(const Pmf& p, const Pmf& q);

/// Minimum single-shot error probability for equal priors: (1 - KD)/2.
inline double error_probability(double kolmogorov) { return 0.5 * (1.0 - kolmogorov); }

struct Distinguishability {
  double d_bc = 0.0;
  double d_kd = 0.0;
};

/// Both branch distinguishabilities under `detector`, computed from one set of
/// branch distributions on a shared grid. Results are clamped to [0, 1].
Distinguishability distinguishability(const BranchSet& set, const DetectorModel& detector);

double d_bc(const BranchSet& set, const DetectorModel& detector);
double d_kd(const BranchSet& set, const DetectorModel& detector);

/// Photon-counting Kolmogorov distinguishability of the displaced single-photon
/// branches D(alpha)(|0> +- |1>)/sqrt(2), by direct series summation.
/// Real alpha > 0 only.
double dfs_kd_closed_form(double alpha);

}  // namespace macrolens
