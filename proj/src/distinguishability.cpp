#include "macrolens/distinguishability.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "macrolens/error.hpp"

namespace macrolens {

namespace {

constexpr double kClampReport = 1e-9;
constexpr int kMaxWidenings = 8;

double clamp_unit(double raw, const char* what) {
  if (raw < -kClampReport || raw > 1.0 + kClampReport) {
    std::clog << "macrolens: clamping " << what << " = " << raw << " into [0, 1]\n";
  }
  return std::clamp(raw, 0.0, 1.0);
}

void require_same_grid(const Pdf& p, const Pdf& q) {
  if (!(p.grid == q.grid) || p.values.size() != q.values.size()) {
    throw Error(ErrorKind::GridMismatch, "distributions live on different grids");
  }
}

void require_same_support(const Pmf& p, const Pmf& q) {
  if (p.probabilities.size() != q.probabilities.size()) {
    throw Error(ErrorKind::GridMismatch, "PMFs have different supports (" + std::to_string(p.probabilities.size()) +
                                             " vs " + std::to_string(q.probabilities.size()) + ")");
  }
}

// Weighted average of distributions sharing one grid.
Pdf mix(const std::vector<Pdf>& parts, std::span<const double> weights) {
  Pdf out{parts.front().grid, std::vector<double>(parts.front().values.size())};
  for (std::size_t l = 0; l < parts.size(); ++l) {
    if (weights[l] == 0.0) continue;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += weights[l] * parts[l].values[i];
  }
  return out;
}

Pmf mix(const std::vector<Pmf>& parts, std::span<const double> weights) {
  Pmf out{std::vector<double>(parts.front().probabilities.size())};
  for (std::size_t l = 0; l < parts.size(); ++l) {
    if (weights[l] == 0.0) continue;
    for (std::size_t i = 0; i < out.probabilities.size(); ++i) out.probabilities[i] += weights[l] * parts[l].probabilities[i];
  }
  return out;
}

template <class Distribution>
Distinguishability compare_branches(const BranchSet& set, const std::vector<Distribution>& per_branch) {
  double overlap = 0.0;
  double kd = 0.0;
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto complement = mix(per_branch, complement_weights(set, k));
    overlap += set.weight(k) * bhattacharyya_coeff(per_branch[k], complement);
    kd += set.weight(k) * kolmogorov_distance(per_branch[k], complement);
  }
  return {clamp_unit(1.0 - overlap, "D_BC"), clamp_unit(kd, "D_KD")};
}

// Every branch on one grid spanning all of their supports.
std::vector<Pdf> branch_homodyne_pdfs(const BranchSet& set, double angle) {
  std::vector<const FockVector*> states;
  for (const auto& b : set.branches()) states.push_back(&b);
  Grid grid = auto_homodyne_grid(states, angle);
  for (int attempt = 0;; ++attempt) {
    try {
      std::vector<Pdf> out;
      out.reserve(states.size());
      for (const FockVector* s : states) out.push_back(homodyne_pdf(*s, angle, grid));
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::GridCoverage || attempt >= kMaxWidenings) throw;
    }
    const double centre = 0.5 * (grid.min + grid.max);
    const double half = 0.75 * (grid.max - grid.min);
    grid = {centre - half, centre + half, grid.n_points + grid.n_points / 2};
  }
}

}  // namespace

BranchSet::BranchSet(std::vector<complex_t> coefficients, std::vector<FockVector> branches)
    : coefficients_(std::move(coefficients)), branches_(std::move(branches)) {
  if (branches_.size() < 2) throw Error(ErrorKind::InvalidArgument, "a branch set needs at least two branches");
  if (coefficients_.size() != branches_.size()) {
    throw Error(ErrorKind::InvalidArgument, "one coefficient per branch is required");
  }
  double total = 0.0;
  for (const auto& c : coefficients_) total += std::norm(c);
  if (std::abs(total - 1.0) > 1e-10) throw Error(ErrorKind::InvalidArgument, "sum |c_k|^2 must equal 1");
  for (const auto& b : branches_) {
    if (std::abs(b.norm() - 1.0) > 1e-10) throw Error(ErrorKind::InvalidArgument, "branches must be normalized");
  }
}

std::vector<double> complement_weights(const BranchSet& set, std::size_t k) {
  if (set.size() < 2) throw Error(ErrorKind::InvalidArgument, "complement needs at least two branches");
  if (k >= set.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "branch index " + std::to_string(k) + " out of range for " + std::to_string(set.size()) + " branches");
  }
  std::vector<double> w(set.size());
  double total = 0.0;
  for (std::size_t l = 0; l < set.size(); ++l) {
    if (l == k) continue;
    w[l] = set.weight(l);
    total += w[l];
  }
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidArgument, "remaining branches carry no weight");
  for (auto& x : w) x /= total;
  return w;
}

Ensemble complement_mixture(const BranchSet& set, std::size_t k) {
  const auto w = complement_weights(set, k);
  std::vector<EnsembleComponent> parts;
  for (std::size_t l = 0; l < set.size(); ++l) {
    if (w[l] > 0.0) parts.push_back({w[l], set.branches()[l]});
  }
  return Ensemble(std::move(parts));
}

double bhattacharyya_coeff(const Pdf& p, const Pdf& q) {
  require_same_grid(p, q);
  std::vector<double> root(p.values.size());
  for (std::size_t i = 0; i < root.size(); ++i) root[i] = std::sqrt(std::max(0.0, p.values[i]) * std::max(0.0, q.values[i]));
  return trapezoid(root, p.grid.step());
}

double bhattacharyya_coeff(const Pmf& p, const Pmf& q) {
  require_same_support(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.probabilities.size(); ++i) {
    s += std::sqrt(std::max(0.0, p.probabilities[i]) * std::max(0.0, q.probabilities[i]));
  }
  return s;
}

double kolmogorov_distance(const Pdf& p, const Pdf& q) {
  require_same_grid(p, q);
  // Trapezoid on |P - Q|, except that cells where P - Q changes sign are
  // integrated through the linear zero crossing instead of across the kink.
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < p.values.size(); ++i) {
    const double a = p.values[i] - q.values[i];
    const double b = p.values[i + 1] - q.values[i + 1];
    const double span = std::abs(a) + std::abs(b);
    if (a * b < 0.0) sum += (a * a + b * b) / span;
    else sum += span;
  }
  return 0.25 * sum * p.grid.step();
}

double kolmogorov_distance(const Pmf& p, const Pmf& q) {
  require_same_support(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.probabilities.size(); ++i) s += std::abs(p.probabilities[i] - q.probabilities[i]);
  return 0.5 * s;
}

Distinguishability distinguishability(const BranchSet& set, const DetectorModel& detector) {
  detector.validate();
  if (detector.kind == DetectorKind::Homodyne) {
    auto pdfs = branch_homodyne_pdfs(set, detector.angle);
    if (detector.sigma > 0.0) {
      for (auto& pdf : pdfs) pdf = blur_pdf(pdf, detector.sigma);
    }
    return compare_branches(set, pdfs);
  }

  std::size_t cutoff = 0;
  for (const auto& b : set.branches()) cutoff = std::max(cutoff, b.cutoff());
  std::vector<Pmf> pmfs;
  for (const auto& b : set.branches()) pmfs.push_back(pnrd_pmf(pad_to_cutoff(b, cutoff)));
  if (detector.sigma == 0.0) return compare_branches(set, pmfs);

  // The blur axis spans the outcomes, so zero padding beyond the last populated
  // photon number must not stretch it.
  std::size_t populated = 1;
  for (const auto& pmf : pmfs) {
    for (std::size_t n = pmf.probabilities.size(); n > populated; --n) {
      if (pmf.probabilities[n - 1] != 0.0) {
        populated = n;
        break;
      }
    }
  }
  std::vector<Pdf> pdfs;
  for (auto& pmf : pmfs) {
    pmf.probabilities.resize(populated);
    pdfs.push_back(blur_pmf(pmf, detector.sigma));
  }
  return compare_branches(set, pdfs);
}

double d_bc(const BranchSet& set, const DetectorModel& detector) { return distinguishability(set, detector).d_bc; }

double d_kd(const BranchSet& set, const DetectorModel& detector) { return distinguishability(set, detector).d_kd; }

double dfs_kd_closed_form(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "closed form needs real alpha > 0");
  }
  const double a2 = alpha * alpha;
  const double log_alpha = std::log(alpha);
  double sum = 0.0;
  int small_run = 0;
  for (int m = 0;; ++m) {
    // e^{-a^2} alpha^{2m-1} / m! * |m - a^2|
    const double term = std::exp(-a2 + (2.0 * m - 1.0) * log_alpha - std::lgamma(m + 1.0)) * std::abs(m - a2);
    sum += term;
    if (m > a2) {
      small_run = term < 1e-16 ? small_run + 1 : 0;
      if (small_run >= 3) break;
    }
  }
  return sum;
}

}  // namespace macrolens
