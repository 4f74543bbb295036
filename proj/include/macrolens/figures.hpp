#pragma once

#include <array>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "macrolens/catalog.hpp"
#include "macrolens/fock.hpp"
#include "macrolens/measurement.hpp"
#include "macrolens/table.hpp"

namespace macrolens {

/// Measures a sweep may emit, in canonical column order.
inline constexpr std::array<std::string_view, 11> kSweepMeasures = {
    "n_plus",    "n_minus",    "mean_n_plus", "mean_n_minus", "d_bc", "d_kd",
    "m_bc_plus", "m_bc_minus", "m_kd_plus",   "m_kd_minus",   "angle"};

/// Parameter sweep over one family. Rows are parameter x sigma.
struct SweepSpec {
  Family family = Family::Css;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
  /// One or both detector kinds. With both, detector-dependent measures get
  /// `_hom` / `_pnrd` suffixes and `angle` is reported for homodyne only.
  std::vector<DetectorKind> detectors{DetectorKind::Homodyne};
  std::optional<double> angle;  ///< homodyne angle; defaults to the family's recommended angle
  int m = 1;                    ///< PSV subtraction order
  std::vector<double> sigmas{0.0};
  std::vector<std::string> measures;  ///< empty means all of kSweepMeasures
  std::string output = "-";
  OutputFormat format = OutputFormat::Csv;

  /// Throws config-error when an invariant (steps >= 2, start < stop, sigma >= 0) fails.
  void validate() const;
};

/// Flat `key = value` text; '#' starts a comment. Unknown or malformed keys are config errors.
SweepSpec parse_sweep_config(std::istream& in);
SweepSpec load_sweep_config(const std::string& path);

ResultTable sweep(const SweepSpec& spec, const Truncation& trunc = {});

struct ComputeRequest {
  Family family = Family::Css;
  FamilyParams params;
  DetectorKind detector = DetectorKind::Homodyne;
  std::optional<double> angle;
  double sigma = 0.0;
};

/// One parameter point rendered as a single table row covering both psi_+ and psi_-.
ResultTable compute(const ComputeRequest& request, const Truncation& trunc = {});

/// Parameter sets used by the detector-noise figures (5, 6 and 7).
inline constexpr std::array<double, 4> kNoiseCssAlphas = {0.5, 1.0, 1.5, 2.0};
inline constexpr std::array<double, 4> kNoisePsvSqueezings = {0.5, 1.0, 1.5, 2.0};
inline constexpr std::array<double, 4> kNoiseDfsAlphas = {0.5, 1.0, 2.0, 3.0};

struct FigureOptions {
  std::optional<int> steps;  ///< points per scanned axis (default 61; Wigner grid default 101)
  Truncation trunc;
};

/// Figure id 1..8 or one of the aliases fig-wigner, fig-css, fig-psv, fig-dfs,
/// fig-noise-css, fig-noise-psv, fig-noise-dfs, fig-summary. Throws invalid-id.
int parse_figure_id(std::string_view text);

ResultTable run_figure(int id, const FigureOptions& options = {});

/// Truncation for Wigner tables. Interference terms respond to amplitudes, not
/// probabilities, so the tail tolerance is squared (floored at 1e-300).
Truncation wigner_truncation(const Truncation& trunc);

/// Evenly spaced values start..stop inclusive.
std::vector<double> linspace(double start, double stop, int steps);

}  // namespace macrolens
