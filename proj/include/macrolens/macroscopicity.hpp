#pragma once

#include <cstddef>

#include "macrolens/distinguishability.hpp"
#include "macrolens/fock.hpp"
#include "macrolens/measurement.hpp"

namespace macrolens {

struct TwoBranchState;

/// Objective and subjective macroscopicity of one superposition psi_+ or psi_-
/// under one detector.
struct MacroReport {
  double n_fluct = 0.0;  ///< fluctuation photons <n> - |<a>|^2
  double mean_n = 0.0;   ///< total photons <n>
  double d_bc = 0.0;
  double d_kd = 0.0;
  double m_bc = 0.0;  ///< n_fluct * d_bc
  double m_kd = 0.0;  ///< n_fluct * d_kd
  DetectorModel detector;
  std::size_t cutoff = 0;  ///< largest Fock cutoff involved
};

/// <n> - |<a>|^2 = (var_x + var_p - 1)/2, clamped at zero. Pure states only.
double n_fluct(const FockVector& state);
/// Always throws unsupported-mixed-state.
double n_fluct(const Ensemble& ensemble);

/// superposition_n * distinguishability; the latter must lie in [0, 1].
double m_subjective(double superposition_n, double distinguishability);

MacroReport report(const TwoBranchState& state, int sign, const DetectorModel& detector);
/// Variant reusing an already computed branch distinguishability (it does not depend on the sign).
MacroReport report(const TwoBranchState& state, int sign, const Distinguishability& d, const DetectorModel& detector);

}  // namespace macrolens
