#include "macrolens/macroscopicity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "macrolens/catalog.hpp"
#include "macrolens/error.hpp"

namespace macrolens {

double n_fluct(const FockVector& state) {
  const Moments mo = moments(state);
  return std::max(0.0, mo.mean_n - std::norm(mo.mean_a));
}

double n_fluct(const Ensemble&) {
  throw Error(ErrorKind::UnsupportedMixedState,
              "fluctuation photon number is defined for pure states only; mixed-state input rejected");
}

double m_subjective(double superposition_n, double distinguishability) {
  if (!(superposition_n >= 0.0) || !std::isfinite(superposition_n)) {
    throw Error(ErrorKind::InvalidArgument, "macroscopicity must be a finite value >= 0");
  }
  if (!(distinguishability >= 0.0 && distinguishability <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "distinguishability " + std::to_string(distinguishability) + " is outside [0, 1]");
  }
  return superposition_n * distinguishability;
}

MacroReport report(const TwoBranchState& state, int sign, const DetectorModel& detector) {
  return report(state, sign, distinguishability(state.branch_set, detector), detector);
}

MacroReport report(const TwoBranchState& state, int sign, const Distinguishability& d, const DetectorModel& detector) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
  const FockVector& psi = state.psi(sign);
  MacroReport out;
  out.n_fluct = n_fluct(psi);
  out.mean_n = moments(psi).mean_n;
  out.d_bc = d.d_bc;
  out.d_kd = d.d_kd;
  out.m_bc = m_subjective(out.n_fluct, d.d_bc);
  out.m_kd = m_subjective(out.n_fluct, d.d_kd);
  out.detector = detector;
  out.cutoff = psi.cutoff();
  for (const auto& b : state.branch_set.branches()) out.cutoff = std::max(out.cutoff, b.cutoff());
  return out;
}

}  // namespace macrolens
