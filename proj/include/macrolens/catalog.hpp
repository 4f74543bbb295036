#pragma once

#include <string_view>

#include "macrolens/distinguishability.hpp"
#include "macrolens/fock.hpp"

namespace macrolens {

enum class Family { Css, Psv, Dfs };

std::string_view to_string(Family family) noexcept;
/// "css", "psv" or "dfs"; anything else is invalid-argument.
Family parse_family(std::string_view name);

struct FamilyParams {
  double alpha = 0.0;  ///< CSS amplitude or DFS displacement (real)
  double r = 0.0;      ///< PSV squeezing
  int m = 1;           ///< PSV subtraction order
};

/// Two equally weighted branches plus the superpositions psi_+- = b1 +- b2.
struct TwoBranchState {
  BranchSet branch_set;
  FockVector psi_plus;
  FockVector psi_minus;
  Family family;
  FamilyParams params;
  double recommended_homodyne_angle = 0.0;

  const FockVector& psi(int sign) const { return sign > 0 ? psi_plus : psi_minus; }
  /// The scanned parameter: alpha for CSS/DFS, r for PSV.
  double parameter() const noexcept { return family == Family::Psv ? params.r : params.alpha; }
};

/// Coherent-state superposition, branches |alpha> and |-alpha>, 0 < alpha <= 4.
TwoBranchState css(double alpha, const Truncation& trunc = {});

/// Photon-subtracted squeezed vacuum, branches
/// (N_m a^m S(r)|0> +- N_{m+1} a^{m+1} S(r)|0>)/sqrt(2), 0 <= r <= 2.5.
/// The homodyne angle in {0, pi/2} with the larger ideal D_KD is recorded.
TwoBranchState psv(double r, int m = 1, const Truncation& trunc = {});

/// Displaced single-photon superposition, branches D(alpha)(|0> +- |1>)/sqrt(2), 0 <= alpha <= 4.
TwoBranchState dfs(double alpha, const Truncation& trunc = {});

TwoBranchState make_state(Family family, const FamilyParams& params, const Truncation& trunc = {});

}  // namespace macrolens
