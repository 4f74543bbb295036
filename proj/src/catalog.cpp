#include "macrolens/catalog.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "macrolens/error.hpp"
#include "macrolens/measurement.hpp"

namespace macrolens {

namespace {

constexpr double kMaxAlpha = 4.0;
constexpr double kMaxSqueezing = 2.5;

void require_range(double value, double lo, double hi, bool open_lo, const char* name) {
  if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be finite");
  const bool below = open_lo ? value <= lo : value < lo;
  if (below || value > hi) {
    throw Error(ErrorKind::UnsupportedRange, std::string(name) + "=" + std::to_string(value) + " outside " +
                                                 (open_lo ? "(" : "[") + std::to_string(lo) + ", " +
                                                 std::to_string(hi) + "]");
  }
}

TwoBranchState assemble(Family family, const FamilyParams& params, FockVector b1, FockVector b2, double angle) {
  const std::size_t n = std::max(b1.cutoff(), b2.cutoff());
  b1 = pad_to_cutoff(b1, n);
  b2 = pad_to_cutoff(b2, n);
  FockVector plus = superpose(b1, b2, +1);
  FockVector minus = superpose(b1, b2, -1);
  const complex_t c{1.0 / std::numbers::sqrt2, 0.0};
  return TwoBranchState{BranchSet({c, c}, {std::move(b1), std::move(b2)}), std::move(plus), std::move(minus), family,
                        params, angle};
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Css: return "css";
    case Family::Psv: return "psv";
    case Family::Dfs: return "dfs";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "css") return Family::Css;
  if (name == "psv") return Family::Psv;
  if (name == "dfs") return Family::Dfs;
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + std::string(name) + "' (expected css, psv or dfs)");
}

TwoBranchState css(double alpha, const Truncation& trunc) {
  require_range(alpha, 0.0, kMaxAlpha, true, "alpha");
  return assemble(Family::Css, {alpha, 0.0, 1}, coherent_state(alpha, trunc), coherent_state(-alpha, trunc), 0.0);
}

TwoBranchState psv(double r, int m, const Truncation& trunc) {
  require_range(r, 0.0, kMaxSqueezing, false, "r");
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "subtraction order m must be >= 1");
  const FockVector squeezed = squeezed_vacuum(r, trunc);
  const auto [lower, n_m] = subtract_photons(squeezed, m);
  const auto [upper, n_m1] = subtract_photons(squeezed, m + 1);
  FockVector b1 = superpose(lower, upper, +1);
  FockVector b2 = superpose(lower, upper, -1);

  // The separating quadrature depends on the squeezing sign convention; take
  // whichever of x and p distinguishes the branches better.
  const complex_t c{1.0 / std::numbers::sqrt2, 0.0};
  const BranchSet branches({c, c}, {b1, b2});
  const double kd_x = d_kd(branches, DetectorModel::homodyne(0.0));
  const double kd_p = d_kd(branches, DetectorModel::homodyne(std::numbers::pi / 2));
  const double angle = kd_p > kd_x ? std::numbers::pi / 2 : 0.0;
  return assemble(Family::Psv, {0.0, r, m}, std::move(b1), std::move(b2), angle);
}

TwoBranchState dfs(double alpha, const Truncation& trunc) {
  require_range(alpha, 0.0, kMaxAlpha, false, "alpha");
  const FockVector vac = fock_state(0, 2);
  const FockVector one = fock_state(1, 2);
  FockVector b1 = displace(superpose(vac, one, +1), alpha, trunc);
  FockVector b2 = displace(superpose(vac, one, -1), alpha, trunc);
  if (alpha == 0.0) {
    const auto n = static_cast<std::size_t>(16 * trunc.cutoff_scale);
    b1 = pad_to_cutoff(b1, n);
    b2 = pad_to_cutoff(b2, n);
  }
  return assemble(Family::Dfs, {alpha, 0.0, 1}, std::move(b1), std::move(b2), 0.0);
}

TwoBranchState make_state(Family family, const FamilyParams& params, const Truncation& trunc) {
  switch (family) {
    case Family::Css: return css(params.alpha, trunc);
    case Family::Psv: return psv(params.r, params.m, trunc);
    case Family::Dfs: return dfs(params.alpha, trunc);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

}  // namespace macrolens
