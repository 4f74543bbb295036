#include <doctest.h>

#include <cmath>
#include <numbers>

#include "macrolens/catalog.hpp"
#include "macrolens/macroscopicity.hpp"
#include "support.hpp"

using namespace macrolens;

namespace {

void check_two_branch_invariants(const TwoBranchState& s) {
  const auto c = s.branch_set.coefficients();
  REQUIRE(c.size() == 2);
  CHECK(c[0] == complex_t{1.0 / std::numbers::sqrt2});
  CHECK(c[1] == complex_t{1.0 / std::numbers::sqrt2});
  const auto b = s.branch_set.branches();
  CHECK(fidelity(s.psi_plus, superpose(b[0], b[1], +1)) > 1.0 - 1e-10);
  CHECK(fidelity(s.psi_minus, superpose(b[0], b[1], -1)) > 1.0 - 1e-10);
}

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("css") == Family::Css);
  CHECK(parse_family("psv") == Family::Psv);
  CHECK(parse_family("dfs") == Family::Dfs);
  CHECK(to_string(Family::Psv) == "psv");
  CHECK_ERROR_KIND(parse_family("cat"), ErrorKind::InvalidArgument);
}

TEST_CASE("coherent-state superpositions") {
  for (double a : {0.01, 0.5, 1.5, 3.0, 4.0}) check_two_branch_invariants(css(a));
  CHECK(fidelity(css(0.01).psi_minus, fock_state(1, 2)) > 0.9999);
  CHECK(std::abs(n_fluct(css(1.5).psi_minus) - 2.25 / std::tanh(2.25)) < 1e-6);
  CHECK(css(1.5).recommended_homodyne_angle == 0.0);
  CHECK_ERROR_KIND(css(0.0), ErrorKind::UnsupportedRange);
  CHECK_ERROR_KIND(css(4.5), ErrorKind::UnsupportedRange);
}

TEST_CASE("photon-subtracted squeezed vacua") {
  for (double r : {0.1, 1.0, 2.5}) check_two_branch_invariants(psv(r));
  SUBCASE("superpositions are the subtracted states") {
    const auto s = psv(1.0);
    const auto sq = squeezed_vacuum(1.0);
    CHECK(fidelity(s.psi_plus, subtract_photons(sq, 1).first) > 1.0 - 1e-8);
    CHECK(fidelity(s.psi_minus, subtract_photons(sq, 2).first) > 1.0 - 1e-8);
    CHECK(std::abs(n_fluct(s.psi_plus) - (1.5 * std::cosh(2.0) - 0.5)) < 1e-6);
  }
  SUBCASE("higher subtraction order") {
    const auto s = psv(0.8, 2);
    const auto sq = squeezed_vacuum(0.8);
    CHECK(fidelity(s.psi_plus, subtract_photons(sq, 2).first) > 1.0 - 1e-8);
    CHECK(fidelity(s.psi_minus, subtract_photons(sq, 3).first) > 1.0 - 1e-8);
  }
  SUBCASE("recommended angle is the better of 0 and pi/2") {
    const auto s = psv(1.0);
    const double at_0 = d_kd(s.branch_set, DetectorModel::homodyne(0.0));
    const double at_90 = d_kd(s.branch_set, DetectorModel::homodyne(std::numbers::pi / 2));
    const double chosen = d_kd(s.branch_set, DetectorModel::homodyne(s.recommended_homodyne_angle));
    CHECK(chosen == doctest::Approx(std::max(at_0, at_90)));
  }
  SUBCASE("errors") {
    CHECK_ERROR_KIND(psv(0.0), ErrorKind::DegenerateSubtraction);
    CHECK_ERROR_KIND(psv(2.6), ErrorKind::UnsupportedRange);
    CHECK_ERROR_KIND(psv(1.0, 0), ErrorKind::InvalidArgument);
  }
}

TEST_CASE("displaced single-photon superpositions") {
  for (double a : {0.0, 1.0, 2.0, 4.0}) {
    const auto s = dfs(a);
    check_two_branch_invariants(s);
    CHECK(fidelity(s.psi_plus, coherent_state(a)) > 1.0 - 1e-8);
    CHECK(fidelity(s.psi_minus, displace(fock_state(1, 2), a)) > 1.0 - 1e-8);
    CHECK(std::abs(n_fluct(s.psi_plus)) < 1e-8);
    CHECK(std::abs(n_fluct(s.psi_minus) - 1.0) < 1e-8);
  }
  CHECK(std::abs(moments(dfs(2.0).psi_minus).mean_n - 5.0) < 1e-8);
  CHECK(d_kd(dfs(0.0).branch_set, DetectorModel::pnrd()) == doctest::Approx(0.0));
  CHECK_ERROR_KIND(dfs(-0.5), ErrorKind::UnsupportedRange);
  CHECK_ERROR_KIND(dfs(4.5), ErrorKind::UnsupportedRange);
}

TEST_CASE("detector-level family properties") {
  SUBCASE("homodyne sees displaced single photons the same at every amplitude") {
    const double ref = d_kd(dfs(0.0).branch_set, DetectorModel::homodyne(0.0));
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
      CHECK(std::abs(d_kd(dfs(a).branch_set, DetectorModel::homodyne(0.0)) - ref) < 1e-6);
      CHECK(std::abs(d_kd(dfs(a).branch_set, DetectorModel::homodyne(0.0, 1.0)) -
                     d_kd(dfs(0.0).branch_set, DetectorModel::homodyne(0.0, 1.0))) < 1e-6);
    }
    // Two Hermite functions: KD = sqrt(2/pi), up to O(h^2) quadrature error.
    CHECK(std::abs(ref - std::sqrt(2.0 / std::numbers::pi)) < 1e-4);
  }
  SUBCASE("photon counting approaches homodyne at large displacement") {
    const double hom = d_kd(dfs(4.0).branch_set, DetectorModel::homodyne(0.0));
    const double pn = d_kd(dfs(4.0).branch_set, DetectorModel::pnrd());
    CHECK(std::abs(hom - pn) < 0.02);
  }
}
