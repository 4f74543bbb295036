// Acceptance report: one [PASS]/[FAIL] line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "macrolens/catalog.hpp"
#include "macrolens/distinguishability.hpp"
#include "macrolens/figures.hpp"
#include "macrolens/macroscopicity.hpp"
#include "macrolens/measurement.hpp"

using namespace macrolens;

namespace {

constexpr double kPi = std::numbers::pi;

// Every number a criterion inspects is recorded so the cutoff-doubling rerun can compare them.
struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<double> numbers;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
  double keep(double v) {
    numbers.push_back(v);
    return v;
  }
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

Outcome coherent_nullity(const Truncation& trunc) {
  Outcome o;
  for (double a : {0.0, 0.5, 1.5, 3.0}) {
    const double n = o.keep(n_fluct(coherent_state(a, trunc)));
    o.require(n < 1e-8, fmt("alpha=%g n_fluct=%.3e", a, n));
  }
  return o;
}

Outcome cat_oracle(const Truncation& trunc) {
  Outcome o;
  for (double a : linspace(0.2, 3.0, 15)) {
    const TwoBranchState s = css(a, trunc);
    const double a2 = a * a;
    const double even = o.keep(n_fluct(s.psi_plus));
    const double odd = o.keep(n_fluct(s.psi_minus));
    o.require(std::abs(even - a2 * std::tanh(a2)) < 1e-6, fmt("even cat alpha=%g off by %.3e", a, even - a2 * std::tanh(a2)));
    o.require(std::abs(odd - a2 / std::tanh(a2)) < 1e-6, fmt("odd cat alpha=%g off by %.3e", a, odd - a2 / std::tanh(a2)));
  }
  const TwoBranchState s = css(2.5, trunc);
  const double gap = o.keep(std::abs(n_fluct(s.psi_minus) - n_fluct(s.psi_plus)));
  o.require(gap < 0.01, fmt("curves differ by %.3e at alpha=2.5", gap));
  return o;
}

Outcome css_gaussian(const Truncation& trunc) {
  Outcome o;
  for (double a : linspace(0.2, 3.0, 15)) {
    const TwoBranchState s = css(a, trunc);
    const auto hom = distinguishability(s.branch_set, DetectorModel::homodyne(0.0));
    const auto pn = distinguishability(s.branch_set, DetectorModel::pnrd());
    const double kd = std::erf(std::sqrt(2.0) * a);
    const double bc = 1.0 - std::exp(-2.0 * a * a);
    o.require(std::abs(o.keep(hom.d_kd) - kd) < 1e-4, fmt("alpha=%g homodyne D_KD off by %.3e", a, hom.d_kd - kd));
    o.require(std::abs(o.keep(hom.d_bc) - bc) < 1e-4, fmt("alpha=%g homodyne D_BC off by %.3e", a, hom.d_bc - bc));
    o.require(o.keep(pn.d_kd) < 1e-9 && o.keep(pn.d_bc) < 1e-9, fmt("alpha=%g PNRD D=%.3e", a, pn.d_kd));
  }
  return o;
}

Outcome dfs_constancy(const Truncation& trunc) {
  Outcome o;
  const double ref = o.keep(d_kd(dfs(0.0, trunc).branch_set, DetectorModel::homodyne(0.0)));
  for (double a : {0.0, 1.0, 2.0, 4.0}) {
    const TwoBranchState s = dfs(a, trunc);
    const double np = o.keep(n_fluct(s.psi_plus));
    const double nm = o.keep(n_fluct(s.psi_minus));
    o.require(std::abs(np) < 1e-8, fmt("alpha=%g n_fluct(psi+)=%.3e", a, np));
    o.require(std::abs(nm - 1.0) < 1e-8, fmt("alpha=%g n_fluct(psi-)-1=%.3e", a, nm - 1.0));
    const double kd = o.keep(d_kd(s.branch_set, DetectorModel::homodyne(0.0)));
    o.require(std::abs(kd - ref) < 1e-6, fmt("alpha=%g homodyne D_KD drifts by %.3e", a, kd - ref));
  }
  return o;
}

Outcome dfs_closed_form(const Truncation& trunc) {
  Outcome o;
  const auto alphas = linspace(0.2, 3.0, 41);
  std::vector<double> closed;
  for (double a : alphas) {
    const double numeric = o.keep(d_kd(dfs(a, trunc).branch_set, DetectorModel::pnrd()));
    closed.push_back(dfs_kd_closed_form(a));
    o.require(std::abs(numeric - closed.back()) < 1e-6, fmt("alpha=%g off by %.3e", a, numeric - closed.back()));
  }
  // A cusp shows up as a sign flip between neighbouring forward differences.
  const double step = alphas[1] - alphas[0];
  for (double cusp : {1.0, std::sqrt(2.0), std::sqrt(3.0)}) {
    bool found = false;
    for (std::size_t i = 1; i + 1 < alphas.size(); ++i) {
      const double left = closed[i] - closed[i - 1];
      const double right = closed[i + 1] - closed[i];
      if (left * right < 0.0 && std::abs(alphas[i] - cusp) <= step) found = true;
    }
    o.require(found, fmt("no derivative sign change within one step of alpha=%g", cusp));
  }
  return o;
}

Outcome psv_oracle(const Truncation& trunc) {
  Outcome o;
  for (double r : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const double n = o.keep(n_fluct(psv(r, 1, trunc).psi_plus));
    const double expected = 1.5 * std::cosh(2.0 * r) - 0.5;
    o.require(std::abs(n - expected) < 1e-6, fmt("r=%g off by %.3e", r, n - expected));
  }
  auto ideal = [&](double r) {
    const TwoBranchState s = psv(r, 1, trunc);
    return d_kd(s.branch_set, DetectorModel::homodyne(s.recommended_homodyne_angle));
  };
  const double high = o.keep(ideal(2.5));
  const double mid = o.keep(ideal(1.0));
  o.require(high < mid, fmt("d_kd(r=2.5)=%.6f is not below d_kd(r=1)=%.6f", high, mid));
  return o;
}

Outcome blur_properties(const Truncation& trunc) {
  Outcome o;
  constexpr std::array<double, 5> sigmas{0.0, 0.5, 1.0, 2.0, 4.0};
  struct Case {
    Family family;
    std::vector<double> values;
  };
  const std::array<Case, 3> cases{
      Case{Family::Css, {kNoiseCssAlphas.begin(), kNoiseCssAlphas.end()}},
      Case{Family::Psv, {kNoisePsvSqueezings.begin(), kNoisePsvSqueezings.end()}},
      Case{Family::Dfs, {kNoiseDfsAlphas.begin(), kNoiseDfsAlphas.end()}},
  };
  for (const auto& c : cases) {
    for (double v : c.values) {
      FamilyParams params;
      (c.family == Family::Psv ? params.r : params.alpha) = v;
      const TwoBranchState s = make_state(c.family, params, trunc);
      std::vector<DetectorModel> kinds{DetectorModel::homodyne(s.recommended_homodyne_angle)};
      if (c.family == Family::Dfs) kinds.push_back(DetectorModel::pnrd());
      for (DetectorModel det : kinds) {
        double previous = 2.0;
        for (double sigma : sigmas) {
          det.sigma = sigma;
          const double kd = o.keep(d_kd(s.branch_set, det));
          o.require(kd <= previous + 1e-6, std::string(to_string(c.family)) + fmt(" param=%g: d_kd rises at sigma=%g", v, sigma));
          previous = kd;
        }
      }
      for (double sigma : sigmas) {
        if (sigma == 0.0) continue;
        for (int sign : {+1, -1}) {
          const double hom = o.keep(integral(blur_pdf(homodyne_pdf(s.psi(sign), s.recommended_homodyne_angle), sigma)));
          const double pn = o.keep(integral(blur_pmf(pnrd_pmf(s.psi(sign)), sigma)));
          o.require(std::abs(hom - 1.0) < 1e-6 && std::abs(pn - 1.0) < 1e-6,
                    std::string(to_string(c.family)) + fmt(" param=%g: blurred mass off at sigma=%g", v, sigma));
        }
      }
    }
  }
  return o;
}

Outcome wigner_checks(const Truncation& trunc) {
  Outcome o;
  const Truncation wt = wigner_truncation(trunc);
  const TwoBranchState cat = css(1.5, wt);
  const auto branches = cat.branch_set.branches();
  const Ensemble mixture({{0.5, branches[0]}, {0.5, branches[1]}});
  const Grid axis{-7.0, 7.0, 141};
  const double cell = axis.step() * axis.step();

  auto check = [&](const std::string& name, const WignerField& w, const Pdf& homodyne) {
    double total = 0.0;
    for (double v : w.values) total += v;
    o.require(std::abs(o.keep(total * cell) - 1.0) < 1e-4, name + fmt(": integral of W off by %.3e", total * cell - 1.0));
    const auto mx = x_marginal(w);
    double worst = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) worst = std::max(worst, std::abs(o.keep(mx[i]) - homodyne.values[i]));
    o.require(worst < 1e-4, name + fmt(": marginal differs from homodyne PDF by %.3e", worst));
  };
  const FockVector vacuum = fock_state(0, 1);
  check("vacuum", wigner(vacuum, axis, axis), homodyne_pdf(vacuum, 0.0, axis));
  check("odd cat", wigner(cat.psi_minus, axis, axis), homodyne_pdf(cat.psi_minus, 0.0, axis));
  check("mixture", wigner(mixture, axis, axis), homodyne_pdf(mixture, 0.0, axis));

  FigureOptions options;
  options.trunc = trunc;
  const ResultTable fig = run_figure(1, options);
  double min_sup = 1.0;
  double min_mix = 1.0;
  for (const auto& row : fig.rows) {
    min_sup = std::min(min_sup, o.keep(row[2]));
    min_mix = std::min(min_mix, o.keep(row[3]));
  }
  o.require(min_mix >= -1e-10, fmt("mixture W reaches %.3e", min_mix));
  o.require(min_sup < -0.05, fmt("superposition min W is only %.3e", min_sup));
  return o;
}

Outcome summary_diagonal(const Truncation& trunc) {
  Outcome o;
  FigureOptions options;
  options.trunc = trunc;
  const ResultTable t = run_figure(8, options);
  constexpr std::size_t kFamily = 0, kSign = 1, kDetector = 2, kSigma = 3, kParam = 4, kMeanN = 5, kMkd = 8;
  for (const auto& row : t.rows) {
    o.keep(row[kMeanN]);
    o.keep(row[kMkd]);
    o.require(row[kMkd] <= row[kMeanN] + 1e-9, fmt("m_kd=%.6f above mean_n=%.6f", row[kMkd], row[kMeanN]));
  }
  // Pair each sigma=2 row with the sigma=0 row of the same family, sign, detector and parameter.
  std::size_t compared = 0;
  for (const auto& blurred : t.rows) {
    if (blurred[kSigma] != 2.0) continue;
    for (const auto& sharp : t.rows) {
      if (sharp[kSigma] != 0.0 || sharp[kFamily] != blurred[kFamily] || sharp[kSign] != blurred[kSign] ||
          sharp[kDetector] != blurred[kDetector] || sharp[kParam] != blurred[kParam]) {
        continue;
      }
      ++compared;
      o.require(blurred[kMkd] <= sharp[kMkd] + 1e-6,
                fmt("sigma=2 curve above sigma=0 at param=%g by %.3e", blurred[kParam], blurred[kMkd] - sharp[kMkd]));
    }
  }
  o.require(compared > 0 && 2 * compared == t.rows.size(), "sigma=0 and sigma=2 rows do not pair up");
  return o;
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Outcome(const Truncation&)> run;
};

template <class Fn>
double timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  const std::array<Criterion, 9> criteria{{
      {"coherent states carry no fluctuation photons", 1, coherent_nullity},
      {"cat photon numbers match coth/tanh closed forms", 5, cat_oracle},
      {"cat homodyne D matches erf and Gaussian overlap; PNRD sees nothing", 10, css_gaussian},
      {"displaced single-photon N and homodyne D are constant", 5, dfs_constancy},
      {"displaced single-photon PNRD D matches closed form with cusps", 10, dfs_closed_form},
      {"photon-subtracted squeezed vacuum N oracle and high-squeezing D decrease", 10, psv_oracle},
      {"blur never raises D and keeps normalization", 20, blur_properties},
      {"Wigner integrals, marginals and sign contrast", 20, wigner_checks},
      {"summary curves stay under the diagonal and drop with blur", 30, summary_diagonal},
  }};

  const auto suite_start = std::chrono::steady_clock::now();
  bool all = true;
  std::vector<Outcome> baseline;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const double secs = timed([&] { out = criteria[i].run(Truncation{}); });
    if (secs >= criteria[i].limit_seconds) out.require(false, fmt("took %.1f s, limit %.0f s", secs, criteria[i].limit_seconds));
    std::printf("[%s] C%zu %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                out.pass ? "" : ": ", out.detail.c_str());
    std::fflush(stdout);
    all = all && out.pass;
    baseline.push_back(std::move(out));
  }

  Outcome robust;
  const double secs = timed([&] {
    const Truncation doubled{kDefaultTailTolerance, 2};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      const Outcome again = criteria[i].run(doubled);
      const auto& a = baseline[i].numbers;
      const auto& b = again.numbers;
      if (a.size() != b.size()) {
        robust.require(false, fmt("C%g reported %g numbers after doubling", static_cast<double>(i + 1), static_cast<double>(b.size())));
        continue;
      }
      double worst = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(a[k])));
      }
      robust.require(worst < 1e-6, fmt("C%g numbers move by %.3e", static_cast<double>(i + 1), worst));
    }
  });
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  if (total >= 180.0) robust.require(false, fmt("suite took %.1f s, limit 180 s", total));
  std::printf("[%s] C10 doubling every cutoff leaves C1-C9 numbers unchanged (%.2f s, suite %.1f s)%s%s\n",
              robust.pass ? "PASS" : "FAIL", secs, total, robust.pass ? "" : ": ", robust.detail.c_str());
  all = all && robust.pass;
  return all ? 0 : 1;
}
