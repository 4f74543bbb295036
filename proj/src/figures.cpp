#include "macrolens/figures.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <numbers>
#include <optional>
#include <string>

#include "macrolens/distinguishability.hpp"
#include "macrolens/error.hpp"
#include "macrolens/macroscopicity.hpp"

namespace macrolens {

namespace {

constexpr int kDefaultSteps = 61;
constexpr int kDefaultWignerSteps = 101;
constexpr double kWignerAlpha = 1.5;
constexpr double kWignerHalfWidth = 5.0;

struct Range {
  double start;
  double stop;
};
constexpr Range kCssRange{0.05, 3.05};
constexpr Range kPsvRange{0.1, 2.5};
constexpr Range kDfsRange{0.0, 3.0};
constexpr Range kNoiseSigmaRange{0.0, 3.0};

// Runs fn(i) for i in [0, n) on all threads. Results keep index order; the
// lowest-index failure is rethrown after the loop so errors are deterministic.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<std::optional<Result>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      slots[static_cast<std::size_t>(i)].emplace(fn(static_cast<std::size_t>(i)));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::string fmt_param(double v) { return format_number(v); }

// Re-raise a domain error with the failing point attached.
template <class Fn>
auto at_point(Family family, double param, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), "family=" + std::string(to_string(family)) + " param=" + fmt_param(param) + ": " + e.what());
  }
}

FamilyParams params_for(Family family, double value, int m = 1) {
  FamilyParams p;
  if (family == Family::Psv) {
    p.r = value;
    p.m = m;
  } else {
    p.alpha = value;
  }
  return p;
}

std::string_view param_name(Family family) { return family == Family::Psv ? "r" : "alpha"; }

DetectorModel detector_for(const TwoBranchState& state, DetectorKind kind, std::optional<double> angle, double sigma) {
  if (kind == DetectorKind::Pnrd) return DetectorModel::pnrd(sigma);
  return DetectorModel::homodyne(angle.value_or(state.recommended_homodyne_angle), sigma);
}

std::size_t max_cutoff(const TwoBranchState& s) {
  std::size_t n = std::max(s.psi_plus.cutoff(), s.psi_minus.cutoff());
  for (const auto& b : s.branch_set.branches()) n = std::max(n, b.cutoff());
  return n;
}

struct CutoffTracker {
  std::size_t lo = SIZE_MAX;
  std::size_t hi = 0;
  void add(std::size_t n) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  void add(const TwoBranchState& s) { add(max_cutoff(s)); }
};

void common_metadata(ResultTable& table, std::string_view what, const Truncation& trunc, const CutoffTracker& cutoffs) {
  table.set_meta("tool", "macrolens " + std::string(kToolVersion));
  table.set_meta("table", std::string(what));
  table.set_meta("convention", std::string(kConventionNote));
  table.set_meta("sigma_units", "homodyne: quadrature units; pnrd: photon-number units (not comparable)");
  table.set_meta("tail_tolerance", format_number(trunc.tail_tolerance));
  table.set_meta("cutoff_scale", std::to_string(trunc.cutoff_scale));
  if (cutoffs.hi > 0) {
    table.set_meta("cutoff_min", std::to_string(cutoffs.lo));
    table.set_meta("cutoff_max", std::to_string(cutoffs.hi));
  }
  table.set_meta("homodyne_grid_points", std::to_string(kDefaultGridPoints) + " (auto-widened on coverage failure)");
}

int steps_or(const FigureOptions& o, int fallback) {
  const int steps = o.steps.value_or(fallback);
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "steps must be >= 2");
  return steps;
}

ResultTable figure_wigner(const FigureOptions& o) {
  const int steps = steps_or(o, kDefaultWignerSteps);
  const Truncation amplitude_trunc = wigner_truncation(o.trunc);
  const TwoBranchState cat = css(kWignerAlpha, amplitude_trunc);
  const auto branches = cat.branch_set.branches();
  const Ensemble mixture({{0.5, branches[0]}, {0.5, branches[1]}});
  const Grid axis{-kWignerHalfWidth, kWignerHalfWidth, static_cast<std::size_t>(steps)};
  const WignerField sup = wigner(cat.psi_minus, axis, axis);
  const WignerField mix = wigner(mixture, axis, axis);

  ResultTable t;
  t.columns = {"x", "p", "w_superposition", "w_mixture"};
  for (std::size_t ip = 0; ip < axis.n_points; ++ip) {
    for (std::size_t ix = 0; ix < axis.n_points; ++ix) {
      t.add_row({axis.at(ix), axis.at(ip), sup.at(ix, ip), mix.at(ix, ip)});
    }
  }
  CutoffTracker cut;
  cut.add(cat);
  common_metadata(t, "figure 1 (fig-wigner): Wigner function of |a>-|-a> and of the mixture, alpha=1.5",
                  amplitude_trunc, cut);
  return t;
}

struct IdealRow {
  TwoBranchState state;
  Distinguishability homodyne;
  Distinguishability pnrd;
};

std::vector<IdealRow> ideal_scan(Family family, const std::vector<double>& values, const Truncation& trunc) {
  return parallel_map<IdealRow>(values.size(), [&](std::size_t i) {
    return at_point(family, values[i], [&] {
      TwoBranchState s = make_state(family, params_for(family, values[i]), trunc);
      const auto hom = distinguishability(s.branch_set, DetectorModel::homodyne(s.recommended_homodyne_angle));
      const auto pn = distinguishability(s.branch_set, DetectorModel::pnrd());
      return IdealRow{std::move(s), hom, pn};
    });
  });
}

ResultTable figure_css(const FigureOptions& o) {
  const auto alphas = linspace(kCssRange.start, kCssRange.stop, steps_or(o, kDefaultSteps));
  const auto rows = ideal_scan(Family::Css, alphas, o.trunc);
  ResultTable t;
  t.columns = {"alpha", "n_plus", "n_minus", "d_bc", "d_kd", "d_pnrd"};
  CutoffTracker cut;
  for (const auto& r : rows) {
    cut.add(r.state);
    t.add_row({r.state.params.alpha, n_fluct(r.state.psi_plus), n_fluct(r.state.psi_minus), r.homodyne.d_bc,
               r.homodyne.d_kd, r.pnrd.d_kd});
  }
  common_metadata(t, "figure 2 (fig-css): N(psi+-) and D vs alpha, homodyne phi=0 sigma=0; d_pnrd is PNRD D_KD", o.trunc,
                  cut);
  return t;
}

ResultTable figure_psv(const FigureOptions& o) {
  const auto rs = linspace(kPsvRange.start, kPsvRange.stop, steps_or(o, kDefaultSteps));
  const auto rows = ideal_scan(Family::Psv, rs, o.trunc);
  ResultTable t;
  t.columns = {"r", "n_plus", "n_minus", "d_bc", "d_kd", "d_pnrd", "angle"};
  CutoffTracker cut;
  for (const auto& r : rows) {
    cut.add(r.state);
    t.add_row({r.state.params.r, n_fluct(r.state.psi_plus), n_fluct(r.state.psi_minus), r.homodyne.d_bc,
               r.homodyne.d_kd, r.pnrd.d_kd, r.state.recommended_homodyne_angle});
  }
  common_metadata(t, "figure 3 (fig-psv): N(psi+-) and D vs r, m=1, homodyne at recommended angle, sigma=0", o.trunc,
                  cut);
  return t;
}

ResultTable figure_dfs(const FigureOptions& o) {
  const auto alphas = linspace(kDfsRange.start, kDfsRange.stop, steps_or(o, kDefaultSteps));
  const auto rows = ideal_scan(Family::Dfs, alphas, o.trunc);
  ResultTable t;
  t.columns = {"alpha", "n_plus", "n_minus", "d_bc_hom", "d_kd_hom", "d_bc_pnrd", "d_kd_pnrd", "d_kd_closed"};
  CutoffTracker cut;
  for (const auto& r : rows) {
    cut.add(r.state);
    const double a = r.state.params.alpha;
    t.add_row({a, n_fluct(r.state.psi_plus), n_fluct(r.state.psi_minus), r.homodyne.d_bc, r.homodyne.d_kd, r.pnrd.d_bc,
               r.pnrd.d_kd, a > 0.0 ? dfs_kd_closed_form(a) : 0.0});
  }
  common_metadata(t, "figure 4 (fig-dfs): N(psi+-) and D vs alpha for homodyne (phi=0) and PNRD, sigma=0", o.trunc,
                  cut);
  return t;
}

template <std::size_t N>
ResultTable figure_noise(Family family, const std::array<double, N>& values, bool both_detectors,
                         const FigureOptions& o, std::string_view title) {
  const auto sigmas = linspace(kNoiseSigmaRange.start, kNoiseSigmaRange.stop, steps_or(o, kDefaultSteps));
  const auto states = parallel_map<TwoBranchState>(N, [&](std::size_t i) {
    return at_point(family, values[i], [&] { return make_state(family, params_for(family, values[i]), o.trunc); });
  });
  const std::size_t n_sigma = sigmas.size();
  const auto cells = parallel_map<std::pair<double, double>>(N * n_sigma, [&](std::size_t idx) {
    const auto& s = states[idx / n_sigma];
    const double sigma = sigmas[idx % n_sigma];
    return at_point(family, s.parameter(), [&] {
      const double hom = d_kd(s.branch_set, DetectorModel::homodyne(s.recommended_homodyne_angle, sigma));
      const double pn = both_detectors ? d_kd(s.branch_set, DetectorModel::pnrd(sigma)) : 0.0;
      return std::pair{hom, pn};
    });
  });

  ResultTable t;
  t.columns = {std::string(param_name(family)), "sigma"};
  if (both_detectors) {
    t.columns.push_back("d_kd_hom");
    t.columns.push_back("d_kd_pnrd");
  } else {
    t.columns.push_back("d_kd");
    if (family == Family::Psv) t.columns.push_back("angle");
  }
  CutoffTracker cut;
  for (const auto& s : states) cut.add(s);
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const auto& s = states[idx / n_sigma];
    std::vector<double> row{s.parameter(), sigmas[idx % n_sigma], cells[idx].first};
    if (both_detectors) row.push_back(cells[idx].second);
    else if (family == Family::Psv) row.push_back(s.recommended_homodyne_angle);
    t.add_row(std::move(row));
  }
  common_metadata(t, title, o.trunc, cut);
  return t;
}

ResultTable figure_summary(const FigureOptions& o) {
  const int steps = steps_or(o, kDefaultSteps);
  struct Task {
    Family family;
    double value;
  };
  std::vector<Task> tasks;
  for (auto [family, range] : {std::pair{Family::Css, kCssRange}, std::pair{Family::Psv, kPsvRange},
                               std::pair{Family::Dfs, kDfsRange}}) {
    for (double v : linspace(range.start, range.stop, steps)) tasks.push_back({family, v});
  }
  constexpr std::array<DetectorKind, 2> kinds{DetectorKind::Homodyne, DetectorKind::Pnrd};
  constexpr std::array<double, 2> sigmas{0.0, 2.0};

  struct Point {
    TwoBranchState state;
    std::array<Distinguishability, 4> d;  // [detector][sigma]
  };
  const auto points = parallel_map<Point>(tasks.size(), [&](std::size_t i) {
    const Task& task = tasks[i];
    return at_point(task.family, task.value, [&] {
      TwoBranchState s = make_state(task.family, params_for(task.family, task.value), o.trunc);
      std::array<Distinguishability, 4> d{};
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        for (std::size_t j = 0; j < sigmas.size(); ++j) {
          d[k * 2 + j] = distinguishability(s.branch_set, detector_for(s, kinds[k], std::nullopt, sigmas[j]));
        }
      }
      return Point{std::move(s), d};
    });
  });

  ResultTable t;
  t.columns = {"family", "sign", "detector", "sigma", "param", "mean_n", "n_fluct", "d_kd", "m_kd"};
  CutoffTracker cut;
  for (const auto& p : points) cut.add(p.state);
  std::size_t begin = 0;
  for (Family family : {Family::Css, Family::Psv, Family::Dfs}) {
    std::size_t end = begin;
    while (end < points.size() && points[end].state.family == family) ++end;
    for (int sign : {+1, -1}) {
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        for (std::size_t j = 0; j < sigmas.size(); ++j) {
          for (std::size_t i = begin; i < end; ++i) {
            const auto& p = points[i];
            const auto det = detector_for(p.state, kinds[k], std::nullopt, sigmas[j]);
            const MacroReport rep = report(p.state, sign, p.d[k * 2 + j], det);
            t.add_row({static_cast<double>(family), static_cast<double>(sign), static_cast<double>(k), sigmas[j],
                       p.state.parameter(), rep.mean_n, rep.n_fluct, rep.d_kd, rep.m_kd});
          }
        }
      }
    }
    begin = end;
  }
  common_metadata(t, "figure 8 (fig-summary): subjective macroscopicity m_kd vs total photons mean_n", o.trunc, cut);
  t.set_meta("codes", "family: 0=css 1=psv 2=dfs; detector: 0=homodyne 1=pnrd; sign: +1=psi_plus -1=psi_minus");
  t.set_meta("param", "alpha for css/dfs, r for psv (m=1)");
  return t;
}

}  // namespace

std::vector<double> linspace(double start, double stop, int steps) {
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "linspace needs at least two steps");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = start + (stop - start) * i / (steps - 1);
  return out;
}

Truncation wigner_truncation(const Truncation& trunc) {
  return {std::max(trunc.tail_tolerance * trunc.tail_tolerance, 1e-300), trunc.cutoff_scale};
}

int parse_figure_id(std::string_view text) {
  static constexpr std::array<std::string_view, 8> aliases = {
      "fig-wigner", "fig-css", "fig-psv", "fig-dfs", "fig-noise-css", "fig-noise-psv", "fig-noise-dfs", "fig-summary"};
  for (std::size_t i = 0; i < aliases.size(); ++i) {
    if (text == aliases[i]) return static_cast<int>(i) + 1;
  }
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '8') return text[0] - '0';
  throw Error(ErrorKind::InvalidId, "unknown figure '" + std::string(text) + "' (expected 1-8 or a fig-* alias)");
}

ResultTable run_figure(int id, const FigureOptions& options) {
  switch (id) {
    case 1: return figure_wigner(options);
    case 2: return figure_css(options);
    case 3: return figure_psv(options);
    case 4: return figure_dfs(options);
    case 5:
      return figure_noise(Family::Css, kNoiseCssAlphas, false, options,
                          "figure 5 (fig-noise-css): D_KD vs homodyne resolution sigma");
    case 6:
      return figure_noise(Family::Psv, kNoisePsvSqueezings, false, options,
                          "figure 6 (fig-noise-psv): D_KD vs homodyne resolution sigma at the recommended angle");
    case 7:
      return figure_noise(Family::Dfs, kNoiseDfsAlphas, true, options,
                          "figure 7 (fig-noise-dfs): D_KD vs resolution sigma, homodyne and PNRD");
    case 8: return figure_summary(options);
    default: throw Error(ErrorKind::InvalidId, "figure id " + std::to_string(id) + " is not in 1-8");
  }
}

ResultTable sweep(const SweepSpec& spec, const Truncation& trunc) {
  spec.validate();
  const auto values = linspace(spec.start, spec.stop, spec.steps);
  auto sigmas = spec.sigmas;
  std::sort(sigmas.begin(), sigmas.end());
  std::vector<std::string> measures = spec.measures;
  if (measures.empty()) measures.assign(kSweepMeasures.begin(), kSweepMeasures.end());

  // Each output column is a measure read from one detector's reports.
  struct Column {
    std::string measure;
    std::size_t detector;
  };
  const bool both = spec.detectors.size() > 1;
  std::vector<Column> plan;
  ResultTable t;
  t.columns = {std::string(param_name(spec.family)), "sigma"};
  for (const auto& m : measures) {
    const bool per_detector = m.starts_with("d_") || m.starts_with("m_") || m == "angle";
    if (!per_detector || !both) {
      plan.push_back({m, 0});
      t.columns.push_back(m);
      continue;
    }
    for (std::size_t k = 0; k < spec.detectors.size(); ++k) {
      const bool hom = spec.detectors[k] == DetectorKind::Homodyne;
      if (m == "angle" && !hom) continue;
      plan.push_back({m, k});
      t.columns.push_back(m + (hom ? "_hom" : "_pnrd"));
    }
  }

  struct Reading {
    DetectorModel det;
    Distinguishability d;
    MacroReport plus;
    MacroReport minus;
  };
  using Block = std::pair<std::size_t, std::vector<std::vector<double>>>;
  const auto blocks = parallel_map<Block>(values.size(), [&](std::size_t i) {
    return at_point(spec.family, values[i], [&] {
      const TwoBranchState s = make_state(spec.family, params_for(spec.family, values[i], spec.m), trunc);
      std::vector<std::vector<double>> rows;
      for (double sigma : sigmas) {
        std::vector<Reading> readings;
        for (DetectorKind kind : spec.detectors) {
          const auto det = detector_for(s, kind, spec.angle, sigma);
          const auto d = distinguishability(s.branch_set, det);
          readings.push_back({det, d, report(s, +1, d, det), report(s, -1, d, det)});
        }
        std::vector<double> row{values[i], sigma};
        for (const auto& [m, k] : plan) {
          const Reading& r = readings[k];
          if (m == "n_plus") row.push_back(r.plus.n_fluct);
          else if (m == "n_minus") row.push_back(r.minus.n_fluct);
          else if (m == "mean_n_plus") row.push_back(r.plus.mean_n);
          else if (m == "mean_n_minus") row.push_back(r.minus.mean_n);
          else if (m == "d_bc") row.push_back(r.d.d_bc);
          else if (m == "d_kd") row.push_back(r.d.d_kd);
          else if (m == "m_bc_plus") row.push_back(r.plus.m_bc);
          else if (m == "m_bc_minus") row.push_back(r.minus.m_bc);
          else if (m == "m_kd_plus") row.push_back(r.plus.m_kd);
          else if (m == "m_kd_minus") row.push_back(r.minus.m_kd);
          else if (m == "angle") row.push_back(r.det.kind == DetectorKind::Homodyne ? r.det.angle : 0.0);
        }
        rows.push_back(std::move(row));
      }
      return Block{max_cutoff(s), std::move(rows)};
    });
  });

  CutoffTracker cut;
  for (const auto& [cutoff, rows] : blocks) {
    cut.add(cutoff);
    for (const auto& row : rows) t.add_row(row);
  }
  common_metadata(t, "sweep", trunc, cut);
  t.set_meta("family", std::string(to_string(spec.family)));
  std::string dets;
  for (DetectorKind kind : spec.detectors) {
    dets += (dets.empty() ? "" : ",") + std::string(kind == DetectorKind::Homodyne ? "homodyne" : "pnrd");
  }
  t.set_meta("detector", dets);
  if (spec.family == Family::Psv) t.set_meta("m", std::to_string(spec.m));
  return t;
}

ResultTable compute(const ComputeRequest& request, const Truncation& trunc) {
  const double value = request.family == Family::Psv ? request.params.r : request.params.alpha;
  return at_point(request.family, value, [&] {
    const TwoBranchState s = make_state(request.family, request.params, trunc);
    const auto det = detector_for(s, request.detector, request.angle, request.sigma);
    const auto d = distinguishability(s.branch_set, det);
    const MacroReport plus = report(s, +1, d, det);
    const MacroReport minus = report(s, -1, d, det);

    ResultTable t;
    t.columns = {std::string(param_name(request.family)),
                 "sigma",
                 "angle",
                 "n_plus",
                 "n_minus",
                 "mean_n_plus",
                 "mean_n_minus",
                 "d_bc",
                 "d_kd",
                 "m_bc_plus",
                 "m_bc_minus",
                 "m_kd_plus",
                 "m_kd_minus",
                 "error_probability"};
    t.add_row({value, request.sigma, det.angle, plus.n_fluct, minus.n_fluct, plus.mean_n, minus.mean_n, d.d_bc, d.d_kd,
               plus.m_bc, minus.m_bc, plus.m_kd, minus.m_kd, error_probability(d.d_kd)});
    CutoffTracker cut;
    cut.add(s);
    common_metadata(t, "compute", trunc, cut);
    t.set_meta("family", std::string(to_string(request.family)));
    t.set_meta("detector", request.detector == DetectorKind::Homodyne ? "homodyne" : "pnrd");
    if (request.family == Family::Psv) t.set_meta("m", std::to_string(request.params.m));
    return t;
  });
}

}  // namespace macrolens
