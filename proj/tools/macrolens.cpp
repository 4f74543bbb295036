#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "macrolens/catalog.hpp"
#include "macrolens/error.hpp"
#include "macrolens/figures.hpp"
#include "macrolens/table.hpp"

namespace {

using namespace macrolens;

constexpr int kDomainErrorExit = 2;

std::string quoted(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out;
}

Truncation truncation_from_env() {
  Truncation trunc;
  if (const char* env = std::getenv("MACROLENS_TAIL_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(tol > 0.0) || !(tol < 1.0)) {
      throw Error(ErrorKind::Config, "MACROLENS_TAIL_TOL must be a number in (0, 1), got '" + std::string(env) + "'");
    }
    trunc.tail_tolerance = tol;
  }
  return trunc;
}

void emit(const ResultTable& table, const std::string& path, OutputFormat format) {
  if (path.empty() || path == "-") {
    write_table(table, format, std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, "cannot open output file '" + path + "'");
  write_table(table, format, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Macroscopicity of optical superposition states: N, D and M = N*D"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string out_path = "-";
  std::string format_name = "csv";

  auto* fig = app.add_subcommand("figure", "Emit the data behind figure 1-8 (or a fig-* alias)");
  std::string fig_id;
  std::optional<int> fig_steps;
  fig->add_option("id", fig_id, "1-8, fig-wigner, fig-css, fig-psv, fig-dfs, fig-noise-{css,psv,dfs}, fig-summary")
      ->required();
  fig->add_option("--out", out_path, "Output path ('-' for stdout)");
  fig->add_option("--format", format_name, "csv or json");
  fig->add_option("--steps", fig_steps, "Points per scanned axis");

  auto* cmp = app.add_subcommand("compute", "Evaluate one parameter point for both superposition signs");
  std::string family_name;
  std::optional<double> alpha;
  std::optional<double> r;
  int m = 1;
  std::string detector_name;
  std::optional<double> angle;
  double sigma = 0.0;
  cmp->add_option("--family", family_name, "css, psv or dfs")->required();
  auto* alpha_opt = cmp->add_option("--alpha", alpha, "Amplitude (css, dfs)");
  auto* r_opt = cmp->add_option("--r", r, "Squeezing (psv)");
  alpha_opt->excludes(r_opt);
  cmp->add_option("--m", m, "Photons subtracted (psv)");
  cmp->add_option("--detector", detector_name, "homodyne or pnrd")->required();
  cmp->add_option("--angle", angle, "Homodyne angle in radians");
  cmp->add_option("--sigma", sigma, "Detector resolution (quadrature or photon-number units)")->required();
  cmp->add_option("--out", out_path, "Output path ('-' for stdout)");
  cmp->add_option("--format", format_name, "csv or json");

  auto* swp = app.add_subcommand("sweep", "Run a parameter x sigma sweep described by a config file");
  std::string config_path;
  std::optional<std::string> sweep_out;
  swp->add_option("--config", config_path, "key = value config file")->required();
  swp->add_option("--out", sweep_out, "Override the config's output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const Truncation trunc = truncation_from_env();
    if (*fig) {
      FigureOptions opts;
      opts.steps = fig_steps;
      opts.trunc = trunc;
      const OutputFormat format = parse_format(format_name);
      emit(run_figure(parse_figure_id(fig_id), opts), out_path, format);
    } else if (*cmp) {
      ComputeRequest req;
      req.family = parse_family(family_name);
      if (req.family == Family::Psv) {
        if (!r) throw Error(ErrorKind::InvalidArgument, "psv needs --r");
        req.params.r = *r;
        req.params.m = m;
      } else {
        if (!alpha) throw Error(ErrorKind::InvalidArgument, std::string(to_string(req.family)) + " needs --alpha");
        req.params.alpha = *alpha;
      }
      if (detector_name == "homodyne") req.detector = DetectorKind::Homodyne;
      else if (detector_name == "pnrd") req.detector = DetectorKind::Pnrd;
      else throw Error(ErrorKind::InvalidArgument, "detector must be homodyne or pnrd");
      req.angle = angle;
      req.sigma = sigma;
      const OutputFormat format = parse_format(format_name);
      emit(compute(req, trunc), out_path, format);
    } else if (*swp) {
      const SweepSpec spec = load_sweep_config(config_path);
      emit(sweep(spec, trunc), sweep_out.value_or(spec.output), spec.format);
    }
  } catch (const Error& e) {
    std::cerr << "error kind=" << to_string(e.kind()) << " message=\"" << quoted(e.what()) << "\"\n";
    return kDomainErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error kind=internal message=\"" << quoted(e.what()) << "\"\n";
    return 1;
  }
  return 0;
}
