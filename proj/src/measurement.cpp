#include "macrolens/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "macrolens/error.hpp"
#include "macrolens/kernels.hpp"

namespace macrolens {

namespace {

constexpr double kMassTolerance = 1e-6;
constexpr std::size_t kMaxBlurPoints = 4096;
constexpr int kMaxWidenings = 8;

void check_grid(const Grid& grid, std::size_t min_points = 64) {
  if (grid.n_points < min_points) {
    throw Error(ErrorKind::InvalidArgument, "grids need at least " + std::to_string(min_points) + " points");
  }
  if (!(std::isfinite(grid.min) && std::isfinite(grid.max) && grid.max > grid.min)) {
    throw Error(ErrorKind::InvalidArgument, "grid bounds must be finite with max > min");
  }
}

kernels::Lattice lattice(const Grid& g) { return {g.min, g.step(), g.n_points}; }

std::vector<complex_t> rotated(const FockVector& state, double angle) {
  std::vector<complex_t> out(state.cutoff());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = state[n] * std::polar(1.0, -angle * static_cast<double>(n));
  return out;
}

Pdf homodyne_from(std::span<const EnsembleComponent> parts, double angle, const Grid& grid) {
  check_grid(grid);
  std::vector<std::vector<complex_t>> amps;
  amps.reserve(parts.size());
  std::vector<kernels::WeightedAmplitudes> comps;
  for (const auto& part : parts) {
    amps.push_back(rotated(part.state, angle));
    comps.push_back({part.weight, amps.back()});
  }
  Pdf pdf{grid, std::vector<double>(grid.n_points)};
  kernels::parallel::homodyne_density(comps, lattice(grid), pdf.values);
  for (auto& v : pdf.values) v = std::max(v, 0.0);
  const double mass = integral(pdf);
  if (!(std::abs(mass - 1.0) <= kMassTolerance)) {
    throw Error(ErrorKind::GridCoverage, "homodyne grid [" + std::to_string(grid.min) + ", " +
                                             std::to_string(grid.max) + "] captures mass " + std::to_string(mass));
  }
  return pdf;
}

Pdf homodyne_auto(std::span<const EnsembleComponent> parts, double angle) {
  std::vector<const FockVector*> states;
  for (const auto& part : parts) states.push_back(&part.state);
  Grid grid = auto_homodyne_grid(states, angle);
  for (int attempt = 0;; ++attempt) {
    try {
      return homodyne_from(parts, angle, grid);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::GridCoverage || attempt >= kMaxWidenings) throw;
    }
    const double centre = 0.5 * (grid.min + grid.max);
    const double half = 0.75 * (grid.max - grid.min);
    grid = {centre - half, centre + half, grid.n_points + grid.n_points / 2};
  }
}

}  // namespace

void DetectorModel::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw Error(ErrorKind::InvalidArgument, "detector sigma must be >= 0");
  if (!std::isfinite(angle)) throw Error(ErrorKind::InvalidArgument, "detector angle must be finite");
}

std::vector<double> hermite_functions(double x, int n_max) {
  if (n_max < 0) throw Error(ErrorKind::InvalidArgument, "hermite_functions needs n_max >= 0");
  // psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}, carried as
  // mantissa * exp(log_scale) to survive exp(-x^2/2) underflow.
  constexpr double rescale = 1e150;
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  double log_scale = -0.5 * x * x;
  double factor = std::exp(log_scale);
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  for (int n = 0; n <= n_max; ++n) {
    out[static_cast<std::size_t>(n)] = cur * factor;
    const double dn = n;
    const double next = std::sqrt(2.0 / (dn + 1.0)) * x * cur - std::sqrt(dn / (dn + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > rescale) {
      cur /= rescale;
      prev /= rescale;
      log_scale += std::log(rescale);
      factor = std::exp(log_scale);
    }
  }
  return out;
}

double trapezoid(std::span<const double> values, double step) {
  if (values.empty()) return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
  return s * step;
}

double integral(const Pdf& pdf) { return trapezoid(pdf.values, pdf.grid.step()); }

double mean(const Pdf& pdf) {
  std::vector<double> w(pdf.values.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = pdf.grid.at(i) * pdf.values[i];
  return trapezoid(w, pdf.grid.step()) / integral(pdf);
}

double variance(const Pdf& pdf) {
  const double mu = mean(pdf);
  std::vector<double> w(pdf.values.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double d = pdf.grid.at(i) - mu;
    w[i] = d * d * pdf.values[i];
  }
  return trapezoid(w, pdf.grid.step()) / integral(pdf);
}

Grid auto_homodyne_grid(std::span<const FockVector* const> states, double angle, std::size_t n_points) {
  if (states.empty()) throw Error(ErrorKind::InvalidArgument, "auto grid needs at least one state");
  double lo_mean = INFINITY, hi_mean = -INFINITY, max_var = 0.0;
  for (const FockVector* s : states) {
    const auto q = quadrature_moments(*s, angle);
    lo_mean = std::min(lo_mean, q.mean);
    hi_mean = std::max(hi_mean, q.mean);
    max_var = std::max(max_var, q.var);
  }
  const double half = 6.0 * std::sqrt(max_var) + 1.0;
  return {lo_mean - half, hi_mean + half, n_points};
}

Pdf homodyne_pdf(const FockVector& state, double angle, const Grid& grid) {
  const EnsembleComponent part{1.0, state};
  return homodyne_from(std::span(&part, 1), angle, grid);
}

Pdf homodyne_pdf(const Ensemble& ensemble, double angle, const Grid& grid) {
  return homodyne_from(ensemble.components(), angle, grid);
}

Pdf homodyne_pdf(const FockVector& state, double angle) {
  const EnsembleComponent part{1.0, state};
  return homodyne_auto(std::span(&part, 1), angle);
}

Pdf homodyne_pdf(const Ensemble& ensemble, double angle) { return homodyne_auto(ensemble.components(), angle); }

Pmf pnrd_pmf(const FockVector& state) {
  Pmf pmf;
  pmf.probabilities.reserve(state.cutoff());
  for (const auto& c : state.amplitudes()) pmf.probabilities.push_back(std::norm(c));
  return pmf;
}

Pmf pnrd_pmf(const Ensemble& ensemble) {
  Pmf pmf{std::vector<double>(ensemble.max_cutoff())};
  for (const auto& part : ensemble.components()) {
    const auto amps = part.state.amplitudes();
    for (std::size_t n = 0; n < amps.size(); ++n) pmf.probabilities[n] += part.weight * std::norm(amps[n]);
  }
  return pmf;
}

Pdf blur_pdf(const Pdf& pdf, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw Error(ErrorKind::InvalidArgument, "blur sigma must be >= 0");
  if (sigma == 0.0) return pdf;
  check_grid(pdf.grid);

  const std::size_t n = pdf.n_points();
  const double dx = pdf.grid.step();
  auto pad = static_cast<std::size_t>(std::ceil(6.0 * sigma / dx));
  const std::size_t stride = std::max<std::size_t>(1, (n + 2 * pad + kMaxBlurPoints - 1) / kMaxBlurPoints);
  pad = (pad + stride - 1) / stride * stride;
  const double h = static_cast<double>(stride) * dx;
  const std::size_t n_out = (n - 1 + 2 * pad + stride - 1) / stride + 1;

  // Deposit trapezoid masses on the (possibly coarser) output lattice with
  // linear weights; this keeps total mass and the mean exact.
  std::vector<double> masses(n_out);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = pdf.values[j] * dx * ((j == 0 || j + 1 == n) ? 0.5 : 1.0);
    const std::size_t fine = j + pad;
    const std::size_t q = fine / stride;
    const double t = static_cast<double>(fine % stride) / static_cast<double>(stride);
    masses[q] += w * (1.0 - t);
    if (t > 0.0) masses[q + 1] += w * t;
  }

  const auto half = static_cast<std::size_t>(std::ceil(8.0 * sigma / h)) + 1;
  std::vector<double> kernel(half);
  double total = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    const double z = static_cast<double>(k) * h / sigma;
    kernel[k] = std::exp(-0.5 * z * z);
    total += (k == 0 ? 1.0 : 2.0) * kernel[k];
  }
  for (auto& k : kernel) k /= total * h;

  Pdf out;
  out.grid = {pdf.grid.min - static_cast<double>(pad) * dx, pdf.grid.min + static_cast<double>(n_out - 1) * h -
                                                                   static_cast<double>(pad) * dx,
              n_out};
  out.values.resize(n_out);
  kernels::parallel::lattice_convolve(masses, kernel, out.values);
  return out;
}

Pdf blur_pmf(const Pmf& pmf, double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) throw Error(ErrorKind::InvalidArgument, "blur sigma must be >= 0");
  if (sigma == 0.0) throw Error(ErrorKind::UsePmfDirectly, "sigma = 0: compare the PMFs directly");
  if (pmf.probabilities.empty()) throw Error(ErrorKind::InvalidArgument, "empty PMF");
  const double lo = -6.0 * sigma;
  const double hi = static_cast<double>(pmf.probabilities.size() - 1) + 6.0 * sigma;
  const double target = std::min(sigma / 4.0, (hi - lo) / static_cast<double>(kDefaultGridPoints - 1));
  const auto n_points = static_cast<std::size_t>(std::ceil((hi - lo) / target)) + 1;
  Pdf out{{lo, hi, n_points}, std::vector<double>(n_points)};
  const auto& weights = pmf.probabilities;
  kernels::parallel::gaussian_mixture({0.0, 1.0, weights.size()}, weights, lattice(out.grid), sigma, out.values);
  return out;
}

namespace {

WignerField wigner_from(std::span<const EnsembleComponent> parts, const Grid& x, const Grid& p) {
  check_grid(x, 2);
  check_grid(p, 2);
  std::vector<kernels::WeightedAmplitudes> components;
  for (const auto& part : parts) {
    // Trailing zeros only cost time in the displaced-parity sum.
    auto amps = part.state.amplitudes();
    std::size_t n = amps.size();
    while (n > 1 && amps[n - 1] == complex_t{}) --n;
    components.push_back({part.weight, amps.first(n)});
  }
  WignerField field{x, p, std::vector<double>(x.n_points * p.n_points)};
  kernels::parallel::wigner_grid(components, lattice(x), lattice(p), field.values);
  return field;
}

}  // namespace

WignerField wigner(const FockVector& state, const Grid& x, const Grid& p) {
  const EnsembleComponent part{1.0, state};
  return wigner_from(std::span(&part, 1), x, p);
}

WignerField wigner(const Ensemble& ensemble, const Grid& x, const Grid& p) {
  return wigner_from(ensemble.components(), x, p);
}

std::vector<double> x_marginal(const WignerField& field) {
  std::vector<double> out(field.x.n_points);
  std::vector<double> column(field.p.n_points);
  for (std::size_t ix = 0; ix < field.x.n_points; ++ix) {
    for (std::size_t ip = 0; ip < field.p.n_points; ++ip) column[ip] = field.at(ix, ip);
    out[ix] = trapezoid(column, field.p.step());
  }
  return out;
}

std::vector<double> p_marginal(const WignerField& field) {
  std::vector<double> out(field.p.n_points);
  for (std::size_t ip = 0; ip < field.p.n_points; ++ip) {
    out[ip] = trapezoid(std::span(field.values).subspan(ip * field.x.n_points, field.x.n_points), field.x.step());
  }
  return out;
}

}  // namespace macrolens
