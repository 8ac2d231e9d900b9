#include "critcurve/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "critcurve/analysis.hpp"
#include "critcurve/error.hpp"
#include "quadrature.hpp"

namespace critcurve {

SpaceTimeSamples::SpaceTimeSamples(GridPtr grid, double radius) : grid_(std::move(grid)), radius_(radius) {
  require(grid_ != nullptr, "samples need a grid");
  require(radius > 0.0, "sample radius must be positive");
  for (std::size_t i = 0; i < grid_->size(); ++i)
    if (grid_->radius(i) <= radius_) points_.push_back(i);
}

void SpaceTimeSamples::append(double t, std::span<const double> ut, std::span<const double> v) {
  require(ut.size() == grid_->size() && v.size() == grid_->size(), "sample arrays must cover the grid");
  require(times_.empty() || t > times_.back(), "sample times must increase");
  times_.push_back(t);
  for (std::size_t i : points_) {
    ut_.push_back(ut[i]);
    v_.push_back(v[i]);
  }
}

StepObserver SpaceTimeSamples::recorder() {
  return [this](double t, std::span<const double> ut, std::span<const double> v) { append(t, ut, v); };
}

SpaceTimeSamples SpaceTimeSamples::from_function(GridPtr grid, double radius, std::span<const double> times,
                                                 const Sampler& f) {
  SpaceTimeSamples out(std::move(grid), radius);
  const std::size_t m = out.points_.size();
  for (double t : times) {
    require(out.times_.empty() || t > out.times_.back(), "sample times must increase");
    out.times_.push_back(t);
    for (std::size_t k = 0; k < m; ++k) {
      const auto [x, y] = out.grid_->point(out.points_[k]);
      const auto [a, b] = f(t, x, y);
      out.ut_.push_back(a);
      out.v_.push_back(b);
    }
  }
  return out;
}

std::span<const double> SpaceTimeSamples::ut(std::size_t k) const {
  return std::span<const double>(ut_).subspan(k * points_.size(), points_.size());
}

std::span<const double> SpaceTimeSamples::v(std::size_t k) const {
  return std::span<const double>(v_).subspan(k * points_.size(), points_.size());
}

double SpaceTimeSamples::horizon() const {
  return times_.empty() ? -std::numeric_limits<double>::infinity() : times_.back();
}

namespace {

// Trapezoid weights on times[first..last].
std::vector<double> trapezoid(const std::vector<double>& times, std::size_t first, std::size_t last) {
  std::vector<double> w(times.size(), 0.0);
  for (std::size_t k = first; k < last; ++k) {
    const double dt = times[k + 1] - times[k];
    w[k] += 0.5 * dt;
    w[k + 1] += 0.5 * dt;
  }
  return w;
}

double data_pairing(std::span<const double> data, std::span<const double> weight, double dv) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) sum += data[i] * weight[i];
  return sum * dv;
}

// g^{-hc/h} |x|^{hc}, evaluated in logs; zero where either factor vanishes.
double weighted_power(double g, double x, double hc, double h) {
  if (g <= 0.0 || x == 0.0) return 0.0;
  return std::exp(-(hc / h) * std::log(g) + hc * std::log(std::abs(x)));
}

}  // namespace

BlowupFunctionals evaluate_functionals(const SpaceTimeSamples& samples, const SystemParams& params,
                                       const TestFunctionConfig& config) {
  params.validate();
  const Grid& grid = samples.grid();
  require(grid.dim() == params.n, "sample grid dimension does not match the system");
  const double R = config.R;
  require(R >= 1.0, "scaling parameter R must be at least 1");
  require(grid.half_length() > R, "grid half-length must exceed R so that phi_R fits in the domain");
  require(samples.radius() >= R * (1.0 - 1e-12), "samples do not cover |x| <= R");
  const double R2 = R * R;
  const auto& times = samples.times();
  require(!times.empty() && times.front() <= 0.0, "samples must start at t = 0");
  require(samples.horizon() >= R2 * (1.0 - 1e-12),
          fmt::format("sample horizon {:.6g} is shorter than R^2 = {:.6g}", samples.horizon(), R2));

  const TestFunction fn(config, grid.dim());
  const auto points = samples.points();
  std::vector<double> phi(points.size()), lap(points.size());
  std::vector<char> in_ball(points.size()), in_annulus(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double r = grid.radius(points[j]);
    phi[j] = fn.phi(r);
    lap[j] = fn.laplacian_phi(r);
    in_ball[j] = r <= R;
    in_annulus[j] = r >= 0.5 * R && r <= R;
  }

  std::size_t last = 0;
  while (times[last] < R2 * (1.0 - 1e-12)) ++last;
  std::size_t mid = 0;
  while (times[mid] < 0.5 * R2 * (1.0 - 1e-12)) ++mid;
  const auto w_all = trapezoid(times, 0, last);
  const auto w_late = trapezoid(times, mid, last);

  const double dv = grid.cell_volume();
  const double p = params.p, q = params.q;
  BlowupFunctionals out;
  out.R = R;
  out.psi.reserve(times.size());
  for (std::size_t k = 0; k <= last; ++k) {
    const Jet eta = fn.eta(times[k]);
    const double psi = fn.psi(times[k]);
    out.psi.push_back(psi);
    const auto ut = samples.ut(k);
    const auto v = samples.v(k);
    double a = 0.0, a_ann = 0.0, b = 0.0, b_ann = 0.0;
    double v_phi = 0.0, v_lap = 0.0, u_phi = 0.0, u_lap = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (!in_ball[j]) continue;
      const double fv = std::pow(std::abs(v[j]), p) * phi[j];
      const double fu = std::pow(std::abs(ut[j]), q) * phi[j];
      a += fv;
      b += fu;
      if (in_annulus[j]) {
        a_ann += fv;
        b_ann += fu;
      }
      v_phi += v[j] * phi[j];
      v_lap += v[j] * lap[j];
      u_phi += ut[j] * phi[j];
      u_lap += ut[j] * lap[j];
    }
    out.I += w_all[k] * eta.f * a * dv;
    out.I1 += w_late[k] * eta.f * a * dv;
    out.I2 += w_all[k] * eta.f * a_ann * dv;
    out.J += w_all[k] * eta.f * b * dv;
    out.J1 += w_late[k] * eta.f * b * dv;
    out.J2 += w_all[k] * eta.f * b_ann * dv;
    out.pairing_v += w_all[k] * ((eta.d2 - eta.d1) * v_phi - eta.f * v_lap) * dv;
    out.pairing_u += w_all[k] * ((eta.f - eta.d1) * u_phi - psi * u_lap) * dv;
  }
  for (std::size_t k = last + 1; k < times.size(); ++k) out.psi.push_back(0.0);

  const GridPtr& gp = samples.grid_ptr();
  const DataFields data = make_data_fields(params.data, gp);
  std::vector<double> phi_full(grid.size()), lap_full(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    phi_full[i] = fn.phi(grid.radius(i));
    lap_full[i] = fn.laplacian_phi(grid.radius(i));
  }
  out.rho1 = fn.eta_integral() * data_pairing(data.u0.values(), lap_full, dv) +
             data_pairing(data.u1.values(), phi_full, dv);
  out.rho2 = data_pairing(data.v0.values(), phi_full, dv) + data_pairing(data.v1.values(), phi_full, dv);
  return out;
}

double scaling_exponent(int n, double p, double q) {
  require(n >= 1, "dimension must be at least 1");
  require(p > 1.0 && q > 1.0, "scaling exponent needs p, q > 1");
  const double pc = conjugate_exponent(p), qc = conjugate_exponent(q);
  const double pq = p * q;
  return pq / (pq - 1.0) * ((n + 2) / (p * qc) - 2.0 + (n + 2) / pc);
}

HolderWeights holder_weights(const TestFunction& fn) {
  const auto& cfg = fn.config();
  const double p = cfg.p, q = cfg.q, pc = cfg.p_conj(), qc = cfg.q_conj();
  const double R = cfg.R, R2 = R * R;
  const int n = fn.dim();
  const double sphere = n == 1 ? 2.0 : 2.0 * std::numbers::pi;

  const double t_a1 = R2 * detail::integrate(
                               [&](double s) {
                                 const Jet g = fn.profile(s);
                                 return weighted_power(g.f, g.d2 / (R2 * R2) - g.d1 / R2, pc, p);
                               },
                               0.5, 1.0, 16);
  const double t_b1 = R2 * detail::integrate(
                               [&](double s) {
                                 const Jet g = fn.profile(s);
                                 return weighted_power(g.f, g.d1 / R2, qc, q);
                               },
                               0.5, 1.0, 16);
  const double t_b2 =
      R2 * (detail::integrate([&](double s) { return std::pow(fn.psi(R2 * s), qc); }, 0.0, 0.5, 2) +
            detail::integrate([&](double s) { return weighted_power(fn.profile(s).f, fn.psi(R2 * s), qc, q); }, 0.5,
                              1.0, 8));
  auto annulus = [&](double h, double hc) {
    return sphere * std::pow(R, n) *
           detail::integrate(
               [&](double rho) {
                 return weighted_power(fn.profile(rho).f, fn.laplacian_phi(R * rho), hc, h) * std::pow(rho, n - 1);
               },
               0.5, 1.0, 16);
  };
  const double eta_int = fn.eta_integral();
  const double phi_int = fn.phi_integral();

  HolderWeights w;
  w.A1 = std::pow(t_a1 * phi_int, 1.0 / pc);
  w.A2 = std::pow(eta_int * annulus(p, pc), 1.0 / pc);
  w.B1 = std::pow(t_b1 * phi_int, 1.0 / qc);
  w.B2 = std::pow(t_b2 * annulus(q, qc), 1.0 / qc);
  w.B3 = std::pow(eta_int * phi_int, 1.0 / qc);
  return w;
}

double combined_bound(const HolderWeights& w, double p, double q, double c) {
  require(p * q > 1.0, "combined bound needs pq > 1");
  require(c > 0.0, "slack constant must be positive");
  const double a = 1.0 / (p * q);
  const double K = std::pow(c, 1.0 + 1.0 / p) * (w.A1 + w.A2) * std::pow(w.B1 + w.B2 + w.B3, 1.0 / p);
  return (1.0 - a) * std::pow(a, a / (1.0 - a)) * std::pow(K, 1.0 / (1.0 - a));
}

namespace {

double ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

ScalingReport scaling_from_samples(const SpaceTimeSamples& samples, const SystemParams& params,
                                   const std::vector<double>& R_list, int kappa) {
  params.validate();
  require(!R_list.empty(), "R list is empty");
  const int k = kappa > 0 ? kappa : minimal_kappa(params.p, params.q);
  const double p = params.p, q = params.q, eps = params.eps;

  ScalingReport report;
  report.predicted_exponent = scaling_exponent(params.n, p, q);
  if (report.predicted_exponent >= 0.0)
    report.warnings.push_back(
        fmt::format("E = {:.6g} is not negative; the bound cannot force blow-up here", report.predicted_exponent));

  for (double R : R_list) {
    if (samples.horizon() < R * R * (1.0 - 1e-12)) {
      report.skipped_R.push_back(R);
      continue;
    }
    const TestFunctionConfig cfg{k, R, p, q};
    ScalingRow row;
    row.R = R;
    row.functionals = evaluate_functionals(samples, params, cfg);
    row.weights = holder_weights(TestFunction(cfg, params.n));
    const auto& f = row.functionals;
    const auto& w = row.weights;
    row.lhs1 = f.J + eps * f.rho2;
    row.rhs1 = std::pow(f.I1, 1.0 / p) * w.A1 + std::pow(f.I2, 1.0 / p) * w.A2;
    row.lhs2 = f.I + eps * f.rho1;
    row.rhs2 = std::pow(f.J1, 1.0 / q) * w.B1 + std::pow(f.J2, 1.0 / q) * w.B2 + std::pow(f.J, 1.0 / q) * w.B3;
    row.eps_rho2 = eps * f.rho2;
    if (f.rho1 < 0.0) report.warnings.push_back(fmt::format("rho1 < 0 at R = {}; the chained bound assumes rho1 >= 0", R));
    report.c_slack = std::max({report.c_slack, ratio(row.lhs1, row.rhs1), ratio(row.lhs2, row.rhs2)});
    report.usable_R.push_back(R);
    report.rows.push_back(std::move(row));
  }
  if (std::isfinite(report.c_slack))
    for (auto& row : report.rows) row.bound = combined_bound(row.weights, p, q, report.c_slack);

  std::vector<double> xs, ys;
  for (const auto& row : report.rows)
    if (row.bound > 0.0 && std::isfinite(row.bound)) {
      xs.push_back(row.R);
      ys.push_back(row.bound);
    }
  if (xs.size() >= 2) report.fitted_exponent = fit_log_log(xs, ys).slope;
  if (!report.skipped_R.empty())
    report.warnings.push_back(fmt::format("{} R value(s) skipped: samples end at t = {:.6g}", report.skipped_R.size(),
                                          samples.horizon()));
  return report;
}

ScalingReport verify_scaling(const SystemParams& params, const GridPtr& grid, const ScalingOptions& options) {
  params.validate();
  require(!options.R_list.empty(), "R list is empty");
  for (double R : options.R_list) require(R >= 1.0, "every R must be at least 1");
  const double r_max = *std::max_element(options.R_list.begin(), options.R_list.end());
  require(grid->half_length() > r_max, "grid half-length must exceed max(R)");

  SimulationOptions sim = options.sim;
  sim.t_max = r_max * r_max;
  SpaceTimeSamples samples(grid, r_max);
  const SimulationResult run = simulate(params, grid, sim, samples.recorder());

  ScalingReport report = scaling_from_samples(samples, params, options.R_list, options.kappa);
  if (run.report.detected) report.t_blowup = run.report.t_detect;
  report.warnings.insert(report.warnings.end(), run.warnings.begin(), run.warnings.end());
  return report;
}

}  // namespace critcurve
