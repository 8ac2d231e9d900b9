// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "critcurve/analysis.hpp"
#include "critcurve/functionals.hpp"
#include "critcurve/grid.hpp"
#include "critcurve/ineq_lab.hpp"
#include "critcurve/integrator.hpp"
#include "critcurve/kernel.hpp"
#include "critcurve/norms.hpp"
#include "critcurve/picard.hpp"
#include "critcurve/sweep.hpp"

using namespace critcurve;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, std::string what) {
    if (!ok) pass_ = false;
    parts_.push_back(ok ? std::move(what) : "FAILED " + std::move(what));
  }
  void note(std::string what) { parts_.push_back(std::move(what)); }
  Outcome done() const {
    std::string d;
    for (const auto& p : parts_) d += (d.empty() ? "" : "; ") + p;
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  std::vector<std::string> parts_;
};

Outcome ac1_kernel() {
  Check c;
  double closed = 0.0;
  for (double t : {0.0, 0.1, 1.0, 2.0, 10.0, 50.0, 300.0}) {
    closed = std::max(closed, std::abs(kernel_multiplier(t, 0.0, MultiplierKind::K) + std::expm1(-t)));
    closed = std::max(closed, std::abs(kernel_multiplier(t, 0.0, MultiplierKind::dtK) - std::exp(-t)));
    closed = std::max(closed, std::abs(kernel_multiplier(t, 0.25, MultiplierKind::K) - t * std::exp(-t / 2)));
  }
  c.expect(closed <= 1e-12, fmt::format("closed forms max err {:.2e} (<= 1e-12)", closed));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> t_dist(0.01, 50.0), xi_dist(0.0, 4.0);
  double worst = 0.0;
  const double h = 1e-4;
  for (int i = 0; i < 10000; ++i) {
    const double t = t_dist(rng), xi = xi_dist(rng), a = xi * xi;
    auto K = [a](double s) { return kernel_multiplier(s, a, MultiplierKind::K); };
    const double res = (K(t + h) - 2 * K(t) + K(t - h)) / (h * h) + (K(t + h) - K(t - h)) / (2 * h) + a * K(t);
    worst = std::max(worst, std::abs(res) / std::max(1.0, a));
  }
  c.expect(worst <= 1e-5, fmt::format("ODE residual {:.2e} over 1e4 samples (<= 1e-5)", worst));

  double jump = 0.0;
  for (double t : {0.1, 1.0, 5.0, 20.0, 100.0})
    for (auto kind : {MultiplierKind::K, MultiplierKind::dtK})
      jump = std::max(jump, std::abs(kernel_multiplier(t, 0.25 + 1e-9, kind) - kernel_multiplier(t, 0.25 - 1e-9, kind)));
  c.expect(jump <= 1e-7, fmt::format("branch jump {:.2e} (<= 1e-7)", jump));
  return c.done();
}

Outcome ac2_linear() {
  Check c;
  {
    const auto g = make_grid(1, 400.0, 8192);
    const auto tr = linear_decay(g, 1.0, geometric_times(100.0, 1000.0, 60));
    const double k = fit_window(tr.t, tr.k_l2, 100.0, 1000.0).slope;
    const double d = fit_window(tr.t, tr.dtk_l2, 100.0, 1000.0).slope;
    c.expect(k >= -0.30 && k <= -0.20, fmt::format("1D K slope {:.4f} in [-0.30, -0.20]", k));
    c.expect(d >= -1.35 && d <= -1.15, fmt::format("1D dtK slope {:.4f} in [-1.35, -1.15]", d));
  }
  {
    const auto g = make_grid(2, 100.0, 512);
    const auto tr = linear_decay(g, 1.0, geometric_times(50.0, 400.0, 40));
    const double k = fit_window(tr.t, tr.k_l2, 50.0, 400.0).slope;
    const double d = fit_window(tr.t, tr.dtk_l2, 50.0, 400.0).slope;
    c.expect(std::abs(k + 0.5) <= 0.07, fmt::format("2D K slope {:.4f} (-0.5 +- 0.07)", k));
    c.expect(std::abs(d + 1.5) <= 0.10, fmt::format("2D dtK slope {:.4f} (-1.5 +- 0.10)", d));
  }
  return c.done();
}

Outcome decay_check(const SystemParams& params, const GridPtr& grid, const SimulationOptions& opt) {
  Check c;
  const SimulationResult run = simulate(params, grid, opt);
  c.expect(run.trace.status == TraceStatus::completed, fmt::format("status {}", to_string(run.trace.status)));
  if (run.trace.status != TraceStatus::completed) return c.done();
  const RateTable rates = predicted_rates(params.n, params.p, params.q, params.s, params.eps_loss);
  for (const auto& e : rates.entries) {
    const double slope = fit_decay_slope(run.trace, e.norm, opt.t_max / 5.0, opt.t_max).slope;
    c.expect(one_sided_pass(slope, e.exponent, 0.10), fmt::format("{} {:.3f} <= {:.3f}", e.norm, slope, -e.exponent + 0.10));
  }
  return c.done();
}

Outcome ac3_decay_1d() {
  SystemParams p;
  p.n = 1;
  p.p = p.q = 2.0;
  p.eps = 0.01;
  p.s = 0.75;
  p.eps_loss = 0.01;
  return decay_check(p, make_grid(1, 256.0, 2048), {.t_max = 500.0, .h = 0.1, .sample_every = 10});
}

Outcome ac4_decay_2d() {
  SystemParams p;
  p.n = 2;
  p.p = 2.5;
  p.q = 1.5;
  p.eps = 0.01;
  p.s = 1.2;
  p.eps_loss = 0.01;
  return decay_check(p, make_grid(2, 128.0, 256), {.t_max = 150.0, .h = 0.1, .sample_every = 10});
}

Outcome ac5_blowup() {
  Check c;
  const auto g = make_grid(1, 200.0, 4096);
  std::vector<double> times;
  for (double eps : {0.25, 0.5, 1.0}) {
    SystemParams p;
    p.n = 1;
    p.p = p.q = 1.1;
    p.eps = eps;
    p.s = 0.6;
    p.data.blowup_admissible = true;
    const SimulationResult r = simulate(p, g, {.t_max = 200.0, .h = 0.05, .sample_every = 20});
    const double t = r.report.t_detect.value_or(std::numeric_limits<double>::infinity());
    c.expect(r.report.detected && t < 200.0, fmt::format("eps={} t_detect={:.2f}", eps, t));
    times.push_back(t);
  }
  c.expect(std::is_sorted(times.rbegin(), times.rend()), "detection time non-increasing in eps");
  return c.done();
}

Outcome ac6_exponent() {
  Check c;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> n_dist(1, 3);
  std::uniform_real_distribution<double> e_dist(1.0001, 6.0);
  int bad = 0, used = 0;
  for (int i = 0; i < 10000; ++i) {
    const int n = n_dist(rng);
    const double p = e_dist(rng), q = e_dist(rng);
    const double margin = p * q - (1.0 + 2.0 / n);
    if (std::abs(margin) <= 1e-12) continue;
    ++used;
    if ((scaling_exponent(n, p, q) < 0.0) != (margin < 0.0)) ++bad;
  }
  c.expect(bad == 0, fmt::format("sign mismatches {}/{}", bad, used));
  const double e1 = scaling_exponent(1, 1.2, 1.2), e2 = scaling_exponent(1, 2, 2);
  c.expect(std::abs(e1 + 3.54545) <= 1e-5, fmt::format("E(1,1.2,1.2) = {:.6f}", e1));
  c.expect(std::abs(e2 - 1.0 / 3.0) <= 1e-12, fmt::format("E(1,2,2) = {:.12f}", e2));
  return c.done();
}

Outcome ac7_scaling() {
  Check c;
  SystemParams p;
  p.n = 1;
  p.p = p.q = 1.2;
  p.eps = 1e-4;
  p.s = 0.6;
  p.data = {.a_u0 = 0.0, .a_u1 = 1.0, .a_v0 = 1.0, .a_v1 = 1.0, .width = 1.0};
  const ScalingReport r =
      verify_scaling(p, make_grid(1, 160.0, 2048), {.R_list = {2, 4, 8, 16}, .sim = {.t_max = 1.0, .h = 0.05}});
  c.expect(r.usable_R.size() == 4, fmt::format("{} of 4 R values usable", r.usable_R.size()));
  c.expect(r.fitted_exponent.has_value(), "fit available");
  if (r.fitted_exponent) {
    const double rel = std::abs(*r.fitted_exponent / r.predicted_exponent - 1.0);
    c.expect(rel <= 0.20, fmt::format("fitted {:.4f} vs E {:.4f} ({:.1f}% off, <= 20%)", *r.fitted_exponent,
                                      r.predicted_exponent, 100 * rel));
  }
  c.expect(std::isfinite(r.c_slack), fmt::format("c_slack {:.3g}", r.c_slack));
  bool hold = true;
  for (const auto& row : r.rows)
    hold = hold && row.lhs1 <= r.c_slack * row.rhs1 * (1 + 1e-12) && row.lhs2 <= r.c_slack * row.rhs2 * (1 + 1e-12) &&
           row.eps_rho2 <= row.bound;
  c.expect(hold, "both chained inequalities and eps rho2 <= bound hold for every R");
  return c.done();
}

Outcome ac8_sweep() {
  Check c;
  {
    SweepConfig s;
    s.p_list = s.q_list = {1.1, 1.58, 2.06, 2.54, 3.02, 3.5};
    s.base.n = 1;
    s.base.eps = 0.3;
    s.base.data.blowup_admissible = true;
    s.half_length = 256.0;
    s.points = 2048;
    s.sim = {.t_max = 500.0, .h = 0.1, .sample_every = 10};
    s.jobs = 4;
    const SweepResult r = sweep(s);
    c.expect(r.failures() == 0, fmt::format("1D failures {}", r.failures()));
    c.expect(r.assessed() > 0 && r.agreements() == r.assessed(),
             fmt::format("1D agreement {}/{} outside the band", r.agreements(), r.assessed()));
  }
  {
    SweepConfig s;
    s.p_list = s.q_list = {1.1, 1.3, 1.6, 2.0};
    s.base.n = 2;
    s.base.eps = 0.3;
    s.base.s = 1.2;
    s.base.data.blowup_admissible = true;
    s.half_length = 128.0;
    s.points = 128;
    s.sim = {.t_max = 150.0, .h = 0.1, .sample_every = 10};
    s.jobs = 4;
    const SweepResult r = sweep(s);
    const double lo = 2.0 * (1.0 - s.band_fraction), hi = 2.0 * (1.0 + s.band_fraction);
    int blow = 0, decay = 0;
    bool ordered = true;
    for (const auto& row : r.rows) {
      const double pq = row.p * row.q;
      if (row.observed == ObservedVerdict::blowup) {
        ++blow;
        ordered = ordered && pq < hi;
      } else if (row.observed == ObservedVerdict::decay) {
        ++decay;
        ordered = ordered && pq > lo;
      }
    }
    c.expect(blow > 0 && decay > 0, fmt::format("2D blow-up cells {}, decay cells {}", blow, decay));
    c.expect(ordered, fmt::format("2D boundary inside the band pq in [{:.2f}, {:.2f}]", lo, hi));
  }
  return c.done();
}

Outcome ac9_picard() {
  Check c;
  SystemParams p;
  p.n = 1;
  p.p = p.q = 2.0;
  p.eps = 0.01;
  const auto g = make_grid(1, 100.0, 1024);
  const PicardResult pr = picard_iterate(p, g, 5.0, 0.05, 1e-13, 60);
  c.expect(pr.converged, fmt::format("Picard converged in {} iterations", pr.iterations));
  if (!pr.converged) return c.done();
  const SimulationResult sim = simulate(p, g, {.t_max = 5.0, .h = 0.05});
  const StatePair& s = pr.history.back();
  const std::vector<double> picard_norms = {
      lebesgue_norm(s.ut(), 2.0),    lebesgue_norm(s.ut(), ut_lebesgue_exponent(p)), sobolev_seminorm(s.ut(), p.s),
      lebesgue_norm(s.v(), p.p),     lebesgue_norm(s.v(), 2.0),                      sobolev_seminorm(s.v(), p.s)};
  double worst = 0.0;
  for (std::size_t i = 0; i < picard_norms.size(); ++i) {
    const double ref = sim.trace.series(NormTrace::kTrackedNorms[i]).back();
    worst = std::max(worst, std::abs(picard_norms[i] / ref - 1.0));
  }
  c.expect(worst <= 5e-3, fmt::format("max relative difference {:.2e} over six norms (<= 5e-3)", worst));
  return c.done();
}

Outcome ac10_inequalities() {
  Check c;
  const auto g = make_grid(1, 20.0, 512);
  const SampleSpec spec{.seed = 1, .count = 200};
  double degenerate = 0.0;
  for (double p : {1.5, 2.0, 3.0})
    for (int i = 0; i < 10; ++i)
      degenerate = std::max(degenerate, std::abs(gn_ratio(make_sample(g, spec, i), {.theta = 0.0, .a = 1.0, .p = p, .p0 = p, .p1 = 2.0}) - 1.0));
  c.expect(degenerate <= 1e-10, fmt::format("GN degenerate |ratio-1| {:.1e}", degenerate));

  struct Preset {
    std::string label;
    RatioFunction ratio;
  };
  std::vector<Preset> presets;
  for (GNParams gn : {GNParams{0.5, 1, 2, 2, 2}, GNParams{0.25, 1, 4, 2, 2}, GNParams{0.5, 1.5, 3, 2, 4}})
    presets.push_back({fmt::format("GN({},{},{},{},{})", gn.theta, gn.a, gn.p, gn.p0, gn.p1),
                       [gn](const Field& u) { return gn_ratio(u, gn); }});
  for (AuxParams a : std::vector<AuxParams>{FractionalPowerParams{2, 0.75, 2}, FractionalPowerParams{3, 1, 4},
                                            FractionalPowerParams{2.5, 0.6, 2}, EmbeddingParams{2, 0.25, 1},
                                            EmbeddingParams{4, 0.1, 0.5}, EmbeddingParams{1.5, 0.3, 1.0},
                                            ChainRuleParams{2, 0.5, 2, 4, 4}, ChainRuleParams{3, 0.75, 2, 8, 4},
                                            ChainRuleParams{2.5, 1.2, 2, 6, 4}})
    presets.push_back({std::string(to_string(kind_of(a))), [a](const Field& u) { return aux_ratio(u, a); }});

  double scale_err = 0.0, worst_drift = 0.0;
  bool finite = true;
  for (const auto& preset : presets) {
    for (int i = 0; i < 5; ++i) {
      const Field u = make_sample(g, spec, i);
      scale_err = std::max(scale_err, std::abs(preset.ratio(u.scaled(17.3)) / preset.ratio(u) - 1.0));
    }
    const SampleSweep s = sample_ratios(g, spec, preset.ratio);
    finite = finite && std::isfinite(s.max_all);
    const double drift = s.max_all / s.max_first_half - 1.0;
    worst_drift = std::max(worst_drift, drift);
    c.expect(drift <= 0.25, fmt::format("{} max {:.4g} -> {:.4g}", preset.label, s.max_first_half, s.max_all));
  }
  c.expect(scale_err <= 1e-10, fmt::format("scale invariance err {:.1e}", scale_err));
  c.expect(finite, "all maxima finite");
  c.note(fmt::format("worst drift 100 -> 200 samples {:.1f}%", 100 * worst_drift));
  return c.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1_kernel},       {"AC2", ac2_linear}, {"AC3", ac3_decay_1d}, {"AC4", ac4_decay_2d},
      {"AC5", ac5_blowup},       {"AC6", ac6_exponent}, {"AC7", ac7_scaling}, {"AC8", ac8_sweep},
      {"AC9", ac9_picard},       {"AC10", ac10_inequalities}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, fmt::format("error: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("{} {} {} [{:.1f} s]\n", name, o.pass ? "PASS" : "FAIL", o.detail, secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
