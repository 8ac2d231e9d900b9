#include "critcurve/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "critcurve/error.hpp"
#include "critcurve/grid.hpp"

namespace critcurve {

std::string_view to_string(ObservedVerdict v) {
  switch (v) {
    case ObservedVerdict::blowup: return "blowup";
    case ObservedVerdict::decay: return "decay";
    case ObservedVerdict::ambiguous: return "ambiguous";
    case ObservedVerdict::failed: return "failed";
  }
  return "unknown";
}

void SweepConfig::validate() const {
  require(!p_list.empty() && !q_list.empty(), "sweep needs non-empty p and q lists");
  for (double p : p_list) require(std::isfinite(p) && p > 1.0, "p must exceed 1 (min{p,q} > 1)");
  for (double q : q_list) require(std::isfinite(q) && q > 1.0, "q must exceed 1 (min{p,q} > 1)");
  require(base.n == 1 || base.n == 2, "sweeps run in n = 1 or n = 2");
  require(half_length > 0.0, "half_length must be positive");
  require(points >= 8 && (points & (points - 1)) == 0, "points must be a power of two at least 8");
  require(sim.t_max > 0.0 && sim.h > 0.0 && sim.sample_every >= 1, "invalid time parameters");
  require(band_fraction >= 0.0, "band_fraction must be non-negative");
  require(jobs >= 1, "jobs must be at least 1");
}

std::size_t SweepResult::failures() const {
  return std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.error.empty(); });
}

std::size_t SweepResult::assessed() const {
  return std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.agree && !r.in_band; });
}

std::size_t SweepResult::agreements() const {
  return std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.agree && !r.in_band && *r.agree; });
}

bool in_critical_band(int n, double p, double q, double band_fraction) {
  const double crit = 1.0 + 2.0 / n;
  return std::abs(p * q - crit) <= band_fraction * crit;
}

ObservedVerdict observe(const SimulationResult& run, double t_max, double decay_slope_max,
                        std::optional<double>* slope) {
  if (run.report.detected) return ObservedVerdict::blowup;
  const NormTrace& tr = run.trace;
  try {
    const double s = fit_decay_slope(tr, "l2_v", t_max / 5.0, t_max).slope;
    if (slope) *slope = s;
    return s < decay_slope_max ? ObservedVerdict::decay : ObservedVerdict::ambiguous;
  } catch (const Error&) {
    return ObservedVerdict::ambiguous;
  }
}

namespace {

SweepRow run_cell(const SweepConfig& config, const GridPtr& grid, double p, double q) {
  SweepRow row;
  row.p = p;
  row.q = q;
  const int n = config.base.n;
  const Classification c = classify_point(n, p, q);
  row.predicted = c.verdict;
  row.margin = c.margin;
  row.in_band = in_critical_band(n, p, q, config.band_fraction);
  try {
    SystemParams params = config.base;
    params.p = p;
    params.q = q;
    const SimulationResult run = simulate(params, grid, config.sim);
    row.observed = observe(run, config.sim.t_max, config.decay_slope_max, &row.l2_v_slope);
    row.t_stop = run.report.t_detect.value_or(run.trace.t.empty() ? 0.0 : run.trace.t.back());
    row.peak_norm = run.report.peak_norm;
  } catch (const std::exception& e) {
    row.observed = ObservedVerdict::failed;
    row.error = e.what();
  }
  if (c.verdict == Verdict::blowup) row.agree = row.observed == ObservedVerdict::blowup;
  if (c.verdict == Verdict::global_existence) row.agree = row.observed == ObservedVerdict::decay;
  return row;
}

}  // namespace

SweepResult sweep(const SweepConfig& config) {
  config.validate();
  const GridPtr grid = make_grid(config.base.n, config.half_length, config.points);
  const std::size_t nq = config.q_list.size();
  const std::size_t cells = config.p_list.size() * nq;

  SweepResult result;
  result.rows.resize(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells; i = next++)
      result.rows[i] = run_cell(config, grid, config.p_list[i / nq], config.q_list[i % nq]);
  };
  const std::size_t workers = std::min<std::size_t>(config.jobs, cells);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return result;
}

}  // namespace critcurve
