#include "critcurve/run.hpp"

#include <filesystem>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "critcurve/analysis.hpp"
#include "critcurve/csv.hpp"
#include "critcurve/error.hpp"
#include "critcurve/functionals.hpp"
#include "critcurve/grid.hpp"
#include "critcurve/ineq_lab.hpp"
#include "critcurve/integrator.hpp"
#include "critcurve/svg.hpp"
#include "critcurve/sweep.hpp"

namespace critcurve {
namespace {

namespace fs = std::filesystem;

std::string yes_no(bool b) { return b ? "true" : "false"; }

CsvTable rate_table(const RateTable& rates, const NormTrace* trace, std::pair<double, double> window,
                    std::ostream& log) {
  CsvTable t({"norm_name", "predicted_exponent", "fitted_slope", "stderr", "one_sided_pass"});
  for (const auto& e : rates.entries) {
    if (trace == nullptr) {
      t.add({e.norm, format_number(e.exponent), "", "", ""});
      continue;
    }
    try {
      const SlopeFit fit = fit_decay_slope(*trace, e.norm, window.first, window.second);
      t.add({e.norm, format_number(e.exponent), format_number(fit.slope), format_number(fit.stderr_),
             yes_no(one_sided_pass(fit.slope, e.exponent, 0.10))});
    } catch (const Error& err) {
      fmt::print(log, "warning: no fit for {}: {}\n", e.norm, err.what());
      t.add({e.norm, format_number(e.exponent), "", "", ""});
    }
  }
  return t;
}

void run_rates(const RunConfig& c, const std::string& head, std::ostream& log) {
  const auto& s = c.system;
  const RateTable rates = predicted_rates(s.n, s.p, s.q, s.s, s.eps_loss);
  rate_table(rates, nullptr, {}, log).write(c.out_dir / "rates.csv", head);
  fmt::print(log, "rates: n={} p={} q={} loss={}\n", s.n, s.p, s.q, rates.loss_term);
}

void run_simulate(const RunConfig& c, const std::string& head, std::ostream& log) {
  const auto grid = make_grid(c.system.n, c.half_length, c.points);
  const SimulationResult res = simulate(c.system, grid, c.time);
  for (const auto& w : res.warnings) fmt::print(log, "warning: {}\n", w);

  const NormTrace& tr = res.trace;
  CsvTable trace({"t", "l2_ut", "lq_ut", "hs_ut", "lp_v", "l2_v", "hs_v", "lowfreq_energy", "highfreq_energy"});
  for (std::size_t i = 0; i < tr.size(); ++i)
    trace.add({format_number(tr.t[i]), format_number(tr.l2_ut[i]), format_number(tr.lq_ut[i]),
               format_number(tr.hs_ut[i]), format_number(tr.lp_v[i]), format_number(tr.l2_v[i]),
               format_number(tr.hs_v[i]), format_number(tr.lowfreq_energy[i]), format_number(tr.highfreq_energy[i])});
  trace.write(c.out_dir / "trace.csv", head);

  const auto& s = c.system;
  const RateTable rates = predicted_rates(s.n, s.p, s.q, s.s, s.eps_loss);
  const bool fit = !res.report.detected && s.eps > 0.0;
  rate_table(rates, fit ? &tr : nullptr, c.window(), log).write(c.out_dir / "rates.csv", head);
  fmt::print(log, "simulate: status={} samples={} final_h={}{}\n", to_string(tr.status), tr.size(), res.final_h,
             res.report.t_detect ? fmt::format(" t_detect={}", *res.report.t_detect) : std::string());
}

int run_sweep(const RunConfig& c, const std::string& head, std::ostream& log) {
  SweepConfig sc;
  sc.p_list = c.p_list;
  sc.q_list = c.q_list;
  sc.base = c.system;
  sc.half_length = c.half_length;
  sc.points = c.points;
  sc.sim = c.time;
  sc.decay_slope_max = c.decay_slope_max;
  sc.band_fraction = c.band_fraction;
  sc.jobs = c.jobs;
  const SweepResult result = sweep(sc);

  CsvTable rows({"p", "q", "predicted_verdict", "observed_verdict", "margin", "t_stop", "peak_norm", "l2_v_slope",
                 "in_band", "agree"});
  CsvTable errors({"p", "q", "error"});
  for (const auto& r : result.rows) {
    if (!r.error.empty()) {
      std::string msg = r.error;
      for (char& ch : msg)
        if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
      errors.add({format_number(r.p), format_number(r.q), msg});
      continue;
    }
    rows.add({format_number(r.p), format_number(r.q), std::string(to_string(r.predicted)),
              std::string(to_string(r.observed)), format_number(r.margin), format_number(r.t_stop),
              format_number(r.peak_norm), format_optional(r.l2_v_slope), yes_no(r.in_band),
              r.agree ? yes_no(*r.agree) : std::string()});
  }
  rows.write(c.out_dir / "sweep.csv", head);
  if (errors.rows() > 0) errors.write(c.out_dir / "sweep_errors.csv", head);
  if (c.svg) write_text(c.out_dir / "phase_diagram.svg", phase_diagram_svg(c.system.n, result, head));
  fmt::print(log, "sweep: {} cells, {} outside the band with strict predictions, {} agree, {} failed\n",
             result.rows.size(), result.assessed(), result.agreements(), result.failures());
  return result.failures() > 0 ? 1 : 0;
}

void run_linear(const RunConfig& c, const std::string& head, std::ostream& log) {
  const auto grid = make_grid(c.system.n, c.half_length, c.points);
  const auto times = geometric_times(1.0, c.time.t_max, c.linear_samples);
  const LinearDecayTrace tr = linear_decay(grid, c.system.data.width, times);
  CsvTable table({"t", "k_l2", "dtk_l2"});
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    table.add({format_number(tr.t[i]), format_number(tr.k_l2[i]), format_number(tr.dtk_l2[i])});
  table.write(c.out_dir / "linear_decay.csv", head);

  const auto [lo, hi] = c.window();
  const SlopeFit k = fit_window(tr.t, tr.k_l2, lo, hi);
  const SlopeFit d = fit_window(tr.t, tr.dtk_l2, lo, hi);
  const double n = c.system.n;
  CsvTable fits({"kernel", "predicted_slope", "fitted_slope", "stderr"});
  fits.add({"K", format_number(-n / 4.0), format_number(k.slope), format_number(k.stderr_)});
  fits.add({"dtK", format_number(-n / 4.0 - 1.0), format_number(d.slope), format_number(d.stderr_)});
  fits.write(c.out_dir / "linear_fit.csv", head);
  fmt::print(log, "linear-decay: K slope {:.4f}, dtK slope {:.4f} on [{}, {}]\n", k.slope, d.slope, lo, hi);
}

void run_blowup(const RunConfig& c, const std::string& head, std::ostream& log) {
  const auto grid = make_grid(c.system.n, c.half_length, c.points);
  ScalingOptions opt;
  opt.R_list = c.R_list;
  opt.kappa = c.kappa;
  opt.sim = c.time;
  const ScalingReport rep = verify_scaling(c.system, grid, opt);
  for (const auto& w : rep.warnings) fmt::print(log, "warning: {}\n", w);

  CsvTable table({"R", "I_R", "J_R", "rho1", "rho2", "lhs", "rhs", "ratio", "I1_R", "I2_R", "J1_R", "J2_R", "lhs1",
                  "rhs1", "lhs2", "rhs2", "pairing_u", "pairing_v"});
  for (const auto& r : rep.rows) {
    const auto& f = r.functionals;
    table.add({format_number(r.R), format_number(f.I), format_number(f.J), format_number(f.rho1),
               format_number(f.rho2), format_number(r.eps_rho2), format_number(r.bound),
               format_number(r.bound > 0.0 ? r.eps_rho2 / r.bound : 0.0), format_number(f.I1), format_number(f.I2),
               format_number(f.J1), format_number(f.J2), format_number(r.lhs1), format_number(r.rhs1),
               format_number(r.lhs2), format_number(r.rhs2), format_number(f.pairing_u), format_number(f.pairing_v)});
  }
  table.write(c.out_dir / "blowup_scan.csv", head);

  CsvTable fit({"predicted_exponent", "fitted_exponent", "c_slack", "usable_R", "skipped_R", "t_blowup"});
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : " ") + format_number(x);
    return s;
  };
  fit.add({format_number(rep.predicted_exponent), format_optional(rep.fitted_exponent), format_number(rep.c_slack),
           join(rep.usable_R), join(rep.skipped_R), format_optional(rep.t_blowup)});
  fit.write(c.out_dir / "blowup_fit.csv", head);
  fmt::print(log, "blowup-scan: E={:.6g} fitted={} c_slack={:.4g} usable R: {}\n", rep.predicted_exponent,
             format_optional(rep.fitted_exponent), rep.c_slack, join(rep.usable_R));
}

std::string ineq_label(const RunConfig& c) {
  if (c.proposition == Proposition::gagliardo_nirenberg)
    return fmt::format("gagliardo_nirenberg(theta={};a={};p={};p0={};p1={})", c.gn.theta, c.gn.a, c.gn.p, c.gn.p0,
                       c.gn.p1);
  if (const auto* fp = std::get_if<FractionalPowerParams>(&c.aux))
    return fmt::format("fractional_powers(p={};s={};r={})", fp->p, fp->s, fp->r);
  if (const auto* em = std::get_if<EmbeddingParams>(&c.aux))
    return fmt::format("embedding(q={};s1={};s2={})", em->q, em->s1, em->s2);
  const auto& cr = std::get<ChainRuleParams>(c.aux);
  return fmt::format("chain_rule(p={};s={};r={};r1={};r2={})", cr.p, cr.s, cr.r, cr.r1, cr.r2);
}

void run_ineq(const RunConfig& c, const std::string& head, std::ostream& log) {
  const auto grid = make_grid(c.system.n, c.half_length, c.points);
  RatioFunction ratio;
  if (c.proposition == Proposition::gagliardo_nirenberg)
    ratio = [&](const Field& f) { return gn_ratio(f, c.gn); };
  else
    ratio = [&](const Field& f) { return aux_ratio(f, c.aux); };
  const SampleSweep sw = sample_ratios(grid, c.samples, ratio);
  const std::string label = ineq_label(c);
  CsvTable table({"config", "sample_seed", "ratio"});
  for (std::size_t i = 0; i < sw.ratios.size(); ++i)
    table.add({label, std::to_string(sw.seeds[i]), format_number(sw.ratios[i])});
  table.write(c.out_dir / "ineq.csv", head);
  fmt::print(log, "ineq-check (empirical, torus): {} max over first half {:.6g}, over all {:.6g}\n", label,
             sw.max_first_half, sw.max_all);
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  require(!ec && fs::is_directory(config.out_dir),
          fmt::format("output directory '{}' is not writable", config.out_dir.string()));
  const std::string head = banner(config.config_hash);
  switch (config.mode) {
    case Mode::rates: run_rates(config, head, log); return 0;
    case Mode::simulate: run_simulate(config, head, log); return 0;
    case Mode::sweep: return run_sweep(config, head, log);
    case Mode::linear_decay: run_linear(config, head, log); return 0;
    case Mode::blowup_scan: run_blowup(config, head, log); return 0;
    case Mode::ineq_check: run_ineq(config, head, log); return 0;
  }
  return 1;
}

}  // namespace critcurve
