#include "critcurve/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "critcurve/error.hpp"
#include "critcurve/kernel.hpp"
#include "critcurve/norms.hpp"
#include "engine.hpp"

namespace critcurve {

std::string_view to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::completed: return "completed";
    case TraceStatus::blowup_detected: return "blowup_detected";
    case TraceStatus::overflow: return "overflow";
  }
  return "unknown";
}

std::string_view to_string(BlowupTrigger trigger) {
  return trigger == BlowupTrigger::threshold ? "threshold" : "nonfinite";
}

const std::vector<double>& NormTrace::series(std::string_view name) const {
  if (name == "t") return t;
  if (name == "l2_ut") return l2_ut;
  if (name == "lq_ut") return lq_ut;
  if (name == "hs_ut") return hs_ut;
  if (name == "lp_v") return lp_v;
  if (name == "l2_v") return l2_v;
  if (name == "hs_v") return hs_v;
  if (name == "lowfreq_energy") return lowfreq_energy;
  if (name == "highfreq_energy") return highfreq_energy;
  fail("unknown trace column '" + std::string(name) + "'");
}

namespace {

// 4-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGaussNodes = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                               0.8611363115940526};
constexpr std::array<double, 4> kGaussWeights = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                                 0.3478548451374538};

}  // namespace

DuhamelWeights::DuhamelWeights(const GridPtr& grid, double h) : grid_(grid), h_(h) {
  require(grid != nullptr, "weights need a grid");
  require(std::isfinite(h) && h > 0.0, "step size must be positive");
  const auto xi_sq = grid->xi_sq();
  const std::size_t n = grid->spectral_size();
  kh.resize(n), dtkh.resize(n), k0.resize(n), k1.resize(n), d0.resize(n), d1.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto end = kernel_values(h, xi_sq[m]);
    kh[m] = end.k;
    dtkh[m] = end.dtk;
    double a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    for (int i = 0; i < 4; ++i) {
      const double tau = 0.5 * h * (kGaussNodes[i] + 1.0);
      const double wt = 0.5 * h * kGaussWeights[i];
      const auto kv = kernel_values(tau, xi_sq[m]);
      const double ramp = 1.0 - tau / h;
      a0 += wt * kv.k;
      a1 += wt * kv.k * ramp;
      b0 += wt * kv.dtk;
      b1 += wt * kv.dtk * ramp;
    }
    k0[m] = a0, k1[m] = a1, d0[m] = b0, d1[m] = b1;
  }
}

namespace detail {

void advance(const DuhamelWeights& w, const ModePair& in, const cvec* f0, const cvec* f1, ModePair& out) {
  const auto xi_sq = w.grid_ptr()->xi_sq();
  const std::size_t n = in.y.size();
  out.y.resize(n);
  out.yt.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto y = in.y[k];
    const auto yt = in.yt[k];
    auto ny = (w.kh[k] + w.dtkh[k]) * y + w.kh[k] * yt;
    auto nyt = -xi_sq[k] * w.kh[k] * y + w.dtkh[k] * yt;
    if (f0 && f1) {
      ny += (w.k0[k] - w.k1[k]) * (*f0)[k] + w.k1[k] * (*f1)[k];
      nyt += (w.d0[k] - w.d1[k]) * (*f0)[k] + w.d1[k] * (*f1)[k];
    } else if (f0) {
      ny += w.k0[k] * (*f0)[k];
      nyt += w.d0[k] * (*f0)[k];
    }
    out.y[k] = ny;
    out.yt[k] = nyt;
  }
}

void power_source(const Grid& grid, const std::vector<double>& a, double h, cvec& out) {
  std::vector<double> pw(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) pw[i] = std::pow(std::abs(a[i]), h);
  out.resize(grid.spectral_size());
  grid.forward(pw, out);
}

bool all_finite(const cvec& a) {
  return std::all_of(a.begin(), a.end(), [](const auto& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool all_finite(const std::vector<double>& a) {
  return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace detail

namespace {

using detail::cvec;
using detail::ModePair;

cvec copy_coeffs(const Field& f) { return cvec(f.coefficients().begin(), f.coefficients().end()); }

/// The evolving system with its physical fields and sources cached at the
/// current time.
class Engine {
 public:
  Engine(const SystemParams& params, GridPtr grid) : params_(params), grid_(std::move(grid)) {}

  void load(const StatePair& s) {
    u_ = {copy_coeffs(s.u()), copy_coeffs(s.ut())};
    v_ = {copy_coeffs(s.v()), copy_coeffs(s.vt())};
    refresh();
  }

  /// Returns false when the new state is not finite.
  bool step(const DuhamelWeights& w) {
    const cvec* fu = params_.nonlinear ? &fu_ : nullptr;
    const cvec* fv = params_.nonlinear ? &fv_ : nullptr;
    if (fu) {
      advance(w, u_, fu, nullptr, pu_);
      advance(w, v_, fv, nullptr, pv_);
      to_physical(pu_.yt, ut_pred_);
      to_physical(pv_.y, v_pred_);
      detail::power_source(*grid_, v_pred_, params_.p, fu1_);
      detail::power_source(*grid_, ut_pred_, params_.q, fv1_);
      advance(w, u_, fu, &fu1_, nu_);
      advance(w, v_, fv, &fv1_, nv_);
    } else {
      advance(w, u_, nullptr, nullptr, nu_);
      advance(w, v_, nullptr, nullptr, nv_);
    }
    std::swap(u_, nu_);
    std::swap(v_, nv_);
    refresh();
    return detail::all_finite(ut_phys_) && detail::all_finite(v_phys_) && detail::all_finite(u_.y) &&
           detail::all_finite(v_.yt);
  }

  StatePair snapshot(double t) const {
    return StatePair(Field::spectral(grid_, u_.y), Field::spectral(grid_, u_.yt), Field::spectral(grid_, v_.y),
                     Field::spectral(grid_, v_.yt), t);
  }

  const ModePair& u() const { return u_; }
  const ModePair& v() const { return v_; }
  const std::vector<double>& ut_phys() const { return ut_phys_; }
  const std::vector<double>& v_phys() const { return v_phys_; }

 private:
  void to_physical(const cvec& c, std::vector<double>& out) const {
    out.resize(grid_->size());
    grid_->inverse(c, out);
  }

  void refresh() {
    to_physical(u_.yt, ut_phys_);
    to_physical(v_.y, v_phys_);
    if (params_.nonlinear) {
      detail::power_source(*grid_, v_phys_, params_.p, fu_);
      detail::power_source(*grid_, ut_phys_, params_.q, fv_);
    }
  }

  SystemParams params_;
  GridPtr grid_;
  ModePair u_, v_, pu_, pv_, nu_, nv_;
  std::vector<double> ut_phys_, v_phys_, ut_pred_, v_pred_;
  cvec fu_, fv_, fu1_, fv1_;
};

class NormSampler {
 public:
  NormSampler(const SystemParams& params, const Grid& grid)
      : grid_(grid), s_(params.s), p_(params.p), q_(ut_lebesgue_exponent(params)) {
    const auto xi_sq = grid.xi_sq();
    const CutoffConfig cut{};
    chi_low_.resize(xi_sq.size());
    for (std::size_t k = 0; k < xi_sq.size(); ++k) chi_low_[k] = cut.low(std::sqrt(xi_sq[k]));
  }

  void record(double t, const Engine& e, NormTrace& tr) const {
    const double dv = grid_.cell_volume();
    tr.t.push_back(t);
    tr.l2_ut.push_back(lebesgue_norm(e.ut_phys(), dv, 2.0));
    tr.lq_ut.push_back(lebesgue_norm(e.ut_phys(), dv, q_));
    tr.hs_ut.push_back(weighted_seminorm(e.u().yt, grid_, s_));
    tr.lp_v.push_back(lebesgue_norm(e.v_phys(), dv, p_));
    tr.l2_v.push_back(lebesgue_norm(e.v_phys(), dv, 2.0));
    tr.hs_v.push_back(weighted_seminorm(e.v().y, grid_, s_));
    const auto w = grid_.mode_weight();
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < chi_low_.size(); ++k) {
      const double mass = w[k] * (std::norm(e.u().yt[k]) + std::norm(e.v().y[k]));
      lo += chi_low_[k] * chi_low_[k] * mass;
      hi += (1.0 - chi_low_[k]) * (1.0 - chi_low_[k]) * mass;
    }
    tr.lowfreq_energy.push_back(lo / grid_.domain_volume());
    tr.highfreq_energy.push_back(hi / grid_.domain_volume());
  }

 private:
  const Grid& grid_;
  double s_, p_, q_;
  std::vector<double> chi_low_;
};

}  // namespace

StepOutcome duhamel_step(const StatePair& state, double h, const SystemParams& params) {
  params.validate();
  const DuhamelWeights w(state.grid_ptr(), h);
  Engine e(params, state.grid_ptr());
  e.load(state);
  const bool ok = e.step(w);
  return {e.snapshot(state.time() + h), !ok};
}

SimulationResult simulate(const SystemParams& params, const GridPtr& grid, const SimulationOptions& options,
                          const StepObserver& observer) {
  params.validate();
  require(grid->dim() == params.n, "grid dimension does not match system dimension");
  require(std::isfinite(options.t_max) && options.t_max > 0.0, "t_max must be positive");
  require(std::isfinite(options.h) && options.h > 0.0, "step size h must be positive");
  require(options.sample_every >= 1, "sample_every must be at least 1");

  SimulationResult result;
  result.warnings = params.warnings();
  if (auto w = domain_warning(*grid, options.t_max); !w.empty()) result.warnings.push_back(std::move(w));

  double h = options.h;
  int sample_every = options.sample_every;
  auto weights = std::make_unique<DuhamelWeights>(grid, h);
  Engine engine(params, grid);
  engine.load(initial_state(params, grid));
  const NormSampler sampler(params, *grid);
  NormTrace& trace = result.trace;
  BlowupReport& report = result.report;

  const double dv = grid->cell_volume();
  auto monitor = [&](const Engine& e) {
    return std::pair{lebesgue_norm(e.ut_phys(), dv, 2.0), lebesgue_norm(e.v_phys(), dv, 2.0)};
  };

  sampler.record(0.0, engine, trace);
  if (observer) observer(0.0, engine.ut_phys(), engine.v_phys());
  auto [prev_ut, prev_v] = monitor(engine);
  report.peak_norm = prev_ut + prev_v;

  double t_base = 0.0;
  long steps = 0;
  const double stop = options.t_max - 1e-9 * h;
  double t = 0.0;
  std::optional<Engine> saved;
  while (t < stop) {
    if (options.rescue && !result.rescued) saved = engine;
    const bool finite = engine.step(*weights);
    const double t_next = t_base + (steps + 1) * h;

    if (!finite) {
      trace.status = TraceStatus::overflow;
      report.detected = true;
      report.t_detect = t_next;
      report.trigger = BlowupTrigger::nonfinite;
      break;
    }
    const auto [n_ut, n_v] = monitor(engine);
    const bool jump = (prev_ut > 0.0 && n_ut > 10.0 * prev_ut) || (prev_v > 0.0 && n_v > 10.0 * prev_v);
    if (jump && options.rescue && !result.rescued) {
      engine = *saved;
      saved.reset();
      result.rescued = true;
      t_base = t;
      steps = 0;
      h *= 0.5;
      sample_every *= 2;
      weights = std::make_unique<DuhamelWeights>(grid, h);
      continue;
    }
    ++steps;
    t = t_next;
    report.peak_norm = std::max(report.peak_norm, n_ut + n_v);
    prev_ut = n_ut;
    prev_v = n_v;
    if (observer) observer(t, engine.ut_phys(), engine.v_phys());

    const bool over = n_ut + n_v > options.blowup_threshold;
    if (over || steps % sample_every == 0 || t >= stop) sampler.record(t, engine, trace);
    if (over) {
      trace.status = TraceStatus::blowup_detected;
      report.detected = true;
      report.t_detect = t;
      report.trigger = BlowupTrigger::threshold;
      break;
    }
  }
  result.final_h = h;
  return result;
}

}  // namespace critcurve
