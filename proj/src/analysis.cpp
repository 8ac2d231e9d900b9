#include "critcurve/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "critcurve/error.hpp"
#include "critcurve/field.hpp"
#include "critcurve/kernel.hpp"

namespace critcurve {

double RateTable::exponent(std::string_view norm) const {
  for (const auto& e : entries)
    if (e.norm == norm) return e.exponent;
  fail("rate table has no entry '" + std::string(norm) + "'");
}

RateTable predicted_rates(int n, double p, double q, double s, double eps_loss) {
  require(n == 1 || n == 2, "decay rates are available for n = 1 and n = 2 only");
  require(p > 1.0 && q > 1.0, "rates need min{p,q} > 1");
  require(eps_loss > 0.0, "eps_loss must be positive");
  RateTable table;
  if (n == 1) {
    const double loss = std::max(0.0, 1.0 - 0.5 * (p - 1.0) + eps_loss);
    table.loss_term = loss;
    table.alpha = std::min(2.0, q);
    table.entries = {
        {"l2_ut", 1.25 - loss},
        {"lq_ut", 0.5 * (1.0 - 1.0 / q) + 1.0 - loss},
        {"hs_ut", 1.25 + 0.5 * s - loss},
        {"lp_v", 0.5 * (1.0 - 1.0 / p)},
        {"l2_v", 0.25},
        {"hs_v", 0.25 + 0.5 * s},
    };
    return table;
  }
  const double loss = std::max(0.0, 2.0 - p + eps_loss);
  const double alpha = std::min(2.0, q);
  table.loss_term = loss;
  table.alpha = alpha;
  table.entries = {
      {"l2_ut", 1.5 - loss},
      {"lq_ut", 2.0 - 1.0 / alpha - loss},
      {"hs_ut", 1.5 + 0.5 * s - loss},
      {"lp_v", 1.0 - 1.0 / p},
      {"l2_v", 0.5},
      {"hs_v", 0.5 + 0.5 * s},
  };
  return table;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::global_existence: return "global_existence";
    case Verdict::blowup: return "blowup";
    case Verdict::critical_unresolved: return "critical_unresolved";
    case Verdict::open_dimension: return "open_dimension";
  }
  return "unknown";
}

Classification classify_point(int n, double p, double q) {
  require(n >= 1, "dimension must be at least 1");
  require(p > 1.0 && q > 1.0, "classification needs min{p,q} > 1");
  const double margin = p * q - (1.0 + 2.0 / n);
  if (std::abs(margin) <= kCriticalTolerance) return {Verdict::critical_unresolved, margin};
  if (margin < 0.0) return {Verdict::blowup, margin};
  return {n <= 2 ? Verdict::global_existence : Verdict::open_dimension, margin};
}

double gamma_curve_value(double p, double q) {
  require(p * q > 1.0, "Gamma(p,q) needs pq > 1");
  return (std::max(p, q) + 1.0) / (p * q - 1.0);
}

SlopeFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), "fit needs matching sample counts");
  require(x.size() >= 2, "fit needs at least two samples");
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i]), "log-log fit needs positive finite samples");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  require(sxx > 0.0, "log-log fit needs distinct abscissae");
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - my - slope * (lx[i] - mx);
    rss += r * r;
  }
  const double se = n > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  return {slope, se, n};
}

SlopeFit fit_decay_slope(const NormTrace& trace, std::string_view norm, double t_lo, double t_hi) {
  require(t_lo < t_hi, "fit window must satisfy t_lo < t_hi");
  const auto& series = trace.series(norm);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    if (trace.t[i] < t_lo || trace.t[i] > t_hi) continue;
    require(series[i] > 0.0 && std::isfinite(series[i]),
            "norm '" + std::string(norm) + "' is not positive inside the fit window");
    x.push_back(1.0 + trace.t[i]);
    y.push_back(series[i]);
  }
  require(x.size() >= 10, "fit window holds fewer than 10 samples");
  return fit_log_log(x, y);
}

SlopeFit fit_window(const std::vector<double>& t, const std::vector<double>& y, double t_lo, double t_hi) {
  require(t.size() == y.size(), "fit needs matching sample counts");
  std::vector<double> x, v;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    x.push_back(1.0 + t[i]);
    v.push_back(y[i]);
  }
  require(x.size() >= 10, "fit window holds fewer than 10 samples");
  return fit_log_log(x, v);
}

std::vector<double> geometric_times(double t_lo, double t_hi, int n) {
  require(t_lo > 0.0 && t_hi > t_lo && n >= 2, "geometric times need 0 < t_lo < t_hi and n >= 2");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n - 1));
  out.back() = t_hi;
  return out;
}

LinearDecayTrace linear_decay(const GridPtr& grid, double width, std::span<const double> times) {
  require(width > 0.0, "data width must be positive");
  const double w2 = width * width;
  const Field g =
      Field::from_function(grid, [w2](double x, double y) { return std::exp(-(x * x + y * y) / w2); }).to_spectral();
  const auto c = g.coefficients();
  const auto xi_sq = grid->xi_sq();
  const auto weight = grid->mode_weight();
  const double vol = grid->domain_volume();
  LinearDecayTrace out;
  for (double t : times) {
    require(t >= 0.0, "times must be non-negative");
    double k = 0.0, dk = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
      const KernelValues kv = kernel_values(t, xi_sq[m]);
      const double e = weight[m] * std::norm(c[m]);
      k += kv.k * kv.k * e;
      dk += kv.dtk * kv.dtk * e;
    }
    out.t.push_back(t);
    out.k_l2.push_back(std::sqrt(k / vol));
    out.dtk_l2.push_back(std::sqrt(dk / vol));
  }
  return out;
}

}  // namespace critcurve
