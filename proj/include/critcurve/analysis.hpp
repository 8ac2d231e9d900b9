#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <span>

#include "critcurve/grid.hpp"
#include "critcurve/integrator.hpp"

namespace critcurve {

struct RateEntry {
  std::string norm;
  /// Predicted decay exponent a in ||.|| <~ (1 + t)^{-a}.
  double exponent;
};

struct RateTable {
  std::vector<RateEntry> entries;
  /// [gamma_1(p)]^+ in 1D, [gamma_2(p)]^+ in 2D.
  double loss_term = 0.0;
  /// min{2, q}; only meaningful in 2D.
  double alpha = 0.0;

  double exponent(std::string_view norm) const;
};

/// Decay exponents of the six tracked norms for the global-existence
/// regime, including the loss of decay on the u_t norms.
RateTable predicted_rates(int n, double p, double q, double s, double eps_loss);

enum class Verdict { global_existence, blowup, critical_unresolved, open_dimension };
std::string_view to_string(Verdict v);

struct Classification {
  Verdict verdict;
  /// pq - (1 + 2/n).
  double margin;
};

/// Tolerance on |margin| below which a point counts as critical.
inline constexpr double kCriticalTolerance = 1e-12;

Classification classify_point(int n, double p, double q);

/// (max{p,q} + 1) / (pq - 1), the critical quantity of the classical
/// (|v|^p, |u|^q) system. Requires pq > 1.
double gamma_curve_value(double p, double q);

struct SlopeFit {
  double slope;
  double stderr_;
  std::size_t samples;
};

/// Least-squares slope of log(norm) against log(1 + t) on [t_lo, t_hi].
/// Needs at least 10 samples in the window, all positive.
SlopeFit fit_decay_slope(const NormTrace& trace, std::string_view norm, double t_lo, double t_hi);
SlopeFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

/// ||K(t) * g||_2 and ||dtK(t) * g||_2 for the Gaussian g = exp(-|x|^2 / width^2).
struct LinearDecayTrace {
  std::vector<double> t, k_l2, dtk_l2;
};

LinearDecayTrace linear_decay(const GridPtr& grid, double width, std::span<const double> times);

/// n points spaced geometrically on [t_lo, t_hi].
std::vector<double> geometric_times(double t_lo, double t_hi, int n);

/// Slope of log y against log(1 + t) over the samples with t in [t_lo, t_hi].
SlopeFit fit_window(const std::vector<double>& t, const std::vector<double>& y, double t_lo, double t_hi);

/// Predicted rates are upper bounds on the norms, so a fitted slope passes when it is no
/// shallower than -exponent + tolerance.
inline bool one_sided_pass(double fitted_slope, double predicted_exponent, double tolerance) {
  return fitted_slope <= -predicted_exponent + tolerance;
}

}  // namespace critcurve
