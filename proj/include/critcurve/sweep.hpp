#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "critcurve/analysis.hpp"
#include "critcurve/integrator.hpp"
#include "critcurve/system.hpp"

namespace critcurve {

enum class ObservedVerdict { blowup, decay, ambiguous, failed };
std::string_view to_string(ObservedVerdict v);

struct SweepConfig {
  std::vector<double> p_list, q_list;
  /// Dimension, eps, data and s; p and q are overwritten per cell.
  SystemParams base;
  double half_length = 256.0;
  int points = 2048;
  SimulationOptions sim{.t_max = 500.0, .h = 0.1, .sample_every = 10};
  /// Decay requires the fitted ||v||_2 slope over [t_max/5, t_max] below this.
  double decay_slope_max = -0.05;
  /// Relative half-width of the band around pq = 1 + 2/n left out of agreement checks.
  double band_fraction = 0.15;
  int jobs = 1;

  /// Throws on empty lists, p or q <= 1, or bad grid and time parameters.
  void validate() const;
};

struct SweepRow {
  double p = 0.0, q = 0.0;
  Verdict predicted = Verdict::critical_unresolved;
  ObservedVerdict observed = ObservedVerdict::failed;
  double margin = 0.0;
  /// Detection time for blow-up, otherwise the final simulated time.
  double t_stop = 0.0;
  double peak_norm = 0.0;
  std::optional<double> l2_v_slope;
  /// Only set when the prediction is strict.
  std::optional<bool> agree;
  bool in_band = false;
  std::string error;
};

struct SweepResult {
  /// Row-major over (p_list, q_list), p outermost.
  std::vector<SweepRow> rows;

  std::size_t failures() const;
  /// Strict-prediction cells outside the critical band, and how many agree.
  std::size_t assessed() const;
  std::size_t agreements() const;
};

bool in_critical_band(int n, double p, double q, double band_fraction);

/// Observed verdict of a finished run under the sweep rule.
ObservedVerdict observe(const SimulationResult& run, double t_max, double decay_slope_max,
                        std::optional<double>* slope = nullptr);

/// Runs every cell on a pool of config.jobs workers. Rows do not depend on
/// the number of workers.
SweepResult sweep(const SweepConfig& config);

}  // namespace critcurve
