#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "critcurve/grid.hpp"
#include "critcurve/state.hpp"
#include "critcurve/system.hpp"

namespace critcurve {

enum class TraceStatus { completed, blowup_detected, overflow };
enum class BlowupTrigger { threshold, nonfinite };

std::string_view to_string(TraceStatus status);
std::string_view to_string(BlowupTrigger trigger);

/// Sampled norm history. Column names double as CSV headers.
struct NormTrace {
  static constexpr std::array<std::string_view, 6> kTrackedNorms = {"l2_ut", "lq_ut", "hs_ut",
                                                                    "lp_v",  "l2_v",  "hs_v"};
  std::vector<double> t;
  std::vector<double> l2_ut, lq_ut, hs_ut, lp_v, l2_v, hs_v;
  std::vector<double> lowfreq_energy, highfreq_energy;
  TraceStatus status = TraceStatus::completed;

  /// Series by column name; throws on an unknown name.
  const std::vector<double>& series(std::string_view name) const;
  std::size_t size() const { return t.size(); }
};

struct BlowupReport {
  bool detected = false;
  std::optional<double> t_detect;
  BlowupTrigger trigger = BlowupTrigger::threshold;
  /// Largest ||u_t||_2 + ||v||_2 seen.
  double peak_norm = 0.0;
};

struct SimulationOptions {
  double t_max = 1.0;
  double h = 0.1;
  int sample_every = 1;
  double blowup_threshold = 1e6;
  /// Halve h once if a step multiplies an L^2 norm by more than 10.
  bool rescue = true;
};

/// Physical u_t and v after every accepted step (and at t = 0).
using StepObserver = std::function<void(double t, std::span<const double> ut, std::span<const double> v)>;

struct SimulationResult {
  NormTrace trace;
  BlowupReport report;
  bool rescued = false;
  double final_h = 0.0;
  std::vector<std::string> warnings;
};

/// Per-mode ETD2 coefficients for one (grid, h): the exact propagator plus
/// Gauss-Legendre weights for the Duhamel integral with a linear-in-time source.
class DuhamelWeights {
 public:
  DuhamelWeights(const GridPtr& grid, double h);
  double h() const { return h_; }
  const GridPtr& grid_ptr() const { return grid_; }

  // K(h), dtK(h); int_0^h K, int_0^h K (1 - tau/h); same two for dtK.
  std::vector<double> kh, dtkh, k0, k1, d0, d1;

 private:
  GridPtr grid_;
  double h_;
};

struct StepOutcome {
  StatePair state;
  bool overflow = false;
};

/// One exponential predictor-corrector step: predictor with the sources frozen
/// at t, corrector with trapezoidal sources using the predicted endpoint.
StepOutcome duhamel_step(const StatePair& state, double h, const SystemParams& params);

SimulationResult simulate(const SystemParams& params, const GridPtr& grid, const SimulationOptions& options,
                          const StepObserver& observer = {});

}  // namespace critcurve
