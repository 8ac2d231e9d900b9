#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "critcurve/ineq_lab.hpp"
#include "critcurve/integrator.hpp"
#include "critcurve/system.hpp"

namespace critcurve {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kConfigFormat = "critcurve-config v1";

enum class Mode { simulate, sweep, linear_decay, blowup_scan, ineq_check, rates };
std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);

enum class Proposition { gagliardo_nirenberg, fractional_powers, embedding, chain_rule };
std::string_view to_string(Proposition p);

struct RunConfig {
  Mode mode = Mode::rates;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool svg = false;
  std::filesystem::path out_dir = ".";

  double half_length = 0.0;
  int points = 0;
  SystemParams system;
  SimulationOptions time;
  /// Decay fit window; defaults to [t_max/5, t_max].
  std::optional<std::pair<double, double>> fit_window;

  std::vector<double> p_list, q_list;
  double decay_slope_max = -0.05;
  double band_fraction = 0.15;

  int linear_samples = 200;

  std::vector<double> R_list;
  int kappa = 0;

  Proposition proposition = Proposition::gagliardo_nirenberg;
  GNParams gn;
  AuxParams aux;
  SampleSpec samples;

  /// "fnv1a64:<16 hex digits>" of the exact config text.
  std::string config_hash;

  std::pair<double, double> window() const;
};

/// Parses and validates a critcurve-config v1 document. Unknown sections and
/// keys are errors that name the closest known key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

std::string config_hash(std::string_view text);

}  // namespace critcurve
