#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "critcurve/field.hpp"
#include "critcurve/state.hpp"

namespace critcurve {

enum class DataShape { gaussian_pack };

/// Each component is amplitude * exp(-|x|^2 / width^2).
struct InitialDataPreset {
  DataShape shape = DataShape::gaussian_pack;
  double a_u0 = 0.0;
  double a_u1 = 1.0;
  double a_v0 = 1.0;
  double a_v1 = 1.0;
  double width = 1.0;
  /// Require positive mass of u_1 and of v_0 + v_1.
  bool blowup_admissible = false;

  void validate() const;
};

/// Unscaled data (u_0, u_1, v_0, v_1) sampled on the grid, physical.
struct DataFields {
  Field u0, u1, v0, v1;
};
DataFields make_data_fields(const InitialDataPreset& preset, const GridPtr& grid);

/// u_tt - Delta u + u_t = |v|^p,  v_tt - Delta v + v_t = |u_t|^q,
/// (u, u_t, v, v_t)(0) = eps (u_0, u_1, v_0, v_1).
struct SystemParams {
  int n = 1;
  double p = 2.0;
  double q = 2.0;
  double eps = 0.01;
  /// Regularity of the tracked H-dot^s norms.
  double s = 0.75;
  /// The small positive constant in the loss-of-decay terms.
  double eps_loss = 0.01;
  InitialDataPreset data;
  /// Test hook: drop both nonlinear sources.
  bool nonlinear = true;

  /// Hard constraints: n in {1,2}, p, q > 1, eps >= 0, eps_loss > 0.
  void validate() const;
  /// Soft constraints (regularity window for s); tracking still runs.
  std::vector<std::string> warnings() const;
};

/// Heuristic L >= 10 sqrt(t_max) for decay experiments; returns a warning or "".
std::string domain_warning(const Grid& grid, double t_max);

/// eps-scaled preset data as a spectral state at t = 0.
StatePair initial_state(const SystemParams& params, const GridPtr& grid);

/// Exponent of the u_t Lebesgue norm tracked next to L^2: q in 1D, min{2, q} in 2D.
double ut_lebesgue_exponent(const SystemParams& params);

}  // namespace critcurve
