#pragma once

#include <utility>

#include "critcurve/field.hpp"
#include "critcurve/state.hpp"

namespace critcurve {

/// K^(t, xi) solves y'' + y' + |xi|^2 y = 0 with y(0) = 0, y'(0) = 1; dtK is
/// its time derivative.
enum class MultiplierKind { K, dtK };

struct KernelValues {
  double k;
  double dtk;
};

/// Window on w = t^2 (1/4 - |xi|^2) inside which the Maclaurin series is used.
inline constexpr double kSeriesWindow = 1e-4;

/// Both multipliers at once. t >= 0, xi_sq >= 0. Overflow-free for all t.
KernelValues kernel_values(double t, double xi_sq);
double kernel_multiplier(double t, double xi_sq, MultiplierKind kind);

/// Exact homogeneous evolution of (u, u_t) and (v, v_t) over dt >= 0.
StatePair propagate_linear(const StatePair& state, double dt);

/// Mode-wise product with kernel_multiplier(t, |xi|^2, kind). Spectral result.
Field semigroup_convolve(const Field& data, double t, MultiplierKind kind);

/// Smooth low/high frequency cut-offs: chi_L = 1 on [0, eps_star/2],
/// 0 on [eps_star, inf), chi_H = 1 - chi_L.
struct CutoffConfig {
  double eps_star = 0.5;
  /// Smoothstep order: 3 (cubic) or 5 (quintic).
  int smoothstep_order = 3;

  double low(double r) const;
  double high(double r) const { return 1.0 - low(r); }
};

/// (chi_L f, chi_H f); the parts sum to f mode by mode.
std::pair<Field, Field> cutoff_split(const Field& field, const CutoffConfig& config = {});

}  // namespace critcurve
