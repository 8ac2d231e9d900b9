#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "critcurve/grid.hpp"
#include "critcurve/integrator.hpp"
#include "critcurve/system.hpp"
#include "critcurve/test_function.hpp"

namespace critcurve {

/// Time history of (u_t, v) restricted to grid points with |x| <= radius.
class SpaceTimeSamples {
 public:
  SpaceTimeSamples(GridPtr grid, double radius);

  /// Copies the points inside the radius from full-grid physical arrays.
  /// Times must increase strictly.
  void append(double t, std::span<const double> ut, std::span<const double> v);
  /// Observer that appends every accepted step; keeps a reference to *this.
  StepObserver recorder();

  using Sampler = std::function<std::pair<double, double>(double t, double x, double y)>;
  static SpaceTimeSamples from_function(GridPtr grid, double radius, std::span<const double> times,
                                        const Sampler& f);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  double radius() const { return radius_; }
  /// Grid indices of the retained points.
  std::span<const std::size_t> points() const { return points_; }
  const std::vector<double>& times() const { return times_; }
  std::span<const double> ut(std::size_t k) const;
  std::span<const double> v(std::size_t k) const;
  /// Last recorded time, or -inf when empty.
  double horizon() const;

 private:
  GridPtr grid_;
  double radius_;
  std::vector<std::size_t> points_;
  std::vector<double> times_;
  std::vector<double> ut_, v_;
};

struct BlowupFunctionals {
  double R = 0.0;
  double I = 0.0, I1 = 0.0, I2 = 0.0;
  double J = 0.0, J1 = 0.0, J2 = 0.0;
  double rho1 = 0.0, rho2 = 0.0;
  /// Space-time pairings of u_t and v against the adjoint operator applied
  /// to the test function; equal I + eps rho1 and J + eps rho2 for an exact
  /// weak solution.
  double pairing_u = 0.0, pairing_v = 0.0;
  /// Psi_R on the sample times.
  std::vector<double> psi;
};

/// Trapezoidal rule in t on the sample mesh, cell-volume rule in x.
/// Throws when the samples stop before R^2 or do not cover |x| <= R.
BlowupFunctionals evaluate_functionals(const SpaceTimeSamples& samples, const SystemParams& params,
                                       const TestFunctionConfig& config);

/// E = (pq/(pq-1)) ((n+2)/(p q') - 2 + (n+2)/p').
double scaling_exponent(int n, double p, double q);

/// R-dependent Hoelder factors of the two chained inequalities:
///   J + eps rho2 <= I1^{1/p} A1 + I2^{1/p} A2,
///   I + eps rho1 <= J1^{1/q} B1 + J2^{1/q} B2 + J^{1/q} B3.
struct HolderWeights {
  double A1 = 0.0, A2 = 0.0;
  double B1 = 0.0, B2 = 0.0, B3 = 0.0;
};

HolderWeights holder_weights(const TestFunction& fn);

/// Upper bound on eps rho2 obtained by chaining both inequalities with
/// slack constant c:  max_J (K J^{1/(pq)} - J) with K = c^{1+1/p} (A1+A2) (B1+B2+B3)^{1/p}.
double combined_bound(const HolderWeights& w, double p, double q, double c);

struct ScalingRow {
  double R = 0.0;
  BlowupFunctionals functionals;
  HolderWeights weights;
  double lhs1 = 0.0, rhs1 = 0.0;
  double lhs2 = 0.0, rhs2 = 0.0;
  double eps_rho2 = 0.0;
  double bound = 0.0;
};

struct ScalingOptions {
  std::vector<double> R_list = {2.0, 4.0, 8.0, 16.0};
  /// 0 selects minimal_kappa(p, q).
  int kappa = 0;
  SimulationOptions sim{.t_max = 1.0, .h = 0.05};
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  /// R values whose horizon R^2 was reached before any blow-up.
  std::vector<double> usable_R;
  std::vector<double> skipped_R;
  double predicted_exponent = 0.0;
  std::optional<double> fitted_exponent;
  /// max(1, largest lhs/rhs over both inequalities and all usable R).
  double c_slack = 1.0;
  std::optional<double> t_blowup;
  std::vector<std::string> warnings;
};

/// Evaluates every R in R_list whose horizon the samples reach.
ScalingReport scaling_from_samples(const SpaceTimeSamples& samples, const SystemParams& params,
                                   const std::vector<double>& R_list, int kappa = 0);

/// Runs one simulation to max(R)^2 and evaluates the chained inequalities.
ScalingReport verify_scaling(const SystemParams& params, const GridPtr& grid, const ScalingOptions& options);

}  // namespace critcurve
