#include "critcurve/kernel.hpp"

#include <cmath>
#include <vector>

#include "critcurve/error.hpp"

namespace critcurve {

KernelValues kernel_values(double t, double xi_sq) {
  require(t >= 0.0 && xi_sq >= 0.0, "kernel needs t >= 0 and |xi|^2 >= 0");
  const double damp = std::exp(-0.5 * t);
  const double gap = 0.25 - xi_sq;
  const double w = t * t * gap;

  if (std::abs(w) < kSeriesWindow) {
    const double s = 1.0 + w / 6.0 + w * w / 120.0 + w * w * w / 5040.0;
    const double c = 1.0 + w / 2.0 + w * w / 24.0 + w * w * w / 720.0;
    return {damp * t * s, damp * (c - 0.5 * t * s)};
  }

  if (gap > 0.0) {
    // Low frequency. With omega = sqrt(1/4 - |xi|^2) and a = 1/2 - omega,
    // e^{-t/2} sinh(t omega) = (e^{-t a} - e^{-t(omega + 1/2)}) / 2.
    const double omega = std::sqrt(gap);
    const double a = xi_sq / (omega + 0.5);
    const double slow = std::exp(-t * a);
    const double fast = std::exp(-t * (omega + 0.5));
    const double k = (slow - fast) / (2.0 * omega);
    const double dtk = 0.5 * (slow * (-a / omega) + fast * (1.0 + 0.5 / omega));
    return {k, dtk};
  }

  const double nu = std::sqrt(-gap);
  const double sn = std::sin(t * nu);
  const double cs = std::cos(t * nu);
  return {damp * sn / nu, damp * (cs - 0.5 * sn / nu)};
}

double kernel_multiplier(double t, double xi_sq, MultiplierKind kind) {
  const auto kv = kernel_values(t, xi_sq);
  return kind == MultiplierKind::K ? kv.k : kv.dtk;
}

StatePair propagate_linear(const StatePair& state, double dt) {
  require(std::isfinite(dt) && dt >= 0.0, "propagation step must be non-negative");
  const auto& grid = state.grid();
  const auto xi_sq = grid.xi_sq();
  const std::size_t n = grid.spectral_size();

  auto evolve = [&](const Field& y, const Field& yt) {
    const auto a = y.coefficients();
    const auto b = yt.coefficients();
    std::vector<std::complex<double>> y1(n), yt1(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto kv = kernel_values(dt, xi_sq[k]);
      y1[k] = (kv.k + kv.dtk) * a[k] + kv.k * b[k];
      // d/dt of the above, using K'' = -K' - |xi|^2 K.
      yt1[k] = -xi_sq[k] * kv.k * a[k] + kv.dtk * b[k];
    }
    return std::pair{Field::spectral(state.grid_ptr(), std::move(y1)),
                     Field::spectral(state.grid_ptr(), std::move(yt1))};
  };

  auto [u, ut] = evolve(state.u(), state.ut());
  auto [v, vt] = evolve(state.v(), state.vt());
  return StatePair(std::move(u), std::move(ut), std::move(v), std::move(vt), state.time() + dt);
}

Field semigroup_convolve(const Field& data, double t, MultiplierKind kind) {
  require(!data.is_physical(), "semigroup_convolve expects spectral data");
  return data.with_multiplier([t, kind](double xi_sq) { return kernel_multiplier(t, xi_sq, kind); });
}

double CutoffConfig::low(double r) const {
  require(eps_star > 0.0, "cut-off threshold eps_star must be positive");
  require(smoothstep_order == 3 || smoothstep_order == 5, "smoothstep order must be 3 or 5");
  const double lo = 0.5 * eps_star;
  if (r <= lo) return 1.0;
  if (r >= eps_star) return 0.0;
  const double z = (r - lo) / (eps_star - lo);
  const double step = smoothstep_order == 3 ? z * z * (3.0 - 2.0 * z)
                                            : z * z * z * (z * (6.0 * z - 15.0) + 10.0);
  return 1.0 - step;
}

std::pair<Field, Field> cutoff_split(const Field& field, const CutoffConfig& config) {
  require(!field.is_physical(), "cutoff_split expects a spectral field");
  const auto c = field.coefficients();
  const auto xi_sq = field.grid().xi_sq();
  std::vector<std::complex<double>> lo(c.size()), hi(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double chi = config.low(std::sqrt(xi_sq[k]));
    lo[k] = chi * c[k];
    hi[k] = c[k] - lo[k];
  }
  return {Field::spectral(field.grid_ptr(), std::move(lo)), Field::spectral(field.grid_ptr(), std::move(hi))};
}

}  // namespace critcurve
