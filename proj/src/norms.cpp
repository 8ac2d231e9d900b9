#include "critcurve/norms.hpp"

#include <algorithm>
#include <cmath>

#include "critcurve/error.hpp"

namespace critcurve {

double lebesgue_norm(std::span<const double> values, double cell_volume, double r) {
  require(std::isfinite(r) && r >= 1.0, "Lebesgue exponent must satisfy 1 <= r < infinity");
  double sum = 0.0;
  if (r == 2.0) {
    for (double v : values) sum += v * v;
    return std::sqrt(sum * cell_volume);
  }
  if (r == 1.0) {
    for (double v : values) sum += std::abs(v);
    return sum * cell_volume;
  }
  // Scale by the max to keep |f|^r in range for large r.
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0 || !std::isfinite(peak)) return peak;
  for (double v : values) sum += std::pow(std::abs(v) / peak, r);
  return peak * std::pow(sum * cell_volume, 1.0 / r);
}

double weighted_seminorm(std::span<const std::complex<double>> coeffs, const Grid& grid, double s) {
  require(std::isfinite(s) && s >= 0.0, "Sobolev order must be non-negative");
  const auto xi_sq = grid.xi_sq();
  const auto w = grid.mode_weight();
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    double m = 1.0;
    if (s != 0.0) m = xi_sq[k] == 0.0 ? 0.0 : std::pow(xi_sq[k], s);  // |xi|^{2s}
    sum += w[k] * m * std::norm(coeffs[k]);
  }
  return std::sqrt(sum / grid.domain_volume());
}

double lebesgue_norm(const Field& field, double r) {
  const Field f = field.to_physical();
  return lebesgue_norm(f.values(), f.grid().cell_volume(), r);
}

double sup_norm(const Field& field) {
  const Field f = field.to_physical();
  double peak = 0.0;
  for (double v : f.values()) peak = std::max(peak, std::abs(v));
  return peak;
}

double sobolev_seminorm(const Field& field, double s) {
  require(std::isfinite(s) && s >= 0.0, "Sobolev order must be non-negative");
  const Field f = field.to_spectral();
  return weighted_seminorm(f.coefficients(), f.grid(), s);
}

double spectral_energy(const Field& field) {
  const double n = sobolev_seminorm(field, 0.0);
  return n * n;
}

Field riesz_derivative(const Field& field, double sigma) {
  require(std::isfinite(sigma) && sigma >= 0.0, "Riesz order must be non-negative");
  if (sigma == 0.0) return field.to_physical();
  return field
      .with_multiplier([sigma](double xi_sq) { return xi_sq == 0.0 ? 0.0 : std::pow(xi_sq, 0.5 * sigma); })
      .to_physical();
}

double riesz_lebesgue_norm(const Field& field, double sigma, double r) {
  return lebesgue_norm(riesz_derivative(field, sigma), r);
}

Field pointwise_nonlinearity(const Field& field, double h, bool signed_power) {
  require(std::isfinite(h) && h > 1.0, "nonlinearity exponent must exceed 1");
  const Field f = field.to_physical();
  const auto in = f.values();
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double a = std::pow(std::abs(in[i]), h);
    out[i] = signed_power ? std::copysign(a, in[i]) : a;
  }
  return Field::physical(f.grid_ptr(), std::move(out));
}

Field two_thirds_truncation(const Field& field) {
  Field f = field.to_spectral();
  const auto& grid = f.grid();
  const int cut = grid.points_per_dim() / 3;
  std::vector<std::complex<double>> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t k = 0; k < c.size(); ++k) {
    for (int axis = 0; axis < grid.dim(); ++axis) {
      if (std::abs(grid.mode_index(k, axis)) > cut) {
        c[k] = 0.0;
        break;
      }
    }
  }
  return Field::spectral(f.grid_ptr(), std::move(c));
}

}  // namespace critcurve
