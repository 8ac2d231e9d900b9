#include "critcurve/system.hpp"

#include <cmath>
#include <fmt/format.h>

#include "critcurve/error.hpp"

namespace critcurve {

void InitialDataPreset::validate() const {
  require(std::isfinite(width) && width > 0.0, "data width must be positive");
  for (double a : {a_u0, a_u1, a_v0, a_v1}) require(std::isfinite(a), "data amplitudes must be finite");
  if (blowup_admissible) {
    require(a_u1 > 0.0, "blow-up admissible data needs int u_1 dx > 0");
    require(a_v0 + a_v1 > 0.0, "blow-up admissible data needs int (v_0 + v_1) dx > 0");
  }
}

DataFields make_data_fields(const InitialDataPreset& preset, const GridPtr& grid) {
  preset.validate();
  const double w2 = preset.width * preset.width;
  auto bump = [&](double amplitude) {
    return Field::from_function(grid, [=](double x, double y) { return amplitude * std::exp(-(x * x + y * y) / w2); });
  };
  return {bump(preset.a_u0), bump(preset.a_u1), bump(preset.a_v0), bump(preset.a_v1)};
}

void SystemParams::validate() const {
  require(n == 1 || n == 2, "evolution dimension must be 1 or 2");
  require(std::isfinite(p) && p > 1.0, "p must exceed 1 (min{p,q} > 1)");
  require(std::isfinite(q) && q > 1.0, "q must exceed 1 (min{p,q} > 1)");
  require(std::isfinite(eps) && eps >= 0.0, "data size eps must be non-negative");
  require(std::isfinite(eps_loss) && eps_loss > 0.0, "eps_loss must be positive");
  require(std::isfinite(s) && s >= 0.0, "tracking regularity s must be non-negative");
  data.validate();
}

std::vector<std::string> SystemParams::warnings() const {
  std::vector<std::string> out;
  if (n == 1) {
    const double hi = std::min({1.0, 1.5 - 1.0 / p, 1.5 - 1.0 / q});
    if (!(s > 0.5 && s < hi))
      out.push_back(fmt::format("s = {} outside the 1D regularity window (1/2, {:.6g})", s, hi));
  } else {
    const double hi = std::min(2.0, p);
    if (!(s > 1.0 && s < hi)) out.push_back(fmt::format("s = {} outside the 2D regularity window (1, {:.6g})", s, hi));
  }
  return out;
}

std::string domain_warning(const Grid& grid, double t_max) {
  const double need = 10.0 * std::sqrt(std::max(t_max, 0.0));
  if (grid.half_length() >= need) return {};
  return fmt::format("half_length {} is below 10 sqrt(t_max) = {:.6g}; periodic images may affect decay",
                     grid.half_length(), need);
}

StatePair initial_state(const SystemParams& params, const GridPtr& grid) {
  params.validate();
  require(grid->dim() == params.n, "grid dimension does not match system dimension");
  const auto d = make_data_fields(params.data, grid);
  return StatePair(d.u0.scaled(params.eps), d.u1.scaled(params.eps), d.v0.scaled(params.eps),
                   d.v1.scaled(params.eps), 0.0);
}

double ut_lebesgue_exponent(const SystemParams& params) {
  return params.n == 1 ? params.q : std::min(2.0, params.q);
}

}  // namespace critcurve
