#include "critcurve/state.hpp"

#include <cmath>

#include "critcurve/error.hpp"

namespace critcurve {

StatePair::StatePair(Field u, Field ut, Field v, Field vt, double time)
    : u_(u.to_spectral()), ut_(ut.to_spectral()), v_(v.to_spectral()), vt_(vt.to_spectral()), time_(time) {
  require(u_.grid_ptr() == ut_.grid_ptr() && u_.grid_ptr() == v_.grid_ptr() && u_.grid_ptr() == vt_.grid_ptr(),
          "state fields must share one grid");
  require(std::isfinite(time) && time >= 0.0, "state time must be finite and non-negative");
}

StatePair StatePair::zeros(GridPtr grid, double time) {
  const auto z = Field::zeros(std::move(grid), Representation::spectral);
  return StatePair(z, z, z, z, time);
}

}  // namespace critcurve
