#pragma once

#include <vector>

#include "critcurve/grid.hpp"
#include "critcurve/state.hpp"
#include "critcurve/system.hpp"

namespace critcurve {

struct PicardResult {
  /// Final iterate on the mesh t_k = k h, k = 0..T/h.
  std::vector<StatePair> history;
  int iterations = 0;
  bool converged = false;
  /// sup_k (||u_t^j - u_t^{j-1}||_2 + ||v^j - v^{j-1}||_2) per iteration.
  std::vector<double> increments;
};

/// Successive approximation (u_j, v_j) = N[(u_{j-1}, v_{j-1})] from
/// u_{-1} = v_{-1} = 0. Each iterate evaluates the Duhamel integrals with the
/// previous iterate's sources, piecewise linear on the fixed mesh. Stops once
/// the increment is <= tol; divergence or max_iter gives converged = false.
PicardResult picard_iterate(const SystemParams& params, const GridPtr& grid, double T, double h, double tol,
                            int max_iter);

}  // namespace critcurve
