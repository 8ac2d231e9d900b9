#include "critcurve/picard.hpp"

#include <cmath>
#include <limits>

#include "critcurve/error.hpp"
#include "critcurve/integrator.hpp"
#include "critcurve/norms.hpp"
#include "engine.hpp"

namespace critcurve {

using detail::cvec;
using detail::ModePair;

namespace {

struct Iterate {
  std::vector<ModePair> u, v;
  std::vector<cvec> fu, fv;  // sources built from this iterate
};

cvec copy_coeffs(const Field& f) { return cvec(f.coefficients().begin(), f.coefficients().end()); }

double diff_norm(const cvec& a, const cvec& b, const Grid& grid) {
  cvec d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  return weighted_seminorm(d, grid, 0.0);
}

}  // namespace

PicardResult picard_iterate(const SystemParams& params, const GridPtr& grid, double T, double h, double tol,
                            int max_iter) {
  params.validate();
  require(std::isfinite(T) && T > 0.0, "Picard horizon must be positive");
  require(std::isfinite(h) && h > 0.0, "Picard step must be positive");
  require(tol > 0.0, "Picard tolerance must be positive");
  require(max_iter >= 1, "max_iter must be at least 1");
  const long steps = std::lround(T / h);
  require(steps >= 1 && std::abs(steps * h - T) <= 1e-9 * T, "T must be an integer multiple of h");

  const DuhamelWeights w(grid, h);
  const StatePair s0 = initial_state(params, grid);
  const std::size_t ns = grid->spectral_size();
  const cvec zero(ns);

  Iterate prev;
  prev.fu.assign(steps + 1, zero);
  prev.fv.assign(steps + 1, zero);

  PicardResult result;
  Iterate cur;
  for (int j = 0; j < max_iter; ++j) {
    cur.u.assign(steps + 1, {});
    cur.v.assign(steps + 1, {});
    cur.fu.assign(steps + 1, {});
    cur.fv.assign(steps + 1, {});
    cur.u[0] = {copy_coeffs(s0.u()), copy_coeffs(s0.ut())};
    cur.v[0] = {copy_coeffs(s0.v()), copy_coeffs(s0.vt())};
    for (long k = 0; k < steps; ++k) {
      const bool src = params.nonlinear;
      detail::advance(w, cur.u[k], src ? &prev.fu[k] : nullptr, src ? &prev.fu[k + 1] : nullptr, cur.u[k + 1]);
      detail::advance(w, cur.v[k], src ? &prev.fv[k] : nullptr, src ? &prev.fv[k + 1] : nullptr, cur.v[k + 1]);
    }

    bool finite = true;
    double increment = 0.0;
    std::vector<double> ut(grid->size()), v(grid->size());
    for (long k = 0; k <= steps; ++k) {
      finite = finite && detail::all_finite(cur.u[k].yt) && detail::all_finite(cur.v[k].y);
      if (!finite) break;
      const double d = j == 0 ? weighted_seminorm(cur.u[k].yt, *grid, 0.0) + weighted_seminorm(cur.v[k].y, *grid, 0.0)
                              : diff_norm(cur.u[k].yt, prev.u[k].yt, *grid) + diff_norm(cur.v[k].y, prev.v[k].y, *grid);
      increment = std::max(increment, d);
      grid->inverse(cur.u[k].yt, ut);
      grid->inverse(cur.v[k].y, v);
      detail::power_source(*grid, v, params.p, cur.fu[k]);
      detail::power_source(*grid, ut, params.q, cur.fv[k]);
    }
    result.iterations = j + 1;
    if (!finite || !std::isfinite(increment) || increment > 1e100) {
      result.increments.push_back(std::numeric_limits<double>::infinity());
      result.converged = false;
      break;
    }
    result.increments.push_back(increment);
    std::swap(prev, cur);
    // For j = 0 the previous iterate is zero; an eps = 0 run stops here.
    if (increment <= tol) {
      result.converged = true;
      break;
    }
  }

  // prev holds the latest finite iterate (empty if the first one diverged).
  const Iterate& last = prev;
  if (last.u.size() == std::size_t(steps + 1)) {
    result.history.reserve(steps + 1);
    for (long k = 0; k <= steps; ++k) {
      result.history.emplace_back(Field::spectral(grid, last.u[k].y), Field::spectral(grid, last.u[k].yt),
                                  Field::spectral(grid, last.v[k].y), Field::spectral(grid, last.v[k].yt), k * h);
    }
  }
  return result;
}

}  // namespace critcurve
