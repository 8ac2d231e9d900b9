#pragma once

#include "critcurve/field.hpp"

namespace critcurve {

/// (u, u_t, v, v_t) at one time, all spectral on one grid.
class StatePair {
 public:
  StatePair(Field u, Field ut, Field v, Field vt, double time);
  static StatePair zeros(GridPtr grid, double time = 0.0);

  const Field& u() const { return u_; }
  const Field& ut() const { return ut_; }
  const Field& v() const { return v_; }
  const Field& vt() const { return vt_; }
  double time() const { return time_; }
  const GridPtr& grid_ptr() const { return u_.grid_ptr(); }
  const Grid& grid() const { return u_.grid(); }

 private:
  Field u_, ut_, v_, vt_;
  double time_;
};

}  // namespace critcurve
