#pragma once

// Vector-level pieces of the Duhamel stepper, shared by the time stepper and
// the Picard iteration.

#include <complex>
#include <vector>

#include "critcurve/integrator.hpp"

namespace critcurve::detail {

using cvec = std::vector<std::complex<double>>;

/// One wave component (y, y_t) in spectral form.
struct ModePair {
  cvec y, yt;
};

/// Exact homogeneous evolution over w.h() plus the Duhamel integral of a
/// source that is linear in time from f0 (start) to f1 (end).
void advance(const DuhamelWeights& w, const ModePair& in, const cvec* f0, const cvec* f1, ModePair& out);

/// Forward FFT of |a|^h for physical samples a.
void power_source(const Grid& grid, const std::vector<double>& a, double h, cvec& out);

bool all_finite(const cvec& a);
bool all_finite(const std::vector<double>& a);

}  // namespace critcurve::detail
