#pragma once

#include <boost/math/quadrature/gauss.hpp>

namespace critcurve::detail {

// Panelled 20-point Gauss-Legendre on [a, b].
template <class F>
double integrate(F&& f, double a, double b, int panels = 8) {
  if (b <= a) return 0.0;
  const double w = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i)
    sum += boost::math::quadrature::gauss<double, 20>::integrate(f, a + i * w, a + (i + 1) * w);
  return sum;
}

}  // namespace critcurve::detail
