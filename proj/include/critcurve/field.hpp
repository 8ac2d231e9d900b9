#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "critcurve/grid.hpp"

namespace critcurve {

enum class Representation { physical, spectral };
enum class Direction { forward, inverse };

/// A real scalar field on a Grid, held either as physical samples or as its
/// half spectrum. Immutable once built; operations return new fields.
class Field {
 public:
  static Field physical(GridPtr grid, std::vector<double> values);
  static Field spectral(GridPtr grid, std::vector<std::complex<double>> coefficients);
  static Field zeros(GridPtr grid, Representation rep);
  /// Samples f(x, y) at every grid point (y = 0 in 1D).
  static Field from_function(GridPtr grid, const std::function<double(double, double)>& f);

  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::physical; }
  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  /// Throws unless physical.
  std::span<const double> values() const;
  /// Throws unless spectral.
  std::span<const std::complex<double>> coefficients() const;

  Field to_physical() const;
  Field to_spectral() const;

  Field scaled(double c) const;
  Field plus(const Field& other) const;
  /// Multiplies every spectral coefficient by m(|xi|^2); result is spectral.
  Field with_multiplier(const std::function<double(double)>& m) const;

 private:
  Field(GridPtr grid, Representation rep) : grid_(std::move(grid)), rep_(rep) {}

  GridPtr grid_;
  Representation rep_;
  std::vector<double> values_;
  std::vector<std::complex<double>> coeffs_;
};

/// Forward takes physical to spectral, inverse the other way. A field already
/// in the target representation is a representation mismatch.
Field transform(const Field& field, Direction direction);

}  // namespace critcurve
