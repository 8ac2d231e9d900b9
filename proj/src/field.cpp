#include "critcurve/field.hpp"

#include "critcurve/error.hpp"

namespace critcurve {

Field Field::physical(GridPtr grid, std::vector<double> values) {
  require(grid != nullptr, "field needs a grid");
  require(values.size() == grid->size(), "physical field size does not match grid");
  Field f(std::move(grid), Representation::physical);
  f.values_ = std::move(values);
  return f;
}

Field Field::spectral(GridPtr grid, std::vector<std::complex<double>> coefficients) {
  require(grid != nullptr, "field needs a grid");
  require(coefficients.size() == grid->spectral_size(), "spectral field size does not match grid");
  Field f(std::move(grid), Representation::spectral);
  f.coeffs_ = std::move(coefficients);
  return f;
}

Field Field::zeros(GridPtr grid, Representation rep) {
  require(grid != nullptr, "field needs a grid");
  if (rep == Representation::physical) {
    const auto n = grid->size();
    return physical(std::move(grid), std::vector<double>(n, 0.0));
  }
  const auto n = grid->spectral_size();
  return spectral(std::move(grid), std::vector<std::complex<double>>(n));
}

Field Field::from_function(GridPtr grid, const std::function<double(double, double)>& f) {
  require(grid != nullptr, "field needs a grid");
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto [x, y] = grid->point(i);
    v[i] = f(x, y);
  }
  return physical(std::move(grid), std::move(v));
}

std::span<const double> Field::values() const {
  require(rep_ == Representation::physical, "field is not in physical representation");
  return values_;
}

std::span<const std::complex<double>> Field::coefficients() const {
  require(rep_ == Representation::spectral, "field is not in spectral representation");
  return coeffs_;
}

Field Field::to_physical() const {
  if (rep_ == Representation::physical) return *this;
  return transform(*this, Direction::inverse);
}

Field Field::to_spectral() const {
  if (rep_ == Representation::spectral) return *this;
  return transform(*this, Direction::forward);
}

Field Field::scaled(double c) const {
  Field out = *this;
  for (auto& v : out.values_) v *= c;
  for (auto& z : out.coeffs_) z *= c;
  return out;
}

Field Field::plus(const Field& other) const {
  require(grid_ == other.grid_, "fields live on different grids");
  if (rep_ == Representation::physical) {
    Field out = *this;
    const auto rhs = other.to_physical();
    for (std::size_t i = 0; i < out.values_.size(); ++i) out.values_[i] += rhs.values_[i];
    return out;
  }
  Field out = *this;
  const auto rhs = other.to_spectral();
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += rhs.coeffs_[i];
  return out;
}

Field Field::with_multiplier(const std::function<double(double)>& m) const {
  Field out = to_spectral();
  const auto xi_sq = grid_->xi_sq();
  for (std::size_t k = 0; k < out.coeffs_.size(); ++k) out.coeffs_[k] *= m(xi_sq[k]);
  return out;
}

Field transform(const Field& field, Direction direction) {
  const auto& grid = field.grid_ptr();
  if (direction == Direction::forward) {
    require(field.is_physical(), "forward transform expects a physical field");
    std::vector<std::complex<double>> c(grid->spectral_size());
    grid->forward(field.values(), c);
    return Field::spectral(grid, std::move(c));
  }
  require(!field.is_physical(), "inverse transform expects a spectral field");
  std::vector<double> v(grid->size());
  grid->inverse(field.coefficients(), v);
  return Field::physical(grid, std::move(v));
}

}  // namespace critcurve
