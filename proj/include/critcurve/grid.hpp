#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace critcurve {

class FftPlans;

/// Periodic torus [-L, L)^n standing in for R^n, n in {1, 2}.
///
/// Real fields use the half-spectrum layout of a real-to-complex FFT: the
/// last axis stores modes 0..N/2 only. Every spectral coefficient carries a
/// multiplicity weight (1 or 2) so that sums over the stored coefficients
/// equal sums over the full spectrum.
///
/// The forward transform is scaled by the cell volume, so coefficients
/// approximate the continuum transform and the discrete Parseval identity
/// reads  sum_j |f_j|^2 dV = (2L)^{-n} sum_m |f^_m|^2.
class Grid {
 public:
  Grid(int dim, double half_length, int points_per_dim);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const { return dim_; }
  double half_length() const { return half_length_; }
  int points_per_dim() const { return n_; }
  double spacing() const { return 2.0 * half_length_ / n_; }
  double cell_volume() const { return cell_volume_; }
  /// (2L)^n, the torus volume.
  double domain_volume() const;

  /// Number of physical samples, N^n.
  std::size_t size() const { return size_; }
  /// Number of stored spectral coefficients, N^{n-1} (N/2 + 1).
  std::size_t spectral_size() const { return spectral_size_; }

  /// Signed wavenumber pi m / L.
  double wavenumber(int m) const;
  /// Axis wavenumbers for m in [-N/2, N/2), ascending.
  std::vector<double> axis_wavenumbers() const;
  /// Largest |xi| along one axis (the Nyquist wavenumber).
  double nyquist() const;

  /// |xi|^2 for every stored coefficient.
  std::span<const double> xi_sq() const { return xi_sq_; }
  /// Hermitian multiplicity of every stored coefficient.
  std::span<const double> mode_weight() const { return weight_; }
  /// Signed mode index of stored coefficient k along `axis`.
  int mode_index(std::size_t k, int axis) const;

  /// Coordinate x_j = -L + j dx along one axis.
  double coordinate(int j) const { return -half_length_ + j * spacing(); }
  /// Euclidean |x| of physical sample `idx` (row-major).
  double radius(std::size_t idx) const;
  /// Coordinates of physical sample `idx`; y is 0 in 1D.
  std::pair<double, double> point(std::size_t idx) const;

  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

 private:
  int dim_;
  double half_length_;
  int n_;
  double cell_volume_;
  std::size_t size_;
  std::size_t spectral_size_;
  std::vector<double> xi_sq_;
  std::vector<double> weight_;
  std::unique_ptr<FftPlans> plans_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validating factory. Rejects dim outside {1, 2}, non-positive L, and N that
/// is not a power of two at least 8.
GridPtr make_grid(int dim, double half_length, int points_per_dim);

}  // namespace critcurve
