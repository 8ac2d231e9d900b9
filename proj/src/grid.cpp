#include "critcurve/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "critcurve/error.hpp"

namespace critcurve {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

class FftPlans {
 public:
  FftPlans(int dim, int n) {
    std::lock_guard lock(planner_mutex());
    const std::size_t real_size = dim == 1 ? n : std::size_t(n) * n;
    const std::size_t complex_size = dim == 1 ? n / 2 + 1 : std::size_t(n) * (n / 2 + 1);
    double* r = fftw_alloc_real(real_size);
    fftw_complex* c = fftw_alloc_complex(complex_size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (dim == 1) {
      forward_ = fftw_plan_dft_r2c_1d(n, r, c, flags);
      inverse_ = fftw_plan_dft_c2r_1d(n, c, r, flags);
    } else {
      forward_ = fftw_plan_dft_r2c_2d(n, n, r, c, flags);
      inverse_ = fftw_plan_dft_c2r_2d(n, n, c, r, flags);
    }
    fftw_free(r);
    fftw_free(c);
    if (!forward_ || !inverse_) fail("FFTW planning failed");
  }
  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void forward(const double* in, std::complex<double>* out) const {
    // r2c does not modify its input, FFTW's signature is just not const.
    fftw_execute_dft_r2c(forward_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  }
  void inverse(std::complex<double>* in_destroyed, double* out) const {
    fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(in_destroyed), out);
  }

 private:
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

Grid::Grid(int dim, double half_length, int points_per_dim)
    : dim_(dim), half_length_(half_length), n_(points_per_dim) {
  require(dim == 1 || dim == 2, "grid dimension must be 1 or 2, got " + std::to_string(dim));
  require(std::isfinite(half_length) && half_length > 0, "grid half_length must be positive");
  require(is_power_of_two(points_per_dim) && points_per_dim >= 8,
          "points_per_dim must be a power of two >= 8 (aliasing hazard), got " +
              std::to_string(points_per_dim));
  cell_volume_ = std::pow(2.0 * half_length_ / n_, dim_);
  size_ = dim_ == 1 ? std::size_t(n_) : std::size_t(n_) * n_;
  const std::size_t half = n_ / 2 + 1;
  spectral_size_ = dim_ == 1 ? half : std::size_t(n_) * half;

  xi_sq_.resize(spectral_size_);
  weight_.resize(spectral_size_);
  for (std::size_t k = 0; k < spectral_size_; ++k) {
    const std::size_t last = k % half;
    double sq = 0.0;
    for (int axis = 0; axis < dim_; ++axis) {
      const double xi = wavenumber(mode_index(k, axis));
      sq += xi * xi;
    }
    xi_sq_[k] = sq;
    weight_[k] = (last == 0 || last == half - 1) ? 1.0 : 2.0;
  }
  plans_ = std::make_unique<FftPlans>(dim_, n_);
}

Grid::~Grid() = default;

double Grid::domain_volume() const { return std::pow(2.0 * half_length_, dim_); }

double Grid::wavenumber(int m) const { return M_PI * m / half_length_; }

std::vector<double> Grid::axis_wavenumbers() const {
  std::vector<double> xi(n_);
  for (int i = 0; i < n_; ++i) xi[i] = wavenumber(i - n_ / 2);
  return xi;
}

double Grid::nyquist() const { return wavenumber(n_ / 2); }

int Grid::mode_index(std::size_t k, int axis) const {
  const std::size_t half = n_ / 2 + 1;
  if (axis == dim_ - 1) {
    // Half axis; the Nyquist entry stands for m = -N/2.
    const int m = static_cast<int>(k % half);
    return m == n_ / 2 ? -n_ / 2 : m;
  }
  const int i = static_cast<int>(k / half);
  return i < n_ / 2 ? i : i - n_;
}

double Grid::radius(std::size_t idx) const {
  const auto [x, y] = point(idx);
  return std::hypot(x, y);
}

std::pair<double, double> Grid::point(std::size_t idx) const {
  if (dim_ == 1) return {coordinate(static_cast<int>(idx)), 0.0};
  return {coordinate(static_cast<int>(idx / n_)), coordinate(static_cast<int>(idx % n_))};
}

void Grid::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  require(in.size() == size_ && out.size() == spectral_size_, "forward transform size mismatch");
  plans_->forward(in.data(), out.data());
  for (auto& c : out) c *= cell_volume_;
}

void Grid::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  require(in.size() == spectral_size_ && out.size() == size_, "inverse transform size mismatch");
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  plans_->inverse(scratch.data(), out.data());
  const double scale = 1.0 / domain_volume();
  for (auto& v : out) v *= scale;
}

GridPtr make_grid(int dim, double half_length, int points_per_dim) {
  return std::make_shared<const Grid>(dim, half_length, points_per_dim);
}

}  // namespace critcurve
