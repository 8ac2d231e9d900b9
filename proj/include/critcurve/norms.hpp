#pragma once

#include <complex>
#include <span>

#include "critcurve/field.hpp"

namespace critcurve {

/// (sum |f_j|^r dV)^{1/r}. Spectral fields are converted first. r >= 1, finite.
double lebesgue_norm(const Field& field, double r);
/// Grid maximum of |f|; stands in for L^infinity on band-limited samples.
double sup_norm(const Field& field);
/// Discrete L^2 norm of |xi|^s f^. Agrees with lebesgue_norm(f, 2) at s = 0.
double sobolev_seminorm(const Field& field, double s);
/// (2L)^{-n} sum_m |f^_m|^2 over the full spectrum.
double spectral_energy(const Field& field);

/// |nabla|^sigma f in physical space (Riesz potential multiplier |xi|^sigma).
Field riesz_derivative(const Field& field, double sigma);
/// || |nabla|^sigma f ||_{L^r}, the torus version of the homogeneous
/// Bessel-potential seminorm H-dot^sigma_r.
double riesz_lebesgue_norm(const Field& field, double sigma, double r);

/// |f|^h pointwise, or |f|^{h-1} f when `signed_power` is set. h > 1.
Field pointwise_nonlinearity(const Field& field, double h, bool signed_power = false);
/// Zeroes every mode with some |m| > N/3 (2/3-rule truncation).
Field two_thirds_truncation(const Field& field);

// Span-level kernels shared with the time stepper.
double lebesgue_norm(std::span<const double> values, double cell_volume, double r);
double weighted_seminorm(std::span<const std::complex<double>> coeffs, const Grid& grid, double s);

}  // namespace critcurve
