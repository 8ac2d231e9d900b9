#include "critcurve/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "critcurve/error.hpp"
#include "critcurve/field.hpp"
#include "quadrature.hpp"

namespace critcurve {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_abs(double x) { return x == 0.0 ? kNegInf : std::log(std::abs(x)); }

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// S(z) = 1 / (1 + e^a), a = 1/z - 1/(1-z), on 0 < z < 1. With
// b = 1/z^2 + 1/(1-z)^2 and b' = 2/(1-z)^3 - 2/z^3 the profile g = S(2 - 2s)^kappa has
//   g'  = -2 kappa S^kappa (1-S) b,
//   g'' =  4 kappa S^kappa (1-S) [(kappa - (kappa+1) S) b^2 + b'].
struct StepPieces {
  double log_s, log_1ms, s, one_minus_s, b, db;
};

StepPieces step_pieces(double z) {
  const double a = 1.0 / z - 1.0 / (1.0 - z);
  StepPieces out;
  out.log_s = -softplus(a);
  out.log_1ms = -softplus(-a);
  out.s = std::exp(out.log_s);
  out.one_minus_s = std::exp(out.log_1ms);
  out.b = 1.0 / (z * z) + 1.0 / ((1.0 - z) * (1.0 - z));
  out.db = 2.0 / std::pow(1.0 - z, 3) - 2.0 / std::pow(z, 3);
  return out;
}

// Log-space pieces of g(s) = S(z)^kappa, z = 2 - 2s, for z in (0, 1).
struct LogProfile {
  double log_g, log_d1, log_d2, log_lap;
};

LogProfile log_profile(int kappa, int dim, double s) {
  const double z = 2.0 - 2.0 * s;
  if (z >= 1.0) return {0.0, kNegInf, kNegInf, kNegInf};
  const StepPieces sp = step_pieces(z);
  const double k = kappa;
  const double base = k * sp.log_s + sp.log_1ms;
  const double bracket2 = (k - (k + 1.0) * sp.s) * sp.b * sp.b + sp.db;
  LogProfile out;
  out.log_g = k * sp.log_s;
  out.log_d1 = std::log(2.0 * k) + base + std::log(sp.b);
  out.log_d2 = std::log(4.0 * k) + base + log_abs(bracket2);
  out.log_lap = std::log(2.0 * k) + base + log_abs(2.0 * bracket2 - (dim - 1) * sp.b / s);
  return out;
}

}  // namespace

double smoothstep(double z) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  return step_pieces(z).s;
}

double conjugate_exponent(double h) {
  require(h > 1.0, "conjugate exponent needs h > 1");
  return h / (h - 1.0);
}

int minimal_kappa(double p, double q) {
  return static_cast<int>(std::ceil(2.0 * std::max(conjugate_exponent(p), conjugate_exponent(q)) - 1e-12));
}

void TestFunctionConfig::validate() const {
  require(p > 1.0 && q > 1.0, "test functions need p, q > 1");
  require(R >= 1.0, "scaling parameter R must be at least 1");
  const int floor = minimal_kappa(p, q);
  require(kappa >= floor, fmt::format("kappa = {} is below ceil(2 max(p', q')) = {}; use a larger kappa", kappa, floor));
}

TestFunction::TestFunction(TestFunctionConfig config, int dim) : cfg_(config), dim_(dim) {
  require(dim >= 1 && dim <= 2, "test functions are built for n = 1 or n = 2");
  require(cfg_.kappa >= 2, "kappa must be at least 2");
  require(cfg_.R >= 1.0, "scaling parameter R must be at least 1");
}

Jet TestFunction::profile(double s) const {
  if (s <= 0.5) return {1.0, 0.0, 0.0};
  if (s >= 1.0) return {0.0, 0.0, 0.0};
  const StepPieces sp = step_pieces(2.0 - 2.0 * s);
  const double k = cfg_.kappa;
  const double g = std::exp(k * sp.log_s);
  const double common = g * sp.one_minus_s;
  if (common == 0.0) return {g, 0.0, 0.0};
  return {g, -2.0 * k * common * sp.b, 4.0 * k * common * ((k - (k + 1.0) * sp.s) * sp.b * sp.b + sp.db)};
}

Jet TestFunction::eta(double t) const {
  const double r2 = cfg_.R * cfg_.R;
  const Jet g = profile(t / r2);
  return {g.f, g.d1 / r2, g.d2 / (r2 * r2)};
}

double TestFunction::phi(double r) const { return profile(r / cfg_.R).f; }

double TestFunction::laplacian_phi(double r) const {
  const double s = r / cfg_.R;
  if (s <= 0.5 || s >= 1.0) return 0.0;
  const Jet g = profile(s);
  return (g.d2 + (dim_ - 1) * g.d1 / s) / (cfg_.R * cfg_.R);
}

double TestFunction::psi(double t) const {
  const double r2 = cfg_.R * cfg_.R;
  const double s = std::max(t / r2, 0.0);
  if (s >= 1.0) return 0.0;
  const double lo = std::max(s, 0.5);
  const double tail = detail::integrate([&](double u) { return profile(u).f; }, lo, 1.0);
  return r2 * (std::max(0.5 - s, 0.0) + tail);
}

double TestFunction::phi_integral() const {
  if (dim_ == 1) {
    const double tail = detail::integrate([&](double u) { return profile(u).f; }, 0.5, 1.0);
    return 2.0 * cfg_.R * (0.5 + tail);
  }
  const double tail = detail::integrate([&](double u) { return profile(u).f * u; }, 0.5, 1.0);
  return 2.0 * std::numbers::pi * cfg_.R * cfg_.R * (0.125 + tail);
}

double certify_property3(int kappa, int dim, double p, double q, int mesh) {
  require(kappa >= 2, "kappa must be at least 2");
  require(mesh >= 10, "certification mesh needs at least 10 points");
  std::vector<double> nodes;
  nodes.reserve(mesh + 200);
  for (int i = 0; i < mesh; ++i) nodes.push_back(0.5 + 0.5 * i / mesh);
  for (int k = 0; k < 200; ++k) nodes.push_back(1.0 - 0.5 * std::pow(10.0, -3.0 - 9.0 * k / 199.0));

  double worst = 0.0;
  for (double h : {p, q}) {
    const double hc = conjugate_exponent(h);
    double sup_eta = kNegInf, sup_phi = kNegInf;
    for (double s : nodes) {
      const LogProfile lp = log_profile(kappa, dim, s);
      const double weight = -(hc / h) * lp.log_g;
      sup_eta = std::max(sup_eta, weight + log_add(hc * lp.log_d1, hc * lp.log_d2));
      sup_phi = std::max(sup_phi, weight + hc * lp.log_lap);
    }
    worst = std::max({worst, std::exp(sup_eta / hc), std::exp(sup_phi / hc)});
  }
  return worst;
}

TestFunctionTables build_test_function(const TestFunctionConfig& config, const GridPtr& grid,
                                       std::span<const double> t_mesh) {
  config.validate();
  const double bound = certify_property3(config.kappa, grid->dim(), config.p, config.q);
  require(std::isfinite(bound) && bound <= kCertificationLimit,
          fmt::format("property-3 certification failed (bound {:.3g}); increase kappa", bound));

  TestFunctionTables out{TestFunction(config, grid->dim()), {t_mesh.begin(), t_mesh.end()}, {}, {}, {}, {}, {},
                         bound};
  const TestFunction& fn = out.fn;
  out.eta.reserve(t_mesh.size());
  out.psi.reserve(t_mesh.size());
  for (double t : t_mesh) {
    out.eta.push_back(fn.eta(t).f);
    out.psi.push_back(fn.psi(t));
  }
  out.phi.resize(grid->size());
  out.laplacian_phi.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double r = grid->radius(i);
    out.phi[i] = fn.phi(r);
    out.laplacian_phi[i] = fn.laplacian_phi(r);
  }
  const Field lap =
      Field::physical(grid, out.phi).with_multiplier([](double xi_sq) { return -xi_sq; }).to_physical();
  out.spectral_laplacian_phi.assign(lap.values().begin(), lap.values().end());
  return out;
}

}  // namespace critcurve
