#include "critcurve/ineq_lab.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <random>

#include "critcurve/error.hpp"
#include "critcurve/norms.hpp"

namespace critcurve {
namespace {

bool open_unit_to_inf(double x) { return std::isfinite(x) && x > 1.0; }

double positive_ratio(double lhs, double rhs) {
  require(rhs > 0.0 && std::isfinite(rhs), "zero sample: the right-hand side vanishes");
  return lhs / rhs;
}

}  // namespace

double GNParams::omega(int n) const {
  return (1.0 / p0 - 1.0 / p + theta / n) / (1.0 / p0 - 1.0 / p1 + a / n);
}

void GNParams::validate(int n) const {
  require(n >= 1, "dimension must be at least 1");
  require(theta >= 0.0, "GN needs theta >= 0");
  require(a > theta, "GN needs a > theta");
  require(open_unit_to_inf(p) && open_unit_to_inf(p0) && open_unit_to_inf(p1), "GN needs 1 < p, p0, p1 < inf");
  const double w = omega(n);
  require(std::isfinite(w) && w >= theta / a - 1e-12 && w <= 1.0 + 1e-12,
          fmt::format("GN needs theta/a <= omega <= 1, got omega = {:.6g}", w));
}

void FractionalPowerParams::validate(int n) const {
  require(std::isfinite(p) && p > 1.0, "fractional powers need p > 1");
  require(open_unit_to_inf(r), "fractional powers need 1 < r < inf");
  require(s > n / r && s < p, "fractional powers need s in (n/r, p)");
}

void EmbeddingParams::validate(int n) const {
  require(open_unit_to_inf(q), "embedding needs 1 < q < inf");
  require(s1 > 0.0 && s1 < n / q && n / q < s2, "embedding needs 0 < s1 < n/q < s2");
}

void ChainRuleParams::validate(int) const {
  require(s > 0.0, "chain rule needs s > 0");
  require(p > std::ceil(s), "chain rule needs p > ceil(s)");
  require(open_unit_to_inf(r) && open_unit_to_inf(r1) && open_unit_to_inf(r2), "chain rule needs 1 < r, r1, r2 < inf");
  require(std::abs(1.0 / r - (p - 1.0) / r1 - 1.0 / r2) <= 1e-12, "chain rule needs 1/r = (p-1)/r1 + 1/r2");
}

std::string_view to_string(AuxKind kind) {
  switch (kind) {
    case AuxKind::fractional_powers: return "fractional_powers";
    case AuxKind::embedding: return "embedding";
    case AuxKind::chain_rule: return "chain_rule";
  }
  return "unknown";
}

AuxKind kind_of(const AuxParams& params) { return static_cast<AuxKind>(params.index()); }

void validate(const AuxParams& params, int n) {
  std::visit([n](const auto& p) { p.validate(n); }, params);
}

double gn_ratio(const Field& sample, const GNParams& params) {
  const int n = sample.grid().dim();
  params.validate(n);
  const double w = params.omega(n);
  const double lhs = riesz_lebesgue_norm(sample, params.theta, params.p);
  const double base = lebesgue_norm(sample, params.p0);
  const double top = riesz_lebesgue_norm(sample, params.a, params.p1);
  require(base > 0.0 && top > 0.0, "zero sample: the right-hand side vanishes");
  return positive_ratio(lhs, std::pow(base, 1.0 - w) * std::pow(top, w));
}

double aux_ratio(const Field& sample, const AuxParams& params) {
  const int n = sample.grid().dim();
  validate(params, n);
  if (const auto* fp = std::get_if<FractionalPowerParams>(&params)) {
    const double rhs = riesz_lebesgue_norm(sample, fp->s, fp->r) * std::pow(sup_norm(sample), fp->p - 1.0);
    require(rhs > 0.0, "zero sample: the right-hand side vanishes");
    return positive_ratio(riesz_lebesgue_norm(pointwise_nonlinearity(sample, fp->p), fp->s, fp->r), rhs);
  }
  if (const auto* em = std::get_if<EmbeddingParams>(&params)) {
    const double rhs = riesz_lebesgue_norm(sample, em->s1, em->q) + riesz_lebesgue_norm(sample, em->s2, em->q);
    return positive_ratio(sup_norm(sample), rhs);
  }
  const auto& cr = std::get<ChainRuleParams>(params);
  const double rhs = std::pow(lebesgue_norm(sample, cr.r1), cr.p - 1.0) * riesz_lebesgue_norm(sample, cr.s, cr.r2);
  require(rhs > 0.0, "zero sample: the right-hand side vanishes");
  return positive_ratio(riesz_lebesgue_norm(pointwise_nonlinearity(sample, cr.p), cr.s, cr.r), rhs);
}

void SampleSpec::validate() const {
  require(band_limit > 0.0 && band_limit <= 2.0 / 3.0 + 1e-12, "band_limit must lie in (0, 2/3]");
  require(count >= 1, "sample count must be at least 1");
  require(std::isfinite(decay) && decay >= 0.0, "spectrum decay exponent must be non-negative");
}

Field make_sample(const GridPtr& grid, const SampleSpec& spec, int index) {
  spec.validate();
  require(index >= 0, "sample index must be non-negative");
  std::mt19937_64 rng(spec.sample_seed(index));
  std::normal_distribution<double> normal;
  const auto xi_sq = grid->xi_sq();
  const double cut = spec.band_limit * grid->nyquist();
  std::vector<std::complex<double>> c(grid->spectral_size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double a = normal(rng), b = normal(rng);
    const double xi = std::sqrt(xi_sq[k]);
    if (xi_sq[k] == 0.0 || xi > cut) continue;
    c[k] = std::complex<double>(a, b) * std::pow(1.0 + xi, -spec.decay);
  }
  // The round trip projects onto real fields, restoring Hermitian symmetry on
  // the self-conjugate planes.
  return Field::spectral(grid, std::move(c)).to_physical();
}

SampleSweep sample_ratios(const GridPtr& grid, const SampleSpec& spec, const RatioFunction& ratio) {
  spec.validate();
  SampleSweep out;
  const int half = std::max(1, spec.count / 2);
  for (int i = 0; i < spec.count; ++i) {
    const double r = ratio(make_sample(grid, spec, i));
    require(std::isfinite(r), fmt::format("non-finite ratio for sample seed {}", spec.sample_seed(i)));
    out.seeds.push_back(spec.sample_seed(i));
    out.ratios.push_back(r);
    out.max_all = std::max(out.max_all, r);
    if (i < half) out.max_first_half = out.max_all;
  }
  return out;
}

}  // namespace critcurve
