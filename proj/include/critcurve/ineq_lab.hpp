#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "critcurve/field.hpp"

namespace critcurve {

/// ||u||_{H^theta_p} <~ ||u||_{L^p0}^{1-omega} ||u||_{H^a_p1}^omega.
struct GNParams {
  double theta = 0.0;
  double a = 1.0;
  double p = 2.0, p0 = 2.0, p1 = 2.0;

  double omega(int n) const;
  /// Throws unless theta >= 0, a > theta, p, p0, p1 in (1, inf) and
  /// theta/a <= omega <= 1.
  void validate(int n) const;
};

/// ||F(u)||_{H^s_r} <~ ||u||_{H^s_r} ||u||_inf^{p-1}, F(u) = |u|^p, s in (n/r, p).
struct FractionalPowerParams {
  double p = 2.0, s = 0.75, r = 2.0;
  void validate(int n) const;
};

/// ||u||_inf <~ ||u||_{H^s1_q} + ||u||_{H^s2_q}, 0 < s1 < n/q < s2.
struct EmbeddingParams {
  double q = 2.0, s1 = 0.25, s2 = 1.0;
  void validate(int n) const;
};

/// ||F(u)||_{H^s_r} <~ ||u||_{L^r1}^{p-1} ||u||_{H^s_r2}, p > ceil(s),
/// 1/r = (p-1)/r1 + 1/r2.
struct ChainRuleParams {
  double p = 2.0, s = 0.5, r = 2.0, r1 = 4.0, r2 = 4.0;
  void validate(int n) const;
};

using AuxParams = std::variant<FractionalPowerParams, EmbeddingParams, ChainRuleParams>;
enum class AuxKind { fractional_powers, embedding, chain_rule };
std::string_view to_string(AuxKind kind);
AuxKind kind_of(const AuxParams& params);
void validate(const AuxParams& params, int n);

/// LHS / RHS of the Gagliardo-Nirenberg inequality. Throws on a zero sample.
double gn_ratio(const Field& sample, const GNParams& params);
/// LHS / RHS of one of the auxiliary inequalities. Throws on a zero sample.
double aux_ratio(const Field& sample, const AuxParams& params);

/// Random band-limited zero-mean samples. Coefficients are independent
/// complex normals weighted by (1 + |xi|)^{-decay} for |xi| <= band_limit * nyquist.
struct SampleSpec {
  double band_limit = 0.5;
  std::uint64_t seed = 1;
  int count = 100;
  double decay = 1.0;
  void validate() const;
  /// Seed of sample `index`; samples are reproducible one by one.
  std::uint64_t sample_seed(int index) const { return seed + static_cast<std::uint64_t>(index); }
};

Field make_sample(const GridPtr& grid, const SampleSpec& spec, int index);

using RatioFunction = std::function<double(const Field&)>;

struct SampleSweep {
  std::vector<std::uint64_t> seeds;
  std::vector<double> ratios;
  /// max over the first half of the samples, and over all of them.
  double max_first_half = 0.0;
  double max_all = 0.0;
};

SampleSweep sample_ratios(const GridPtr& grid, const SampleSpec& spec, const RatioFunction& ratio);

}  // namespace critcurve
