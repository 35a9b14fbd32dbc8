#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gsp/model.hpp"
#include "gsp/random.hpp"
#include "gsp/sampler.hpp"

namespace gsp {

enum class FunctionalKind { count, length_weighted };

/// Window functionals of a segment:
///   count (φ):           1{K∩W≠∅} / sqrt(τ Leb(W))
///   length_weighted (ψ): l(K) 1{K∩W≠∅} / sqrt(τ Leb(W) E_L l²)
struct Functional {
  FunctionalKind kind = FunctionalKind::count;
  Window window;
  double tau = 1.0;
  /// E_L l²; fixed to 1 for the count functional.
  double second_length_moment = 1.0;

  static Functional phi(const Window& w, double tau);
  static Functional psi(const Window& w, double tau, const LengthLaw& law);

  double normalizer() const;
  std::string_view id() const;
};

double evaluate(const Functional& f, const Segment& k);

struct InnovationSample {
  double sum_part = 0.0;
  double compensator = 0.0;
  double compensator_se = 0.0;
  double value = 0.0;  // sum_part − compensator
  std::size_t mc_points = 0;
};

enum class CompensatorMethod {
  /// V_R · mean f(K_j) λ*(K_j, x), centres uniform on W ⊕ B(0, R).
  plain,
  /// τ‖f‖₁ − V_R · mean f(K_j)(τ − λ*(K_j, x)); same expectation, the
  /// closed-form part absorbs the Poisson share of the variance.
  control_variate,
};

struct CompensatorSettings {
  std::size_t initial_points = 100000;
  /// Points are doubled until every standard error is below this (0 disables).
  double target_se = 0.005;
  std::size_t max_points = std::size_t{1} << 24;
  CompensatorMethod method = CompensatorMethod::plain;
};

/// Innovations Σ_{K∈x} f(K) − ∫ f λ*(·, x) dλ for several functionals sharing
/// one window and one set of Monte Carlo points. Throws std::domain_error when
/// W ⊕ B(0, R) is not inside the simulation domain of x.
std::vector<InnovationSample> innovations(std::span<const Functional> fs,
                                          const Configuration& x,
                                          const ModelParams& p,
                                          const CompensatorSettings& settings, Rng& rng);

InnovationSample innovation(const Functional& f, const Configuration& x,
                            const ModelParams& p, const CompensatorSettings& settings,
                            Rng& rng);

/// True iff W ⊕ B(0, R) lies inside the simulation region.
bool compensator_support_inside(const Window& w, double R, const Domain& domain);

struct InnovationSet {
  /// values[f][replicate]
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> compensator_se;
};

/// One innovation per independent chain, replicate i seeded with
/// replicate_seed(seed, i). Requires replicates >= 100.
InnovationSet innovation_sample_set(std::span<const Functional> fs,
                                    const ModelParams& p, const Domain& domain,
                                    std::size_t replicates,
                                    const ChainSettings& chain,
                                    const CompensatorSettings& compensator,
                                    std::uint64_t seed, unsigned parallelism = 0);

}  // namespace gsp
