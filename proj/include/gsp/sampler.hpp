#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "gsp/model.hpp"
#include "gsp/random.hpp"

namespace gsp {

struct MoveCounter {
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
  double rate() const {
    return proposed == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposed);
  }
};

struct ProposalStats {
  MoveCounter birth;
  MoveCounter death;
  MoveCounter move;
};

enum class InitialState { empty, poisson };

struct SamplerOptions {
  /// Test hook: accept every death proposal. Breaks detailed balance on
  /// purpose so the GNZ diagnostic has a negative control.
  bool sabotage_death = false;
};

struct ChainSettings {
  std::size_t sweeps = 2200;
  std::size_t burn_in = 2000;
  /// `poisson` starts from a draw of the dominating Poisson process with
  /// intensity τ·λ on the domain, `empty` from the empty configuration.
  InitialState init = InitialState::poisson;

  /// Throws std::invalid_argument unless sweeps > burn_in.
  void validate() const;
};

/// Birth–death–move Metropolis–Hastings state targeting the finite-volume
/// Gibbs density τ^n exp(-βH) with respect to the unit Poisson process on the
/// domain.
struct ChainState {
  ChainState(const ModelParams& params, const Domain& domain, std::uint64_t seed,
             SamplerOptions options = {});

  Configuration config;
  ModelParams params;
  std::uint64_t step_count = 0;
  Rng rng;
  ProposalStats stats;
  SamplerOptions options;
  double volume;  // Leb(domain)
};

inline constexpr double kBirthProbability = 0.35;
inline constexpr double kDeathProbability = 0.35;

/// min(1, λ*(k, x)·V / (n + 1)) for a configuration of n particles.
double birth_acceptance(double lambda_star, double volume, std::size_t n);
/// min(1, n / (λ*(k, x∖k)·V)) for a configuration of n particles.
double death_acceptance(double lambda_star, double volume, std::size_t n);
/// min(1, λ*(new, x∖old) / λ*(old, x∖old)).
double move_acceptance(double lambda_new, double lambda_old);

void birth_step(ChainState& state);
void death_step(ChainState& state);
void move_step(ChainState& state);
/// max(n, 1) proposals, each birth/death/move with probability .35/.35/.30.
void sweep(ChainState& state);

/// Replaces the configuration by a Poisson(τ·Leb(domain)) sample of
/// independent reference segments.
void initialize_poisson(ChainState& state);

struct ChainResult {
  Configuration config;
  ProposalStats stats;
};

/// Called after every sweep past burn-in with the sweep index.
using SweepObserver = std::function<void(const ChainState&, std::size_t)>;

ChainResult run_chain(const ModelParams& params, const Domain& domain,
                      const ChainSettings& settings, std::uint64_t seed,
                      SamplerOptions options = {}, const SweepObserver& observer = {});

/// Runs the chain inside an existing state (used when the caller needs the
/// generator afterwards).
void advance_chain(ChainState& state, const ChainSettings& settings,
                   const SweepObserver& observer = {});

// ---------------------------------------------------------------------------
// GNZ diagnostic

/// Built-in test functions, each supported on the segments hitting a window W:
/// f1 = 1{K∩W≠∅}, f2 = l(K)·1{K∩W≠∅}, f3 = 1{K∩W≠∅}·N_x(K).
enum class TestFunction { f1, f2, f3 };

std::string_view test_function_id(TestFunction f);

struct GnzSettings {
  ChainSettings chain;
  std::size_t replicates = 500;
  /// Reference points per replicate for the right-hand integral.
  std::size_t mc_points = 20000;
  unsigned parallelism = 0;
  SamplerOptions sampler;
};

struct GnzCheckReport {
  std::string_view f_id;
  double lhs = 0.0;
  double lhs_se = 0.0;
  double rhs = 0.0;
  double rhs_se = 0.0;
  /// SE of the per-replicate differences; both sides share each chain, so
  /// this accounts for their covariance.
  double diff_se = 0.0;
  std::size_t n_samples = 0;

  /// (lhs − rhs) / diff_se.
  double z_score() const;
  /// |z| <= 3; a larger discrepancy signals sampler bias.
  bool pass() const;
};

/// Estimates both sides of the GNZ equation,
///   E Σ_{K∈x} f(K, x∖K)  =  E ∫ f(K, x) λ*(K, x) λ(dK),
/// over independent chains. The integral is estimated by Monte Carlo with
/// centres uniform on W ⊕ B(0, R) (f vanishes elsewhere) restricted to the
/// domain.
std::vector<GnzCheckReport> gnz_check_all(const ModelParams& params,
                                          const Domain& domain,
                                          const Window& test_window,
                                          const GnzSettings& settings,
                                          std::uint64_t seed);

GnzCheckReport gnz_check(const ModelParams& params, const Domain& domain,
                         TestFunction f, const Window& test_window,
                         const GnzSettings& settings, std::uint64_t seed);

struct MeanEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

MeanEstimate mean_and_se(const std::vector<double>& values);

/// E[λ*(K, μ)] for reference segments K with centre uniform in `window`,
/// averaged over independent chains.
MeanEstimate mean_conditional_intensity(const ModelParams& params,
                                        const Domain& domain, const Window& window,
                                        const GnzSettings& settings,
                                        std::uint64_t seed);

}  // namespace gsp
