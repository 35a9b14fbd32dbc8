#include "gsp/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mc_batch.hpp"

namespace gsp {

void ChainSettings::validate() const {
  if (sweeps <= burn_in) throw std::invalid_argument("sweeps must exceed burn_in");
}

ChainState::ChainState(const ModelParams& p, const Domain& domain,
                       std::uint64_t seed, SamplerOptions opts)
    : config(domain, p.interaction_range()),
      params(p),
      rng(seed),
      options(opts),
      volume(domain.area()) {
  params.validate();
}

double birth_acceptance(double lambda_star, double volume, std::size_t n) {
  return std::min(1.0, lambda_star * volume / static_cast<double>(n + 1));
}

double death_acceptance(double lambda_star, double volume, std::size_t n) {
  return std::min(1.0, static_cast<double>(n) / (lambda_star * volume));
}

double move_acceptance(double lambda_new, double lambda_old) {
  return std::min(1.0, lambda_new / lambda_old);
}

namespace {

bool accept(double prob, Rng& rng) {
  if (prob >= 1.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob;
}

std::size_t pick_index(std::size_t n, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

void birth_step(ChainState& s) {
  ++s.step_count;
  ++s.stats.birth.proposed;
  const Segment k = sample_reference_segment(s.params, s.config.domain(), s.rng);
  const double lambda = conditional_intensity(k, s.config, s.params);
  if (accept(birth_acceptance(lambda, s.volume, s.config.size()), s.rng)) {
    s.config.insert(k);
    ++s.stats.birth.accepted;
  }
}

void death_step(ChainState& s) {
  const std::size_t n = s.config.size();
  if (n == 0) return;
  ++s.step_count;
  ++s.stats.death.proposed;
  const std::size_t i = pick_index(n, s.rng);
  bool remove = true;
  if (!s.options.sabotage_death) {
    const double lambda = s.params.beta == 0.0
                              ? s.params.tau
                              : intensity_from_count(s.config.crossings_of(i), s.params);
    remove = accept(death_acceptance(lambda, s.volume, n), s.rng);
  }
  if (remove) {
    s.config.remove_at(i);
    ++s.stats.death.accepted;
  }
}

void move_step(ChainState& s) {
  const std::size_t n = s.config.size();
  if (n == 0) return;
  ++s.step_count;
  ++s.stats.move.proposed;
  const std::size_t i = pick_index(n, s.rng);
  const Segment fresh = sample_reference_segment(s.params, s.config.domain(), s.rng);
  double prob = 1.0;
  if (s.params.beta != 0.0) {
    const std::size_t h_old = s.config.crossings_of(i);
    const std::size_t h_new =
        s.config.crossings(fresh) - static_cast<std::size_t>(pair_potential(fresh, s.config[i]));
    prob = move_acceptance(intensity_from_count(h_new, s.params),
                           intensity_from_count(h_old, s.params));
  }
  if (accept(prob, s.rng)) {
    s.config.replace(i, fresh);
    ++s.stats.move.accepted;
  }
}

void sweep(ChainState& s) {
  const std::size_t proposals = std::max<std::size_t>(s.config.size(), 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t j = 0; j < proposals; ++j) {
    const double r = u(s.rng);
    if (r < kBirthProbability) {
      birth_step(s);
    } else if (r < kBirthProbability + kDeathProbability) {
      death_step(s);
    } else {
      move_step(s);
    }
  }
}

void initialize_poisson(ChainState& s) {
  s.config = Configuration(s.config.domain(), s.params.interaction_range());
  const double mean = s.params.tau * s.volume;
  const auto n = std::poisson_distribution<std::size_t>(mean)(s.rng);
  for (std::size_t i = 0; i < n; ++i) {
    s.config.insert(sample_reference_segment(s.params, s.config.domain(), s.rng));
  }
}

void advance_chain(ChainState& state, const ChainSettings& settings,
                   const SweepObserver& observer) {
  settings.validate();
  if (settings.init == InitialState::poisson) initialize_poisson(state);
  for (std::size_t k = 0; k < settings.sweeps; ++k) {
    sweep(state);
    if (observer && k >= settings.burn_in) observer(state, k);
  }
}

ChainResult run_chain(const ModelParams& params, const Domain& domain,
                      const ChainSettings& settings, std::uint64_t seed,
                      SamplerOptions options, const SweepObserver& observer) {
  ChainState state(params, domain, seed, options);
  advance_chain(state, settings, observer);
  return {std::move(state.config), state.stats};
}

// ---------------------------------------------------------------------------

std::string_view test_function_id(TestFunction f) {
  switch (f) {
    case TestFunction::f1: return "f1";
    case TestFunction::f2: return "f2";
    case TestFunction::f3: return "f3";
  }
  return "?";
}

double GnzCheckReport::z_score() const {
  const double se = diff_se;
  const double diff = lhs - rhs;
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  return diff / se;
}

bool GnzCheckReport::pass() const { return std::abs(z_score()) <= 3.0; }

MeanEstimate mean_and_se(const std::vector<double>& values) {
  MeanEstimate e;
  e.n = values.size();
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return e;
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  const double var = ss / static_cast<double>(values.size() - 1);
  e.se = std::sqrt(var / static_cast<double>(values.size()));
  return e;
}

std::vector<GnzCheckReport> gnz_check_all(const ModelParams& params,
                                          const Domain& domain,
                                          const Window& test_window,
                                          const GnzSettings& settings,
                                          std::uint64_t seed) {
  params.validate();
  settings.chain.validate();
  if (settings.replicates < 2) throw std::invalid_argument("gnz_check needs at least 2 replicates");
  if (settings.mc_points == 0) throw std::invalid_argument("gnz_check needs mc_points > 0");

  constexpr std::size_t kF = 3;
  const std::size_t reps = settings.replicates;
  std::vector<std::array<double, kF>> lhs(reps), rhs(reps);
  const Domain support{test_window, params.R};
  const double support_area = support.area();

  parallel_for(reps, settings.parallelism, [&](std::size_t r) {
    ChainState state(params, domain, replicate_seed(seed, r), settings.sampler);
    advance_chain(state, settings.chain);
    const Configuration& x = state.config;

    std::array<double, kF> left{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!segment_hits_window(x[i], test_window)) continue;
      left[0] += 1.0;
      left[1] += x[i].length();
      left[2] += static_cast<double>(x.crossings_of(i));
    }

    std::array<double, kF> right{};
    const FrozenGrid grid(x);
    detail::SegmentBatch batch;
    std::size_t done = 0;
    while (done < settings.mc_points) {
      const std::size_t m = std::min(detail::kBatchSize, settings.mc_points - done);
      batch.fill(params, support, m, state.rng);
      batch.mark_hits(test_window);
      for (std::size_t j = 0; j < m; ++j) {
        if (!batch.hit[j]) continue;
        const Segment& k = batch.segments[j];
        if (!domain.contains(k.center())) continue;
        const std::size_t count = grid.crossings(k);
        const double lambda = intensity_from_count(count, params);
        right[0] += lambda;
        right[1] += k.length() * lambda;
        right[2] += static_cast<double>(count) * lambda;
      }
      done += m;
    }
    for (auto& v : right) v *= support_area / static_cast<double>(settings.mc_points);
    lhs[r] = left;
    rhs[r] = right;
  });

  std::vector<GnzCheckReport> out;
  for (std::size_t f = 0; f < kF; ++f) {
    std::vector<double> l(reps), rr(reps), d(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      l[r] = lhs[r][f];
      rr[r] = rhs[r][f];
      d[r] = l[r] - rr[r];
    }
    const MeanEstimate el = mean_and_se(l);
    const MeanEstimate er = mean_and_se(rr);
    out.push_back({test_function_id(static_cast<TestFunction>(f)), el.mean, el.se,
                   er.mean, er.se, mean_and_se(d).se, reps});
  }
  return out;
}

GnzCheckReport gnz_check(const ModelParams& params, const Domain& domain,
                         TestFunction f, const Window& test_window,
                         const GnzSettings& settings, std::uint64_t seed) {
  return gnz_check_all(params, domain, test_window, settings, seed)
      [static_cast<std::size_t>(f)];
}

MeanEstimate mean_conditional_intensity(const ModelParams& params,
                                        const Domain& domain, const Window& window,
                                        const GnzSettings& settings,
                                        std::uint64_t seed) {
  params.validate();
  settings.chain.validate();
  std::vector<double> per_rep(settings.replicates);
  const Domain centres{window, 0.0};
  parallel_for(settings.replicates, settings.parallelism, [&](std::size_t r) {
    ChainState state(params, domain, replicate_seed(seed, r), settings.sampler);
    advance_chain(state, settings.chain);
    double sum = 0.0;
    for (std::size_t j = 0; j < settings.mc_points; ++j) {
      const Segment k = sample_reference_segment(params, centres, state.rng);
      sum += conditional_intensity(k, state.config, params);
    }
    per_rep[r] = sum / static_cast<double>(settings.mc_points);
  });
  return mean_and_se(per_rep);
}

}  // namespace gsp
