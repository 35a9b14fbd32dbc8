#include "gsp/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gsp/bounds.hpp"
#include "mc_batch.hpp"

namespace gsp {

Functional Functional::phi(const Window& w, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  return {FunctionalKind::count, w, tau, 1.0};
}

Functional Functional::psi(const Window& w, double tau, const LengthLaw& law) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  return {FunctionalKind::length_weighted, w, tau, law.moment(2.0)};
}

double Functional::normalizer() const {
  return std::sqrt(tau * window.area() * second_length_moment);
}

std::string_view Functional::id() const {
  return kind == FunctionalKind::count ? "phi" : "psi";
}

namespace {

// The length factor is normalised on its own so that fixed lengths give
// l / sqrt(l * l) == 1 exactly and ψ coincides with φ bit for bit.
double evaluate_hit(const Functional& f, double length) {
  const double shape =
      f.kind == FunctionalKind::count ? 1.0 : length / std::sqrt(f.second_length_moment);
  return shape / std::sqrt(f.tau * f.window.area());
}

}  // namespace

double evaluate(const Functional& f, const Segment& k) {
  if (!segment_hits_window(k, f.window)) return 0.0;
  return evaluate_hit(f, k.length());
}

bool compensator_support_inside(const Window& w, double R, const Domain& domain) {
  return w.inside(domain.window) && R <= domain.margin;
}

std::vector<InnovationSample> innovations(std::span<const Functional> fs,
                                          const Configuration& x,
                                          const ModelParams& p,
                                          const CompensatorSettings& settings,
                                          Rng& rng) {
  if (fs.empty()) return {};
  const Window& w = fs.front().window;
  for (const Functional& f : fs) {
    if (!(f.window == w)) throw std::invalid_argument("functionals must share a window");
  }
  if (!compensator_support_inside(w, p.R, x.domain())) {
    throw std::domain_error(
        "window dilated by R is not inside the simulation domain; increase the margin");
  }
  if (settings.initial_points == 0) throw std::invalid_argument("mc_points must be positive");

  const std::size_t nf = fs.size();
  std::vector<InnovationSample> out(nf);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!segment_hits_window(x[i], w)) continue;
    for (std::size_t k = 0; k < nf; ++k) out[k].sum_part += evaluate_hit(fs[k], x[i].length());
  }

  const Domain region{w, p.R};
  const double area = region.area();
  const bool cv = settings.method == CompensatorMethod::control_variate;
  std::vector<double> sum(nf, 0.0), sum_sq(nf, 0.0), base(nf, 0.0);
  if (cv) {
    for (std::size_t k = 0; k < nf; ++k) base[k] = p.tau * norm(fs[k], 1.0, p.length);
  }

  const FrozenGrid grid(x);
  detail::SegmentBatch batch;
  std::size_t total = 0;
  auto draw = [&](std::size_t count) {
    std::size_t done = 0;
    while (done < count) {
      const std::size_t m = std::min(detail::kBatchSize, count - done);
      batch.fill(p, region, m, rng);
      batch.mark_hits(w);
      for (std::size_t j = 0; j < m; ++j) {
        if (!batch.hit[j]) continue;
        const Segment& k = batch.segments[j];
        const double lambda =
            p.beta == 0.0 ? p.tau : intensity_from_count(grid.crossings(k), p);
        const double weight = cv ? lambda - p.tau : lambda;
        if (weight == 0.0) continue;
        for (std::size_t q = 0; q < nf; ++q) {
          const double g = area * evaluate_hit(fs[q], k.length()) * weight;
          sum[q] += g;
          sum_sq[q] += g * g;
        }
      }
      done += m;
    }
    total += count;
  };
  auto standard_errors = [&] {
    std::vector<double> se(nf);
    const double m = static_cast<double>(total);
    for (std::size_t q = 0; q < nf; ++q) {
      const double mean = sum[q] / m;
      const double var = total > 1 ? std::max(0.0, (sum_sq[q] - m * mean * mean) / (m - 1.0)) : 0.0;
      se[q] = std::sqrt(var / m);
    }
    return se;
  };

  draw(settings.initial_points);
  std::vector<double> se = standard_errors();
  while (settings.target_se > 0.0 &&
         *std::max_element(se.begin(), se.end()) >= settings.target_se &&
         total < settings.max_points) {
    draw(std::min(total, settings.max_points - total));
    se = standard_errors();
  }

  for (std::size_t q = 0; q < nf; ++q) {
    out[q].compensator = base[q] + sum[q] / static_cast<double>(total);
    out[q].compensator_se = se[q];
    out[q].value = out[q].sum_part - out[q].compensator;
    out[q].mc_points = total;
  }
  return out;
}

InnovationSample innovation(const Functional& f, const Configuration& x,
                            const ModelParams& p, const CompensatorSettings& settings,
                            Rng& rng) {
  return innovations(std::span<const Functional>(&f, 1), x, p, settings, rng).front();
}

InnovationSet innovation_sample_set(std::span<const Functional> fs,
                                    const ModelParams& p, const Domain& domain,
                                    std::size_t replicates,
                                    const ChainSettings& chain,
                                    const CompensatorSettings& compensator,
                                    std::uint64_t seed, unsigned parallelism) {
  if (replicates < 100) throw std::invalid_argument("innovation_sample_set needs at least 100 replicates");
  if (!fs.empty() && !compensator_support_inside(fs.front().window, p.R, domain)) {
    throw std::domain_error(
        "window dilated by R is not inside the simulation domain; increase the margin");
  }
  chain.validate();
  InnovationSet set;
  set.values.assign(fs.size(), std::vector<double>(replicates));
  set.compensator_se.assign(fs.size(), std::vector<double>(replicates));
  parallel_for(replicates, parallelism, [&](std::size_t r) {
    ChainState state(p, domain, replicate_seed(seed, r));
    advance_chain(state, chain);
    const auto samples = innovations(fs, state.config, p, compensator, state.rng);
    for (std::size_t q = 0; q < fs.size(); ++q) {
      set.values[q][r] = samples[q].value;
      set.compensator_se[q][r] = samples[q].compensator_se;
    }
  });
  return set;
}

}  // namespace gsp
