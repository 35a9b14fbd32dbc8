#include "gsp/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gsp {

namespace {
constexpr double kPi = std::numbers::pi;
}

double lemma_constant(const ModelParams& p, double a, LemmaConstant kind) {
  if (kind == LemmaConstant::segment) {
    const double mean_length = p.length.moment(1.0);
    return a * (2.0 / kPi) * mean_length * mean_length;
  }
  const double diameter = 2.0 * p.R;
  return a * diameter * diameter * kPi;
}

Bracket intensity_bracket(const ModelParams& p, double a, LemmaConstant kind) {
  const double b = lemma_constant(p, a, kind);
  return {p.tau * (1.0 - p.beta * b), p.tau};
}

double norm(const Functional& f, double alpha, const LengthLaw& law) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("norm order must be >= 1");
  const double leb = f.window.area();
  const double perim = f.window.perimeter();
  double integral = 0.0;
  if (f.kind == FunctionalKind::count) {
    integral = leb + perim / kPi * law.moment(1.0);
  } else {
    integral = leb * law.moment(alpha) + perim / kPi * law.moment(alpha + 1.0);
  }
  return std::pow(integral, 1.0 / alpha) / f.normalizer();
}

NormTable norm_table(const Functional& f, const LengthLaw& law) {
  return {norm(f, 1.0, law), norm(f, 2.0, law), norm(f, 3.0, law)};
}

BoundReport wasserstein_bound(const NormTable& norms, double tau, double beta,
                            double b, double a) {
  const double c = norms.l2 * norms.l2;
  const double damp = std::abs(1.0 - std::exp(-beta * a));
  const double root = std::sqrt(2.0 / kPi);

  BoundReport r;
  r.b_const = b;
  r.radicand = 1.0 - 2.0 * tau * (1.0 - beta * b) * c + tau * tau * c * c;
  // Equal to (1 − τc)² + 2τβbc ≥ 0; clamp rounding noise only.
  r.terms[0] = root * std::sqrt(std::max(r.radicand, 0.0));
  r.terms[1] = tau * norms.l3 * norms.l3 * norms.l3;
  r.terms[2] = root * tau * tau * norms.l1 * norms.l1 * damp;
  r.terms[3] = 2.0 * tau * tau * c * norms.l1 * damp;
  r.terms[4] = tau * tau * tau * norms.l1 * norms.l1 * norms.l1 * damp * damp;
  r.total = r.terms[0] + r.terms[1] + r.terms[2] + r.terms[3] + r.terms[4];
  return r;
}

BoundReport wasserstein_bound(const NormTable& norms, const ModelParams& p, double a,
                            LemmaConstant kind) {
  return wasserstein_bound(norms, p.tau, p.beta, lemma_constant(p, a, kind), a);
}

SequencePoint evaluate_sequence_at(const SequenceSpec& spec, std::size_t n) {
  const double t = static_cast<double>(n);
  SequencePoint pt;
  pt.n = n;
  pt.params.tau = spec.tau(t);
  pt.params.beta = spec.beta(t);
  pt.params.R = spec.R;
  pt.params.length = spec.length;
  pt.params.validate();
  const double size = spec.window_size(t);
  pt.window = spec.shape == Shape::square ? Window::square(size) : Window::disk(size);
  const Functional f = spec.kind == FunctionalKind::count
                           ? Functional::phi(pt.window, pt.params.tau)
                           : Functional::psi(pt.window, pt.params.tau, spec.length);
  pt.norms = norm_table(f, spec.length);
  pt.bound = wasserstein_bound(pt.norms, pt.params, spec.potential_bound, spec.lemma);
  return pt;
}

std::vector<SequencePoint> bound_sequence(const SequenceSpec& spec,
                                              std::size_t n_max) {
  std::vector<SequencePoint> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out.push_back(evaluate_sequence_at(spec, n));
  return out;
}

}  // namespace gsp
