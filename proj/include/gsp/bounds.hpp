#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "gsp/functionals.hpp"
#include "gsp/model.hpp"

namespace gsp {

/// Which constant b is used in τ(1 − βb) ≤ E[λ*(K, μ)] ≤ τ.
enum class LemmaConstant {
  /// a (2R)^d ω_d with d = 2: every partner lies in a ball of radius 2R.
  coarse,
  /// a E[Leb(K ⊕ Ľ)] for independent uniform-direction segments,
  /// a (2/π) (E_L l)²; tighter for short segments.
  segment,
};

double lemma_constant(const ModelParams& p, double a = 1.0,
                      LemmaConstant kind = LemmaConstant::coarse);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_negative() const { return lower < 0.0; }
};

/// (τ(1 − βb), τ).
Bracket intensity_bracket(const ModelParams& p, double a = 1.0,
                        LemmaConstant kind = LemmaConstant::coarse);

/// ‖f‖_{L^α(λ)} in closed form from the Steiner formula:
///   ψ: (τ Leb E l²)^{-1/2} (Leb E l^α + U/π E l^{α+1})^{1/α}
///   φ: (τ Leb)^{-1/2} (Leb + U/π E l)^{1/α}
/// Throws std::invalid_argument for α < 1.
double norm(const Functional& f, double alpha, const LengthLaw& law);

struct NormTable {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
};

NormTable norm_table(const Functional& f, const LengthLaw& law);

struct BoundReport {
  /// Summands in display order: the square-root variance term, the L³ term,
  /// then the three interaction terms carrying |1 − e^{−βa}|.
  std::array<double, 5> terms{};
  double total = 0.0;
  double radicand = 0.0;
  double b_const = 0.0;
};

/// Five-term Wasserstein bound for the innovation of a configuration-free
/// functional with the given norms.
BoundReport wasserstein_bound(const NormTable& norms, double tau, double beta,
                            double b, double a = 1.0);
BoundReport wasserstein_bound(const NormTable& norms, const ModelParams& p,
                            double a = 1.0, LemmaConstant kind = LemmaConstant::coarse);

/// Parameters (τ_n, β_n, W_n) of a sequence of segment processes.
struct SequenceSpec {
  std::function<double(double)> tau;
  std::function<double(double)> beta;
  /// Side (square) or radius (disk) of W_n.
  std::function<double(double)> window_size;
  Shape shape = Shape::square;
  LengthLaw length = LengthLaw::fixed(1.0);
  double R = 0.5;
  FunctionalKind kind = FunctionalKind::length_weighted;
  double potential_bound = 1.0;
  LemmaConstant lemma = LemmaConstant::coarse;
};

struct SequencePoint {
  std::size_t n = 0;
  ModelParams params;
  Window window;
  NormTable norms;
  BoundReport bound;
};

SequencePoint evaluate_sequence_at(const SequenceSpec& spec, std::size_t n);

/// Bound reports for n = 1..n_max.
std::vector<SequencePoint> bound_sequence(const SequenceSpec& spec,
                                              std::size_t n_max);

}  // namespace gsp
