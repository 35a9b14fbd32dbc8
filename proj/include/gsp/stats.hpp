#pragma once

#include <cstddef>
#include <span>

namespace gsp {

double normal_pdf(double t);
/// Φ(t), via the complementary error function.
double normal_cdf(double t);
/// Φ^{-1}(p) for p in (0, 1).
double normal_quantile(double p);

/// W₁(F_m, Φ) = ∫ |F_m(t) − Φ(t)| dt, evaluated exactly piece by piece.
/// Throws std::invalid_argument on an empty sample or non-finite values.
double w1_to_normal(std::span<const double> sample);

/// sup_t |F_m(t) − Φ(t)|.
double ks_to_normal(std::span<const double> sample);

struct DistanceReport {
  double w1 = 0.0;
  double ks = 0.0;
  std::size_t sample_size = 0;
  double sample_mean = 0.0;
  double sample_sd = 0.0;
};

DistanceReport distance_to_normal(std::span<const double> sample);

}  // namespace gsp
