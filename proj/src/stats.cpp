#include "gsp/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gsp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::vector<double> sorted_checked(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("sample must be nonempty");
  std::vector<double> v(sample.begin(), sample.end());
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("sample contains a non-finite value");
  }
  std::sort(v.begin(), v.end());
  return v;
}

// G(t) = ∫_{-∞}^t Φ = tΦ(t) + φ(t).
double cdf_antiderivative(double t) { return t * normal_cdf(t) + normal_pdf(t); }

// ∫_a^b (Φ(t) − c) dt.
double excess(double a, double b, double c) {
  return cdf_antiderivative(b) - cdf_antiderivative(a) - c * (b - a);
}

}  // namespace

double normal_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t * kInvSqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile level must lie in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double w1_to_normal(std::span<const double> sample) {
  const std::vector<double> x = sorted_checked(sample);
  const std::size_t m = x.size();
  const double inv_m = 1.0 / static_cast<double>(m);

  // Left tail: F_m = 0 below the minimum.
  double total = cdf_antiderivative(x.front());
  // Right tail: ∫_{x_max}^∞ (1 − Φ) = φ(x) − x(1 − Φ(x)).
  total += normal_pdf(x.back()) - x.back() * normal_cdf(-x.back());

  for (std::size_t i = 1; i < m; ++i) {
    const double a = x[i - 1];
    const double b = x[i];
    if (b <= a) continue;
    const double c = static_cast<double>(i) * inv_m;
    const double q = normal_quantile(c);
    if (q <= a) {
      total += excess(a, b, c);
    } else if (q >= b) {
      total -= excess(a, b, c);
    } else {
      total += -excess(a, q, c) + excess(q, b, c);
    }
  }
  return total;
}

double ks_to_normal(std::span<const double> sample) {
  const std::vector<double> x = sorted_checked(sample);
  const double m = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double phi = normal_cdf(x[i]);
    d = std::max(d, static_cast<double>(i + 1) / m - phi);
    d = std::max(d, phi - static_cast<double>(i) / m);
  }
  return std::clamp(d, 0.0, 1.0);
}

DistanceReport distance_to_normal(std::span<const double> sample) {
  DistanceReport r;
  r.w1 = w1_to_normal(sample);
  r.ks = ks_to_normal(sample);
  r.sample_size = sample.size();
  double sum = 0.0;
  for (double v : sample) sum += v;
  r.sample_mean = sum / static_cast<double>(sample.size());
  double ss = 0.0;
  for (double v : sample) ss += (v - r.sample_mean) * (v - r.sample_mean);
  r.sample_sd = sample.size() > 1 ? std::sqrt(ss / static_cast<double>(sample.size() - 1)) : 0.0;
  return r;
}

}  // namespace gsp
