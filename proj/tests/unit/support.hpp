#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gsp/geometry.hpp"
#include "gsp/model.hpp"

namespace gsp::test {

inline Segment random_segment(std::mt19937_64& rng, double extent, double max_len) {
  std::uniform_real_distribution<double> c(-extent, extent);
  std::uniform_real_distribution<double> a(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> l(0.05 * max_len, max_len);
  return Segment::make({c(rng), c(rng)}, a(rng), l(rng));
}

inline Configuration random_configuration(std::mt19937_64& rng, const Domain& d,
                                          double range, std::size_t n, double max_len) {
  Configuration x(d, range);
  std::uniform_real_distribution<double> a(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> l(0.05 * max_len, max_len);
  while (x.size() < n) x.insert(Segment::make(d.sample_uniform(rng), a(rng), l(rng)));
  return x;
}

inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max({1e-300, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace gsp::test
