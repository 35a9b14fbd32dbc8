#pragma once

#include <cstdint>
#include <vector>

#include "gsp/kernels.hpp"
#include "gsp/model.hpp"

namespace gsp::detail {

/// A block of reference segments in column layout for the batched kernels.
struct SegmentBatch {
  std::vector<Segment> segments;
  std::vector<double> x0, y0, x1, y1;
  std::vector<std::uint8_t> hit;

  template <class Rng>
  void fill(const ModelParams& p, const Domain& region, std::size_t count, Rng& rng) {
    segments.clear();
    x0.clear();
    y0.clear();
    x1.clear();
    y1.clear();
    for (std::size_t i = 0; i < count; ++i) {
      const Segment s = sample_reference_segment(p, region, rng);
      segments.push_back(s);
      x0.push_back(s.p0().x);
      y0.push_back(s.p0().y);
      x1.push_back(s.p1().x);
      y1.push_back(s.p1().y);
    }
    hit.assign(count, 0);
  }

  std::size_t mark_hits(const Window& w) {
    return kernels::active().window_hits(
        kernels::describe(w), {x0.data(), y0.data(), x1.data(), y1.data(), segments.size()},
        hit.data());
  }
};

inline constexpr std::size_t kBatchSize = 1024;

}  // namespace gsp::detail
