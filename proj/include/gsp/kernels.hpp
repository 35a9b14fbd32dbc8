#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "gsp/geometry.hpp"

// Batched geometric predicates over structure-of-arrays segment storage.
// Every variant must agree bit for bit with the scalar reference.
namespace gsp::kernels {

struct SegmentColumns {
  const double* x0 = nullptr;
  const double* y0 = nullptr;
  const double* x1 = nullptr;
  const double* y1 = nullptr;
  std::size_t size = 0;
};

struct Query {
  double x0, y0, x1, y1;
};

inline Query query_of(const Segment& s) {
  return {s.p0().x, s.p0().y, s.p1().x, s.p1().y};
}

struct WindowDesc {
  bool disk = false;
  double a = 0.0;  // box: lox   disk: cx
  double b = 0.0;  // box: loy   disk: cy
  double c = 0.0;  // box: hix   disk: r
  double d = 0.0;  // box: hiy
};

WindowDesc describe(const Window& w);

/// Number of column segments intersecting the query (closed segments).
using CountCrossingsFn = std::size_t (*)(Query, SegmentColumns);
/// Writes 1/0 per column segment hitting the window; returns the hit count.
using WindowHitsFn = std::size_t (*)(const WindowDesc&, SegmentColumns,
                                     std::uint8_t* out);

struct KernelTable {
  std::string_view name;
  CountCrossingsFn count_crossings;
  WindowHitsFn window_hits;
};

const KernelTable& scalar();
/// nullptr when the binary was built without AVX2 or the CPU lacks it.
const KernelTable* avx2();
/// Chosen once at first use: AVX2 when available unless the environment
/// variable GSP_KERNELS=scalar is set.
const KernelTable& active();

}  // namespace gsp::kernels
