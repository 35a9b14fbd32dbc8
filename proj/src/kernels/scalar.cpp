#include "gsp/detail/predicates.hpp"
#include "gsp/kernels.hpp"

namespace gsp::kernels {

WindowDesc describe(const Window& w) {
  if (w.shape == Shape::disk) return {true, w.center.x, w.center.y, w.size, 0.0};
  const double h = 0.5 * w.size;
  return {false, w.center.x - h, w.center.y - h, w.center.x + h, w.center.y + h};
}

namespace {

std::size_t count_crossings_scalar(Query q, SegmentColumns cols) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < cols.size; ++i) {
    n += detail::segments_cross(q.x0, q.y0, q.x1, q.y1, cols.x0[i], cols.y0[i],
                                cols.x1[i], cols.y1[i]);
  }
  return n;
}

std::size_t window_hits_scalar(const WindowDesc& w, SegmentColumns cols,
                               std::uint8_t* out) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < cols.size; ++i) {
    const bool hit =
        w.disk ? detail::segment_hits_disk(cols.x0[i], cols.y0[i], cols.x1[i],
                                           cols.y1[i], w.a, w.b, w.c)
               : detail::segment_hits_box(cols.x0[i], cols.y0[i], cols.x1[i],
                                          cols.y1[i], w.a, w.b, w.c, w.d);
    out[i] = hit ? 1 : 0;
    n += hit;
  }
  return n;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar", &count_crossings_scalar,
                                 &window_hits_scalar};
  return table;
}

}  // namespace gsp::kernels
