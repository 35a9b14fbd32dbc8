// AVX2 variants of the batched predicates, four segments per iteration.
// Each lane performs exactly the scalar operation sequence from
// gsp/detail/predicates.hpp (no FMA), so results are identical.

#include <immintrin.h>

#include <bit>

#include "gsp/detail/predicates.hpp"
#include "gsp/kernels.hpp"

namespace gsp::kernels {

namespace {

inline __m256d sign_pos(__m256d v, __m256d eps) {
  return _mm256_cmp_pd(v, eps, _CMP_GT_OQ);
}
inline __m256d sign_neg(__m256d v, __m256d neg_eps) {
  return _mm256_cmp_pd(v, neg_eps, _CMP_LT_OQ);
}

inline __m256d in_range(__m256d lo, __m256d hi, __m256d r) {
  return _mm256_and_pd(_mm256_cmp_pd(lo, r, _CMP_LE_OQ),
                       _mm256_cmp_pd(r, hi, _CMP_LE_OQ));
}

struct CrossQuery {
  __m256d eps, neg_eps, ones;
  __m256d ax0, ay0, ax1, ay1, adx, ady, a_lox, a_hix, a_loy, a_hiy;
};

CrossQuery broadcast(Query q) {
  return {_mm256_set1_pd(detail::kCollinearEps),
          _mm256_set1_pd(-detail::kCollinearEps),
          _mm256_castsi256_pd(_mm256_set1_epi64x(-1)),
          _mm256_set1_pd(q.x0),
          _mm256_set1_pd(q.y0),
          _mm256_set1_pd(q.x1),
          _mm256_set1_pd(q.y1),
          _mm256_set1_pd(q.x1 - q.x0),
          _mm256_set1_pd(q.y1 - q.y0),
          _mm256_set1_pd(q.x0 < q.x1 ? q.x0 : q.x1),
          _mm256_set1_pd(q.x0 < q.x1 ? q.x1 : q.x0),
          _mm256_set1_pd(q.y0 < q.y1 ? q.y0 : q.y1),
          _mm256_set1_pd(q.y0 < q.y1 ? q.y1 : q.y0)};
}

inline __m256d crossing_lanes(const CrossQuery& c, __m256d bx0, __m256d by0, __m256d bx1,
                              __m256d by1) {
  const __m256d eps = c.eps, neg_eps = c.neg_eps, ones = c.ones;
  const __m256d ax0 = c.ax0, ay0 = c.ay0, ax1 = c.ax1, ay1 = c.ay1;
  const __m256d adx = c.adx, ady = c.ady;
  const __m256d a_lox = c.a_lox, a_hix = c.a_hix, a_loy = c.a_loy, a_hiy = c.a_hiy;
  const __m256d o1 = _mm256_sub_pd(
      _mm256_mul_pd(adx, _mm256_sub_pd(by0, ay0)),
      _mm256_mul_pd(ady, _mm256_sub_pd(bx0, ax0)));
  const __m256d o2 = _mm256_sub_pd(
      _mm256_mul_pd(adx, _mm256_sub_pd(by1, ay0)),
      _mm256_mul_pd(ady, _mm256_sub_pd(bx1, ax0)));
  const __m256d bdx = _mm256_sub_pd(bx1, bx0);
  const __m256d bdy = _mm256_sub_pd(by1, by0);
  const __m256d o3 = _mm256_sub_pd(
      _mm256_mul_pd(bdx, _mm256_sub_pd(ay0, by0)),
      _mm256_mul_pd(bdy, _mm256_sub_pd(ax0, bx0)));
  const __m256d o4 = _mm256_sub_pd(
      _mm256_mul_pd(bdx, _mm256_sub_pd(ay1, by0)),
      _mm256_mul_pd(bdy, _mm256_sub_pd(ax1, bx0)));

  const __m256d p1 = sign_pos(o1, eps), n1 = sign_neg(o1, neg_eps);
  const __m256d p2 = sign_pos(o2, eps), n2 = sign_neg(o2, neg_eps);
  const __m256d p3 = sign_pos(o3, eps), n3 = sign_neg(o3, neg_eps);
  const __m256d p4 = sign_pos(o4, eps), n4 = sign_neg(o4, neg_eps);

  const __m256d straddle_a =
      _mm256_or_pd(_mm256_and_pd(p1, n2), _mm256_and_pd(n1, p2));
  const __m256d straddle_b =
      _mm256_or_pd(_mm256_and_pd(p3, n4), _mm256_and_pd(n3, p4));
__m256d hit = _mm256_and_pd(straddle_a, straddle_b);

  // Collinear touching cases; andnot(x, all-ones) == !x.
  const __m256d z1 = _mm256_andnot_pd(_mm256_or_pd(p1, n1), ones);
  const __m256d z2 = _mm256_andnot_pd(_mm256_or_pd(p2, n2), ones);
  const __m256d z3 = _mm256_andnot_pd(_mm256_or_pd(p3, n3), ones);
  const __m256d z4 = _mm256_andnot_pd(_mm256_or_pd(p4, n4), ones);

  const __m256d on1 = _mm256_and_pd(in_range(a_lox, a_hix, bx0),
                                    in_range(a_loy, a_hiy, by0));
  const __m256d on2 = _mm256_and_pd(in_range(a_lox, a_hix, bx1),
                                    in_range(a_loy, a_hiy, by1));
  const __m256d b_lox = _mm256_min_pd(bx0, bx1);
  const __m256d b_hix = _mm256_max_pd(bx0, bx1);
  const __m256d b_loy = _mm256_min_pd(by0, by1);
  const __m256d b_hiy = _mm256_max_pd(by0, by1);
  const __m256d on3 = _mm256_and_pd(in_range(b_lox, b_hix, ax0),
                                    in_range(b_loy, b_hiy, ay0));
  const __m256d on4 = _mm256_and_pd(in_range(b_lox, b_hix, ax1),
                                    in_range(b_loy, b_hiy, ay1));

  hit = _mm256_or_pd(hit, _mm256_and_pd(z1, on1));
  hit = _mm256_or_pd(hit, _mm256_and_pd(z2, on2));
  hit = _mm256_or_pd(hit, _mm256_and_pd(z3, on3));
  hit = _mm256_or_pd(hit, _mm256_and_pd(z4, on4));
  return hit;
}

std::size_t count_crossings_avx2(Query q, SegmentColumns cols) {
  const CrossQuery c = broadcast(q);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= cols.size; i += 4) {
    const __m256d hit =
        crossing_lanes(c, _mm256_loadu_pd(cols.x0 + i), _mm256_loadu_pd(cols.y0 + i),
                       _mm256_loadu_pd(cols.x1 + i), _mm256_loadu_pd(cols.y1 + i));
    count += static_cast<std::size_t>(
        std::popcount(static_cast<unsigned>(_mm256_movemask_pd(hit))));
  }
  if (i < cols.size) {
    // Masked tail: inactive lanes load 0.0 and are dropped from the count.
    const long long r = static_cast<long long>(cols.size - i);
    const __m256i lane = _mm256_set_epi64x(3, 2, 1, 0);
    const __m256i mask = _mm256_cmpgt_epi64(_mm256_set1_epi64x(r), lane);
    const __m256d hit = _mm256_and_pd(
        crossing_lanes(c, _mm256_maskload_pd(cols.x0 + i, mask), _mm256_maskload_pd(cols.y0 + i, mask),
                       _mm256_maskload_pd(cols.x1 + i, mask), _mm256_maskload_pd(cols.y1 + i, mask)),
        _mm256_castsi256_pd(mask));
    count += static_cast<std::size_t>(
        std::popcount(static_cast<unsigned>(_mm256_movemask_pd(hit))));
  }
  return count;
}

inline void store_mask(int bits, std::uint8_t* out) {
  out[0] = static_cast<std::uint8_t>(bits & 1);
  out[1] = static_cast<std::uint8_t>((bits >> 1) & 1);
  out[2] = static_cast<std::uint8_t>((bits >> 2) & 1);
  out[3] = static_cast<std::uint8_t>((bits >> 3) & 1);
}

std::size_t box_hits_avx2(const WindowDesc& w, SegmentColumns cols,
                          std::uint8_t* out) {
  const __m256d lox = _mm256_set1_pd(w.a);
  const __m256d loy = _mm256_set1_pd(w.b);
  const __m256d hix = _mm256_set1_pd(w.c);
  const __m256d hiy = _mm256_set1_pd(w.d);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= cols.size; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(cols.x0 + i);
    const __m256d y0 = _mm256_loadu_pd(cols.y0 + i);
    const __m256d x1 = _mm256_loadu_pd(cols.x1 + i);
    const __m256d y1 = _mm256_loadu_pd(cols.y1 + i);
    const __m256d sx_lo = _mm256_min_pd(x0, x1);
    const __m256d sx_hi = _mm256_max_pd(x0, x1);
    const __m256d sy_lo = _mm256_min_pd(y0, y1);
    const __m256d sy_hi = _mm256_max_pd(y0, y1);
    const __m256d reject = _mm256_or_pd(
        _mm256_or_pd(_mm256_cmp_pd(sx_hi, lox, _CMP_LT_OQ),
                     _mm256_cmp_pd(sx_lo, hix, _CMP_GT_OQ)),
        _mm256_or_pd(_mm256_cmp_pd(sy_hi, loy, _CMP_LT_OQ),
                     _mm256_cmp_pd(sy_lo, hiy, _CMP_GT_OQ)));
    const __m256d dx = _mm256_sub_pd(x1, x0);
    const __m256d dy = _mm256_sub_pd(y1, y0);
    const __m256d rlo_y = _mm256_sub_pd(loy, y0);
    const __m256d rhi_y = _mm256_sub_pd(hiy, y0);
    const __m256d rlo_x = _mm256_sub_pd(lox, x0);
    const __m256d rhi_x = _mm256_sub_pd(hix, x0);
    const __m256d c0 = _mm256_sub_pd(_mm256_mul_pd(dx, rlo_y), _mm256_mul_pd(dy, rlo_x));
    const __m256d c1 = _mm256_sub_pd(_mm256_mul_pd(dx, rlo_y), _mm256_mul_pd(dy, rhi_x));
    const __m256d c2 = _mm256_sub_pd(_mm256_mul_pd(dx, rhi_y), _mm256_mul_pd(dy, rlo_x));
    const __m256d c3 = _mm256_sub_pd(_mm256_mul_pd(dx, rhi_y), _mm256_mul_pd(dy, rhi_x));
    const __m256d all_pos = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(c0, zero, _CMP_GT_OQ),
                      _mm256_cmp_pd(c1, zero, _CMP_GT_OQ)),
        _mm256_and_pd(_mm256_cmp_pd(c2, zero, _CMP_GT_OQ),
                      _mm256_cmp_pd(c3, zero, _CMP_GT_OQ)));
    const __m256d all_neg = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(c0, zero, _CMP_LT_OQ),
                      _mm256_cmp_pd(c1, zero, _CMP_LT_OQ)),
        _mm256_and_pd(_mm256_cmp_pd(c2, zero, _CMP_LT_OQ),
                      _mm256_cmp_pd(c3, zero, _CMP_LT_OQ)));
    const int miss = _mm256_movemask_pd(
        _mm256_or_pd(reject, _mm256_or_pd(all_pos, all_neg)));
    const int bits = ~miss & 0xF;
    store_mask(bits, out + i);
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(bits)));
  }
  for (; i < cols.size; ++i) {
    const bool hit = detail::segment_hits_box(cols.x0[i], cols.y0[i], cols.x1[i],
                                              cols.y1[i], w.a, w.b, w.c, w.d);
    out[i] = hit ? 1 : 0;
    count += hit;
  }
  return count;
}

std::size_t disk_hits_avx2(const WindowDesc& w, SegmentColumns cols,
                           std::uint8_t* out) {
  const __m256d cx = _mm256_set1_pd(w.a);
  const __m256d cy = _mm256_set1_pd(w.b);
  const __m256d r2 = _mm256_set1_pd(w.c * w.c);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= cols.size; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(cols.x0 + i);
    const __m256d y0 = _mm256_loadu_pd(cols.y0 + i);
    const __m256d x1 = _mm256_loadu_pd(cols.x1 + i);
    const __m256d y1 = _mm256_loadu_pd(cols.y1 + i);
    const __m256d dx = _mm256_sub_pd(x1, x0);
    const __m256d dy = _mm256_sub_pd(y1, y0);
    const __m256d ex = _mm256_sub_pd(cx, x0);
    const __m256d ey = _mm256_sub_pd(cy, y0);
    const __m256d dd = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d proj = _mm256_add_pd(_mm256_mul_pd(ex, dx), _mm256_mul_pd(ey, dy));
    __m256d t = _mm256_div_pd(proj, dd);
    t = _mm256_blendv_pd(zero, t, _mm256_cmp_pd(dd, zero, _CMP_GT_OQ));
    t = _mm256_blendv_pd(t, zero, _mm256_cmp_pd(t, zero, _CMP_LT_OQ));
    t = _mm256_blendv_pd(t, one, _mm256_cmp_pd(t, one, _CMP_GT_OQ));
    const __m256d qx = _mm256_sub_pd(ex, _mm256_mul_pd(t, dx));
    const __m256d qy = _mm256_sub_pd(ey, _mm256_mul_pd(t, dy));
    const __m256d dist2 = _mm256_add_pd(_mm256_mul_pd(qx, qx), _mm256_mul_pd(qy, qy));
    const int bits = _mm256_movemask_pd(_mm256_cmp_pd(dist2, r2, _CMP_LE_OQ));
    store_mask(bits, out + i);
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(bits)));
  }
  for (; i < cols.size; ++i) {
    const bool hit = detail::segment_hits_disk(cols.x0[i], cols.y0[i], cols.x1[i],
                                               cols.y1[i], w.a, w.b, w.c);
    out[i] = hit ? 1 : 0;
    count += hit;
  }
  return count;
}

std::size_t window_hits_avx2(const WindowDesc& w, SegmentColumns cols,
                             std::uint8_t* out) {
  return w.disk ? disk_hits_avx2(w, cols, out) : box_hits_avx2(w, cols, out);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", &count_crossings_avx2, &window_hits_avx2};
  return table;
}

}  // namespace gsp::kernels
