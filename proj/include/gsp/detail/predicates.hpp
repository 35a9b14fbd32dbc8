#pragma once

// Scalar reference predicates. The SIMD kernels reproduce these operation by
// operation, so any change here must be mirrored in src/kernels/avx2.cpp.

namespace gsp::detail {

inline constexpr double kCollinearEps = 1e-12;

inline double orient(double ax, double ay, double bx, double by, double cx,
                     double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

inline int orient_sign(double v) {
  if (v > kCollinearEps) return 1;
  if (v < -kCollinearEps) return -1;
  return 0;
}

// r inside the bounding box of p-q (closed).
inline bool in_box(double px, double py, double qx, double qy, double rx,
                   double ry) {
  const double lox = px < qx ? px : qx;
  const double hix = px < qx ? qx : px;
  const double loy = py < qy ? py : qy;
  const double hiy = py < qy ? qy : py;
  return lox <= rx && rx <= hix && loy <= ry && ry <= hiy;
}

inline bool segments_cross(double ax0, double ay0, double ax1, double ay1,
                           double bx0, double by0, double bx1, double by1) {
  const int o1 = orient_sign(orient(ax0, ay0, ax1, ay1, bx0, by0));
  const int o2 = orient_sign(orient(ax0, ay0, ax1, ay1, bx1, by1));
  const int o3 = orient_sign(orient(bx0, by0, bx1, by1, ax0, ay0));
  const int o4 = orient_sign(orient(bx0, by0, bx1, by1, ax1, ay1));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && in_box(ax0, ay0, ax1, ay1, bx0, by0)) return true;
  if (o2 == 0 && in_box(ax0, ay0, ax1, ay1, bx1, by1)) return true;
  if (o3 == 0 && in_box(bx0, by0, bx1, by1, ax0, ay0)) return true;
  if (o4 == 0 && in_box(bx0, by0, bx1, by1, ax1, ay1)) return true;
  return false;
}

// Closed axis-aligned box [lox,hix]x[loy,hiy]; separating-axis test over the
// box normals and the segment normal.
inline bool segment_hits_box(double x0, double y0, double x1, double y1,
                             double lox, double loy, double hix, double hiy) {
  const double sx_lo = x0 < x1 ? x0 : x1;
  const double sx_hi = x0 < x1 ? x1 : x0;
  const double sy_lo = y0 < y1 ? y0 : y1;
  const double sy_hi = y0 < y1 ? y1 : y0;
  if (sx_hi < lox || sx_lo > hix || sy_hi < loy || sy_lo > hiy) return false;
  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const double c0 = dx * (loy - y0) - dy * (lox - x0);
  const double c1 = dx * (loy - y0) - dy * (hix - x0);
  const double c2 = dx * (hiy - y0) - dy * (lox - x0);
  const double c3 = dx * (hiy - y0) - dy * (hix - x0);
  const bool all_pos = c0 > 0.0 && c1 > 0.0 && c2 > 0.0 && c3 > 0.0;
  const bool all_neg = c0 < 0.0 && c1 < 0.0 && c2 < 0.0 && c3 < 0.0;
  return !(all_pos || all_neg);
}

// Closed disk; distance from the centre to the nearest segment point.
inline bool segment_hits_disk(double x0, double y0, double x1, double y1,
                              double cx, double cy, double r) {
  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const double ex = cx - x0;
  const double ey = cy - y0;
  const double dd = dx * dx + dy * dy;
  double t = dd > 0.0 ? (ex * dx + ey * dy) / dd : 0.0;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  const double qx = ex - t * dx;
  const double qy = ey - t * dy;
  return qx * qx + qy * qy <= r * r;
}

}  // namespace gsp::detail
