#include "gsp/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "gsp/detail/predicates.hpp"

namespace gsp {

namespace {
constexpr double kPi = std::numbers::pi;
}

Vec2 midpoint(Vec2 a, Vec2 b) { return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5}; }

double normalize_direction(double angle) {
  double a = std::fmod(angle, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a = 0.0;
  return a;
}

Segment Segment::make(Vec2 center, double angle, double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("segment length must be positive and finite");
  }
  if (!std::isfinite(center.x) || !std::isfinite(center.y) ||
      !std::isfinite(angle)) {
    throw std::invalid_argument("segment centre and angle must be finite");
  }
  Segment s;
  s.angle_ = normalize_direction(angle);
  s.length_ = length;
  const double h = 0.5 * length;
  const Vec2 d{h * std::cos(s.angle_), h * std::sin(s.angle_)};
  s.p0_ = center - d;
  s.p1_ = center + d;
  s.center_ = midpoint(s.p0_, s.p1_);
  return s;
}

Segment Segment::from_endpoints(Vec2 p0, Vec2 p1) {
  const Vec2 d = p1 - p0;
  const double length = std::hypot(d.x, d.y);
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("segment endpoints must be distinct and finite");
  }
  Segment s;
  s.angle_ = normalize_direction(std::atan2(d.y, d.x));
  s.length_ = length;
  s.p0_ = p0;
  s.p1_ = p1;
  s.center_ = midpoint(p0, p1);
  return s;
}

Segment Segment::translated(Vec2 shift) const {
  Segment s = *this;
  s.p0_ = p0_ + shift;
  s.p1_ = p1_ + shift;
  s.center_ = midpoint(s.p0_, s.p1_);
  return s;
}

Window Window::square(double side, Vec2 center) {
  if (!(side > 0.0)) throw std::invalid_argument("square side must be positive");
  return {Shape::square, side, center};
}

Window Window::disk(double radius, Vec2 center) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  return {Shape::disk, radius, center};
}

double Window::area() const {
  return shape == Shape::square ? size * size : kPi * size * size;
}

double Window::perimeter() const {
  return shape == Shape::square ? 4.0 * size : 2.0 * kPi * size;
}

double Window::width(double theta) const {
  if (shape == Shape::disk) return 2.0 * size;
  return size * (std::abs(std::cos(theta)) + std::abs(std::sin(theta)));
}

double Window::distance(Vec2 p) const {
  const Vec2 q = p - center;
  if (shape == Shape::disk) {
    return std::max(0.0, std::hypot(q.x, q.y) - size);
  }
  const double h = 0.5 * size;
  const double dx = std::max(0.0, std::abs(q.x) - h);
  const double dy = std::max(0.0, std::abs(q.y) - h);
  return std::hypot(dx, dy);
}

bool Window::inside(const Window& outer) const {
  const Vec2 off = center - outer.center;
  if (outer.shape == Shape::square) {
    const double h = 0.5 * outer.size;
    const double ext = shape == Shape::square ? 0.5 * size : size;
    return std::abs(off.x) + ext <= h && std::abs(off.y) + ext <= h;
  }
  if (shape == Shape::disk) return std::hypot(off.x, off.y) + size <= outer.size;
  const double h = 0.5 * size;
  const double fx = std::abs(off.x) + h;
  const double fy = std::abs(off.y) + h;
  return std::hypot(fx, fy) <= outer.size;
}

double Domain::area() const {
  const double m = margin;
  return window.area() + window.perimeter() * m + kPi * m * m;
}

double Domain::perimeter() const { return window.perimeter() + 2.0 * kPi * margin; }

std::array<double, 4> Domain::bounding_box() const {
  const double ext =
      (window.shape == Shape::square ? 0.5 * window.size : window.size) + margin;
  return {window.center.x - ext, window.center.y - ext, window.center.x + ext,
          window.center.y + ext};
}

bool segments_intersect(const Segment& a, const Segment& b) {
  return detail::segments_cross(a.p0().x, a.p0().y, a.p1().x, a.p1().y,
                                b.p0().x, b.p0().y, b.p1().x, b.p1().y);
}

bool segment_hits_window(const Segment& s, const Window& w) {
  const Vec2 a = s.p0();
  const Vec2 b = s.p1();
  if (w.shape == Shape::disk) {
    return detail::segment_hits_disk(a.x, a.y, b.x, b.y, w.center.x, w.center.y,
                                     w.size);
  }
  const double h = 0.5 * w.size;
  return detail::segment_hits_box(a.x, a.y, b.x, b.y, w.center.x - h,
                                  w.center.y - h, w.center.x + h, w.center.y + h);
}

double hit_region_area(double length, double angle, const Window& w) {
  return w.area() + length * w.width(angle + 0.5 * kPi);
}

double mean_hit_region_area(double length, const Window& w) {
  return w.area() + length * w.perimeter() / kPi;
}

}  // namespace gsp
