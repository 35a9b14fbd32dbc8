#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace gsp {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

/// A closed planar segment. Endpoints are canonical; the stored centre is
/// always the midpoint recomputed from them, so `midpoint(p0, p1) == center()`
/// holds bit for bit.
class Segment {
 public:
  /// Throws std::invalid_argument for non-positive or non-finite length.
  static Segment make(Vec2 center, double angle, double length);
  static Segment from_endpoints(Vec2 p0, Vec2 p1);

  Vec2 center() const { return center_; }
  /// Direction in [0, pi).
  double angle() const { return angle_; }
  double length() const { return length_; }
  Vec2 p0() const { return p0_; }
  Vec2 p1() const { return p1_; }

  Segment translated(Vec2 shift) const;

  friend bool operator==(const Segment&, const Segment&) = default;

 private:
  Segment() = default;

  Vec2 center_;
  double angle_ = 0.0;
  double length_ = 0.0;
  Vec2 p0_;
  Vec2 p1_;
};

Vec2 midpoint(Vec2 a, Vec2 b);

/// Normalise an angle to [0, pi).
double normalize_direction(double angle);

enum class Shape { square, disk };

/// Convex observation window: an axis-aligned square (size = side) or a disk
/// (size = radius).
struct Window {
  Shape shape = Shape::square;
  double size = 1.0;
  Vec2 center;

  static Window square(double side, Vec2 center = {});
  static Window disk(double radius, Vec2 center = {});

  double area() const;
  double perimeter() const;
  /// Width of the orthogonal projection onto the line with direction `theta`.
  double width(double theta) const;
  /// Euclidean distance from `p` to the closed window (0 inside).
  double distance(Vec2 p) const;
  bool contains(Vec2 p) const { return distance(p) <= 0.0; }
  /// True iff this window is a subset of `outer`.
  bool inside(const Window& outer) const;

  friend bool operator==(const Window&, const Window&) = default;
};

/// Simulation region window ⊕ B(0, margin).
struct Domain {
  Window window;
  double margin = 0.0;

  double area() const;
  double perimeter() const;
  bool contains(Vec2 p) const { return window.distance(p) <= margin; }
  /// {xmin, ymin, xmax, ymax}
  std::array<double, 4> bounding_box() const;

  template <class Rng>
  Vec2 sample_uniform(Rng& rng) const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

bool segments_intersect(const Segment& a, const Segment& b);
bool segment_hits_window(const Segment& s, const Window& w);

/// Lebesgue measure of the centres x for which the segment (x, angle, length)
/// hits `w`: Leb(W) + length * width(W, angle + pi/2).
double hit_region_area(double length, double angle, const Window& w);

/// Direction average of hit_region_area under the uniform law on [0, pi):
/// Leb(W) + length * U(W) / pi.
double mean_hit_region_area(double length, const Window& w);

template <class Rng>
Vec2 Domain::sample_uniform(Rng& rng) const {
  const auto box = bounding_box();
  std::uniform_real_distribution<double> ux(box[0], box[2]);
  std::uniform_real_distribution<double> uy(box[1], box[3]);
  for (;;) {
    const Vec2 p{ux(rng), uy(rng)};
    if (contains(p)) return p;
  }
}

}  // namespace gsp
