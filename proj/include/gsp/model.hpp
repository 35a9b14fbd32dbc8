#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gsp/geometry.hpp"

namespace gsp {

/// Reference length law Q_L. Only laws with closed-form moments are admitted.
struct LengthLaw {
  enum class Kind { fixed, uniform };

  Kind kind = Kind::fixed;
  double lo = 1.0;  // fixed: the length
  double hi = 1.0;

  static LengthLaw fixed(double length);
  static LengthLaw uniform(double lo, double hi);

  /// E_L l^k for real k >= 0.
  double moment(double k) const;
  double max_length() const { return hi; }
  std::string describe() const;

  template <class Rng>
  double sample(Rng& rng) const {
    if (kind == Kind::fixed) return lo;
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  friend bool operator==(const LengthLaw&, const LengthLaw&) = default;
};

struct ModelParams {
  double tau = 1.0;
  double beta = 0.0;
  double R = 0.5;
  LengthLaw length = LengthLaw::fixed(1.0);

  /// Throws std::invalid_argument unless tau > 0, beta >= 0, R > 0 and the
  /// length law is supported in (0, 2R].
  void validate() const;
  double interaction_range() const { return 2.0 * R; }
};

/// Finite set of segments with centres in a simulation domain, indexed by a
/// uniform grid whose cell side is at least the interaction range, so that
/// every partner of a segment lies in the 3x3 block around its cell.
class Configuration {
 public:
  Configuration(Domain domain, double interaction_range);

  const Domain& domain() const { return domain_; }
  double interaction_range() const { return cell_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  const Segment& operator[](std::size_t i) const { return segments_[i]; }
  std::span<const Segment> segments() const { return segments_; }

  /// Throws std::invalid_argument if the centre lies outside the domain, the
  /// segment is longer than the interaction range, or it is already present.
  void insert(const Segment& s);
  /// Removes particle i; the last particle takes index i.
  Segment remove_at(std::size_t i);
  void replace(std::size_t i, const Segment& s);

  /// Number of stored segments intersecting `k` (counts k itself if stored).
  std::size_t crossings(const Segment& k) const;
  /// Number of other stored segments intersecting particle i.
  std::size_t crossings_of(std::size_t i) const;
  bool contains(const Segment& s) const;

 private:
  friend class FrozenGrid;

  struct Cell {
    std::vector<double> x0, y0, x1, y1;
    std::vector<std::uint32_t> ids;
  };
  struct Slot {
    std::uint32_t cell;
    std::uint32_t pos;
  };

  std::size_t cell_of(Vec2 c) const;
  void cell_insert(std::size_t cell, const Segment& s, std::uint32_t id);
  void cell_erase(Slot slot);

  Domain domain_;
  double cell_;
  double ox_ = 0.0, oy_ = 0.0;
  std::size_t nx_ = 1, ny_ = 1;
  std::vector<Segment> segments_;
  std::vector<Slot> slots_;
  std::vector<Cell> cells_;
};

/// Read-only snapshot of a configuration's grid in which every row of cells
/// is one contiguous block. A neighbourhood query is then three kernel calls
/// instead of nine, which pays off when many probes hit a fixed state.
class FrozenGrid {
 public:
  explicit FrozenGrid(const Configuration& x);
  /// Same value as x.crossings(k).
  std::size_t crossings(const Segment& k) const;

 private:
  double cell_, ox_, oy_;
  std::size_t nx_, ny_;
  std::vector<std::uint32_t> start_;  // nx_ * ny_ + 1 offsets
  std::vector<double> x0_, y0_, x1_, y1_;
};

/// g(a ∩ b): 1 if the closed segments intersect. A segment paired with itself
/// yields 1.
int pair_potential(const Segment& a, const Segment& b);

/// H(x): number of unordered intersecting pairs (grid accelerated).
std::size_t energy(const Configuration& x);
/// O(n^2) reference count of H(x).
std::size_t energy_brute(const Configuration& x);

/// h(k, x) = N_x(k) for k not in x.
std::size_t local_energy(const Segment& k, const Configuration& x);
std::size_t local_energy_brute(const Segment& k, const Configuration& x);

/// λ*(k, x) = τ exp(-β N_x(k)).
double conditional_intensity(const Segment& k, const Configuration& x,
                             const ModelParams& p);
double intensity_from_count(std::size_t count, const ModelParams& p);

/// λ*(l, x ∪ {k}) − λ*(l, x), evaluated from the intersection counts.
double intensity_difference(const Segment& k, const Segment& l,
                            const Configuration& x, const ModelParams& p);

/// Centre uniform on the domain, direction uniform on [0, pi), length from Q_L.
template <class Rng>
Segment sample_reference_segment(const ModelParams& p, const Domain& region,
                                 Rng& rng) {
  const Vec2 c = region.sample_uniform(rng);
  const double angle =
      std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng);
  return Segment::make(c, angle, p.length.sample(rng));
}

}  // namespace gsp
