#include "gsp/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gsp/kernels.hpp"

namespace gsp {

LengthLaw LengthLaw::fixed(double length) {
  if (!(length > 0.0)) throw std::invalid_argument("fixed length must be positive");
  return {Kind::fixed, length, length};
}

LengthLaw LengthLaw::uniform(double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("uniform length law needs 0 < lo < hi");
  }
  return {Kind::uniform, lo, hi};
}

double LengthLaw::moment(double k) const {
  if (kind == Kind::fixed) return k == 2.0 ? lo * lo : std::pow(lo, k);
  return (std::pow(hi, k + 1.0) - std::pow(lo, k + 1.0)) / ((k + 1.0) * (hi - lo));
}

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string LengthLaw::describe() const {
  if (kind == Kind::fixed) return "fixed(" + shortest(lo) + ")";
  return "uniform(" + shortest(lo) + ";" + shortest(hi) + ")";
}

void ModelParams::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be nonnegative");
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("R must be positive");
  if (!(length.lo > 0.0) || length.max_length() > 2.0 * R) {
    throw std::invalid_argument("length law must be supported in (0, 2R]");
  }
}

Configuration::Configuration(Domain domain, double interaction_range)
    : domain_(domain), cell_(interaction_range) {
  if (!(interaction_range > 0.0)) {
    throw std::invalid_argument("interaction range must be positive");
  }
  const auto box = domain_.bounding_box();
  ox_ = box[0];
  oy_ = box[1];
  const double w = box[2] - box[0];
  const double h = box[3] - box[1];
  nx_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(w / cell_)));
  ny_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(h / cell_)));
  // Cells are at least interaction_range wide in both directions.
  cell_ = std::min(w / static_cast<double>(nx_), h / static_cast<double>(ny_));
  cell_ = std::max(cell_, interaction_range);
  cells_.resize(nx_ * ny_);
}

std::size_t Configuration::cell_of(Vec2 c) const {
  auto clamp_index = [](double v, std::size_t n) {
    if (!(v > 0.0)) return std::size_t{0};
    const auto i = static_cast<std::size_t>(v);
    return std::min(i, n - 1);
  };
  const std::size_t ix = clamp_index((c.x - ox_) / cell_, nx_);
  const std::size_t iy = clamp_index((c.y - oy_) / cell_, ny_);
  return iy * nx_ + ix;
}

void Configuration::cell_insert(std::size_t cell, const Segment& s,
                                std::uint32_t id) {
  Cell& c = cells_[cell];
  slots_[id] = {static_cast<std::uint32_t>(cell),
                static_cast<std::uint32_t>(c.ids.size())};
  c.x0.push_back(s.p0().x);
  c.y0.push_back(s.p0().y);
  c.x1.push_back(s.p1().x);
  c.y1.push_back(s.p1().y);
  c.ids.push_back(id);
}

void Configuration::cell_erase(Slot slot) {
  Cell& c = cells_[slot.cell];
  const std::size_t last = c.ids.size() - 1;
  if (slot.pos != last) {
    c.x0[slot.pos] = c.x0[last];
    c.y0[slot.pos] = c.y0[last];
    c.x1[slot.pos] = c.x1[last];
    c.y1[slot.pos] = c.y1[last];
    c.ids[slot.pos] = c.ids[last];
    slots_[c.ids[slot.pos]].pos = slot.pos;
  }
  c.x0.pop_back();
  c.y0.pop_back();
  c.x1.pop_back();
  c.y1.pop_back();
  c.ids.pop_back();
}

bool Configuration::contains(const Segment& s) const {
  const Cell& c = cells_[cell_of(s.center())];
  for (std::size_t j = 0; j < c.ids.size(); ++j) {
    if (c.x0[j] == s.p0().x && c.y0[j] == s.p0().y && c.x1[j] == s.p1().x &&
        c.y1[j] == s.p1().y) {
      return true;
    }
  }
  return false;
}

void Configuration::insert(const Segment& s) {
  if (!domain_.contains(s.center())) {
    throw std::invalid_argument("segment centre outside the simulation domain");
  }
  if (s.length() > cell_) {
    throw std::invalid_argument("segment longer than the interaction range");
  }
  if (contains(s)) throw std::invalid_argument("duplicate segment");
  const auto id = static_cast<std::uint32_t>(segments_.size());
  segments_.push_back(s);
  slots_.push_back({});
  cell_insert(cell_of(s.center()), s, id);
}

Segment Configuration::remove_at(std::size_t i) {
  if (i >= segments_.size()) throw std::out_of_range("particle index");
  const Segment removed = segments_[i];
  cell_erase(slots_[i]);
  const std::size_t last = segments_.size() - 1;
  if (i != last) {
    segments_[i] = segments_[last];
    slots_[i] = slots_[last];
    cells_[slots_[i].cell].ids[slots_[i].pos] = static_cast<std::uint32_t>(i);
  }
  segments_.pop_back();
  slots_.pop_back();
  return removed;
}

void Configuration::replace(std::size_t i, const Segment& s) {
  if (i >= segments_.size()) throw std::out_of_range("particle index");
  if (!domain_.contains(s.center())) {
    throw std::invalid_argument("segment centre outside the simulation domain");
  }
  if (s.length() > cell_) {
    throw std::invalid_argument("segment longer than the interaction range");
  }
  if (contains(s)) throw std::invalid_argument("duplicate segment");
  cell_erase(slots_[i]);
  segments_[i] = s;
  cell_insert(cell_of(s.center()), s, static_cast<std::uint32_t>(i));
}

std::size_t Configuration::crossings(const Segment& k) const {
  const auto& kern = kernels::active();
  const kernels::Query q = kernels::query_of(k);
  const std::size_t home = cell_of(k.center());
  const std::size_t ix = home % nx_;
  const std::size_t iy = home / nx_;
  const std::size_t x_lo = ix > 0 ? ix - 1 : 0;
  const std::size_t x_hi = std::min(ix + 1, nx_ - 1);
  const std::size_t y_lo = iy > 0 ? iy - 1 : 0;
  const std::size_t y_hi = std::min(iy + 1, ny_ - 1);
  std::size_t count = 0;
  for (std::size_t y = y_lo; y <= y_hi; ++y) {
    for (std::size_t x = x_lo; x <= x_hi; ++x) {
      const Cell& c = cells_[y * nx_ + x];
      if (c.ids.empty()) continue;
      count += kern.count_crossings(
          q, {c.x0.data(), c.y0.data(), c.x1.data(), c.y1.data(), c.ids.size()});
    }
  }
  return count;
}

std::size_t Configuration::crossings_of(std::size_t i) const {
  return crossings(segments_[i]) - 1;
}

FrozenGrid::FrozenGrid(const Configuration& x)
    : cell_(x.cell_), ox_(x.ox_), oy_(x.oy_), nx_(x.nx_), ny_(x.ny_) {
  start_.reserve(x.cells_.size() + 1);
  start_.push_back(0);
  for (const auto& c : x.cells_) {
    x0_.insert(x0_.end(), c.x0.begin(), c.x0.end());
    y0_.insert(y0_.end(), c.y0.begin(), c.y0.end());
    x1_.insert(x1_.end(), c.x1.begin(), c.x1.end());
    y1_.insert(y1_.end(), c.y1.begin(), c.y1.end());
    start_.push_back(static_cast<std::uint32_t>(x0_.size()));
  }
}

std::size_t FrozenGrid::crossings(const Segment& k) const {
  const auto& kern = kernels::active();
  const kernels::Query q = kernels::query_of(k);
  auto index = [](double v, std::size_t n) {
    if (!(v > 0.0)) return std::size_t{0};
    return std::min(static_cast<std::size_t>(v), n - 1);
  };
  const std::size_t ix = index((k.center().x - ox_) / cell_, nx_);
  const std::size_t iy = index((k.center().y - oy_) / cell_, ny_);
  const std::size_t x_lo = ix > 0 ? ix - 1 : 0;
  const std::size_t x_hi = std::min(ix + 1, nx_ - 1);
  const std::size_t y_lo = iy > 0 ? iy - 1 : 0;
  const std::size_t y_hi = std::min(iy + 1, ny_ - 1);
  std::size_t count = 0;
  for (std::size_t y = y_lo; y <= y_hi; ++y) {
    const std::size_t b = start_[y * nx_ + x_lo];
    const std::size_t e = start_[y * nx_ + x_hi + 1];
    if (b == e) continue;
    count += kern.count_crossings(
        q, {x0_.data() + b, y0_.data() + b, x1_.data() + b, y1_.data() + b, e - b});
  }
  return count;
}

int pair_potential(const Segment& a, const Segment& b) {
  return segments_intersect(a, b) ? 1 : 0;
}

std::size_t energy(const Configuration& x) {
  std::size_t twice = 0;
  for (std::size_t i = 0; i < x.size(); ++i) twice += x.crossings_of(i);
  return twice / 2;
}

std::size_t energy_brute(const Configuration& x) {
  std::size_t h = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      h += static_cast<std::size_t>(pair_potential(x[i], x[j]));
    }
  }
  return h;
}

std::size_t local_energy(const Segment& k, const Configuration& x) {
  return x.crossings(k);
}

std::size_t local_energy_brute(const Segment& k, const Configuration& x) {
  std::size_t n = 0;
  for (const Segment& s : x.segments()) n += static_cast<std::size_t>(pair_potential(k, s));
  return n;
}

double intensity_from_count(std::size_t count, const ModelParams& p) {
  if (count == 0 || p.beta == 0.0) return p.tau;
  return p.tau * std::exp(-p.beta * static_cast<double>(count));
}

double conditional_intensity(const Segment& k, const Configuration& x,
                             const ModelParams& p) {
  if (p.beta == 0.0) return p.tau;
  return intensity_from_count(local_energy(k, x), p);
}

double intensity_difference(const Segment& k, const Segment& l,
                            const Configuration& x, const ModelParams& p) {
  const std::size_t base = local_energy(l, x);
  const std::size_t with_k = base + static_cast<std::size_t>(pair_potential(k, l));
  return intensity_from_count(with_k, p) - intensity_from_count(base, p);
}

}  // namespace gsp
