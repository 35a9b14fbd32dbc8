#include <doctest.h>

#include <random>
#include <vector>

#include "gsp/kernels.hpp"
#include "support.hpp"

using namespace gsp;

namespace {

struct Columns {
  std::vector<double> x0, y0, x1, y1;
  void add(double a, double b, double c, double d) {
    x0.push_back(a);
    y0.push_back(b);
    x1.push_back(c);
    y1.push_back(d);
  }
  kernels::SegmentColumns view(std::size_t from = 0, std::size_t count = SIZE_MAX) const {
    count = std::min(count, x0.size() - from);
    return {x0.data() + from, y0.data() + from, x1.data() + from, y1.data() + from, count};
  }
};

// Coordinates on a coarse lattice: collinear, touching and shared-endpoint
// cases become common instead of measure zero.
Columns lattice_columns(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> u(-4, 4);
  Columns c;
  while (c.x0.size() < n) {
    const double a = u(rng) * 0.25, b = u(rng) * 0.25, d = u(rng) * 0.25, e = u(rng) * 0.25;
    if (a == d && b == e) continue;
    c.add(a, b, d, e);
  }
  return c;
}

Columns random_columns(std::mt19937_64& rng, std::size_t n) {
  Columns c;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment s = test::random_segment(rng, 2.0, 1.0);
    c.add(s.p0().x, s.p0().y, s.p1().x, s.p1().y);
  }
  return c;
}

void compare_tables(const kernels::KernelTable& ref, const kernels::KernelTable& simd,
                    const Columns& c, std::mt19937_64& rng, bool lattice) {
  // Every element individually, and the bulk count over ragged lengths.
  for (std::size_t q = 0; q < c.x0.size(); q += 7) {
    const kernels::Query query{c.x0[q], c.y0[q], c.x1[q], c.y1[q]};
    for (std::size_t i = 0; i < c.x0.size(); ++i) {
      REQUIRE(ref.count_crossings(query, c.view(i, 1)) ==
              simd.count_crossings(query, c.view(i, 1)));
    }
    for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 8u, 13u, 64u, 1000u}) {
      REQUIRE(ref.count_crossings(query, c.view(0, len)) ==
              simd.count_crossings(query, c.view(0, len)));
    }
  }
  std::vector<Window> windows{Window::square(1.0), Window::disk(0.75),
                              Window::square(0.5, {0.25, -0.25}), Window::disk(1.0, {0.5, 0.5})};
  if (!lattice) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      windows.push_back(Window::square(1.0 + u(rng) * 0.5, {u(rng), u(rng)}));
      windows.push_back(Window::disk(0.6 + u(rng) * 0.4, {u(rng), u(rng)}));
    }
  }
  std::vector<std::uint8_t> a(c.x0.size()), b(c.x0.size());
  for (const Window& w : windows) {
    const kernels::WindowDesc d = kernels::describe(w);
    for (std::size_t off : {0u, 1u, 2u, 3u}) {
      const std::size_t na = ref.window_hits(d, c.view(off), a.data());
      const std::size_t nb = simd.window_hits(d, c.view(off), b.data());
      REQUIRE(na == nb);
      for (std::size_t i = 0; i + off < c.x0.size(); ++i) REQUIRE(a[i] == b[i]);
    }
  }
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar kernels agree with the geometry predicates") {
    std::mt19937_64 rng(21);
    const Columns c = random_columns(rng, 500);
    const auto& k = kernels::scalar();
    for (std::size_t q = 0; q < 50; ++q) {
      const Segment s = Segment::from_endpoints({c.x0[q], c.y0[q]}, {c.x1[q], c.y1[q]});
      std::size_t brute = 0;
      for (std::size_t i = 0; i < 500; ++i) {
        brute += segments_intersect(
            s, Segment::from_endpoints({c.x0[i], c.y0[i]}, {c.x1[i], c.y1[i]}));
      }
      CHECK(k.count_crossings(kernels::query_of(s), c.view()) == brute);
    }
    const Window w = Window::disk(1.2, {0.3, 0.1});
    std::vector<std::uint8_t> hit(500);
    k.window_hits(kernels::describe(w), c.view(), hit.data());
    for (std::size_t i = 0; i < 500; ++i) {
      const Segment s = Segment::from_endpoints({c.x0[i], c.y0[i]}, {c.x1[i], c.y1[i]});
      CHECK(static_cast<bool>(hit[i]) == segment_hits_window(s, w));
    }
  }

  TEST_CASE("avx2 kernels match scalar on random data") {
    const kernels::KernelTable* simd = kernels::avx2();
    if (simd == nullptr) {
      MESSAGE("AVX2 kernels unavailable; equivalence not exercised");
      return;
    }
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 5; ++rep) {
      compare_tables(kernels::scalar(), *simd, random_columns(rng, 1003), rng, false);
    }
  }

  TEST_CASE("avx2 kernels match scalar on degenerate lattice data") {
    const kernels::KernelTable* simd = kernels::avx2();
    if (simd == nullptr) {
      MESSAGE("AVX2 kernels unavailable; equivalence not exercised");
      return;
    }
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 5; ++rep) {
      compare_tables(kernels::scalar(), *simd, lattice_columns(rng, 1001), rng, true);
    }
  }

  TEST_CASE("active table is one of the known tables") {
    const auto& k = kernels::active();
    CHECK((&k == &kernels::scalar() || &k == kernels::avx2()));
  }
}
