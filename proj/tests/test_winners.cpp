#include <random>

#include "fixtures.hpp"
// after fixtures so doctest sees its stream operator
#include "doctest.h"
#include "slopegap/subdivision.hpp"
#include "slopegap/winners.hpp"

using namespace slopegap;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement(Rational(n, d)); }

}  // namespace

TEST_CASE("sweep finds the five heptagon winners") {
  const auto& h = fixtures::heptagon();
  REQUIRE(h.records.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(h.records[i].vector == fixtures::winner(i));
    CHECK(h.records[i].interval.hi == fixtures::endpoint(i));
    CHECK(h.records[i].sheared == h.surface().shear() * h.records[i].vector);
    const Vec& w = h.records[i].vector;
    CHECK(h.records[i].interval.lo == (w.x() - 1) / w.y());
  }
  CHECK(h.records.back().vector == h.vec("x0", "y0"));
}

TEST_CASE("winning intervals tile A^L in increasing slope") {
  const auto& h = fixtures::heptagon();
  CHECK(h.records.front().interval.hi == h.omega.a_right);
  CHECK(h.records.back().interval.lo == h.omega.a_left);
  for (size_t i = 0; i + 1 < h.records.size(); ++i) {
    CHECK(h.records[i].interval.lo == h.records[i + 1].interval.hi);
    CHECK(slope_less(h.records[i].vector, h.records[i + 1].vector));
  }
  for (const auto& r : h.records) {
    const FieldElement mid = (r.interval.lo + r.interval.hi) / 2;
    CHECK(is_left_candidate(r.vector, h.omega.top_point(mid)));
    CHECK(is_left_candidate(r.vector, h.omega.top_point(r.interval.hi)));
  }
}

TEST_CASE("search regions") {
  const auto& h = fixtures::heptagon();
  const Vec p1 = h.omega.top_point(fixtures::endpoint(0));
  const auto r1 = winner_search_region(p1, fixtures::winner(0));
  REQUIRE(r1.bounded);
  const Vec w1 = fixtures::winner(0);
  const Vec apex = w1 / strip_value(w1, p1);
  CHECK(std::find(r1.triangle.vertices.begin(), r1.triangle.vertices.end(), apex) != r1.triangle.vertices.end());
  CHECK(enumerate_region_candidates(r1, h.surface(), h.cfg.search) == std::vector<Vec>{w1});

  const Vec p2 = h.omega.top_point(fixtures::endpoint(1));
  const auto r2 = winner_search_region(p2, fixtures::winner(1));
  REQUIRE(r2.bounded);
  const auto c2 = enumerate_region_candidates(r2, h.surface(), h.cfg.search);
  CHECK(c2 == std::vector<Vec>{fixtures::winner(1)});

  const Vec p5 = h.omega.top_point(fixtures::endpoint(4));
  CHECK_FALSE(winner_search_region(p5, fixtures::winner(4)).bounded);

  // a vector that is not a candidate at the point cannot seed a region
  CHECK_THROWS_AS(winner_search_region(p1, h.vec("x0", "y0")), Error);
}

TEST_CASE("left winners at the interval endpoints") {
  const auto& h = fixtures::heptagon();
  for (int i : {0, 3, 4})
    CHECK(left_winner_at(h.omega.top_point(fixtures::endpoint(i)), h.surface(), h.cfg.search) ==
          fixtures::winner(i));
}

TEST_CASE("a shortened top edge gives a single record") {
  const auto& h = fixtures::heptagon();
  const auto t = restrict_top_edge(h.omega, fixtures::endpoint(1));
  const auto rec = sweep_winners(h.surface(), t, h.cfg.search);
  REQUIRE(rec.size() == 1);
  CHECK(rec[0].vector == fixtures::winner(0));
}

TEST_CASE("double pentagon sweep ends at its cusp vector") {
  const auto cfg = load_config(fixtures::config("double_pentagon.json"));
  const auto t = build_transversal(cfg.cusp);
  const auto rec = sweep_winners(cfg.surface, t, cfg.search);
  REQUIRE_FALSE(rec.empty());
  CHECK(rec.back().vector == Vec(cfg.cusp.x0, cfg.cusp.y0));
  CHECK(rec.back().interval.lo == t.a_left);
  const auto regions = subdivide(t, rec);
  FieldElement total;
  for (const auto& r : regions) total += r.area;
  CHECK(total == area(t.omega));
}

TEST_CASE("subdivision covers Omega exactly") {
  const auto& h = fixtures::heptagon();
  REQUIRE(h.regions.size() == 5);
  FieldElement total;
  for (const auto& r : h.regions) {
    total += r.area;
    FieldElement sum;
    for (const auto& p : r.pieces) sum += area(p);
    CHECK(sum == r.area);
  }
  CHECK(total == h.ev("cot(pi/7)"));
}

TEST_CASE("w5 owns the left edge of Omega") {
  const auto& h = fixtures::heptagon();
  const Vec apex = h.omega.apex(), top_left = h.omega.omega.vertices[2];
  const Vec mid = (apex + top_left) / 2;
  bool touches = false;
  for (const auto& p : h.regions[4].pieces) touches = touches || contains(p, mid);
  CHECK(touches);
}

TEST_CASE("sampled interior points belong to their least-slope winner") {
  const auto& h = fixtures::heptagon();
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> w(1, 1000);
  int checked = 0;
  for (size_t i = 0; i < h.regions.size(); ++i) {
    for (const auto& p : h.regions[i].pieces) {
      for (int k = 0; k < 20; ++k) {
        // random convex combination of the vertices
        FieldElement total;
        Vec pt(q(0), q(0));
        for (const auto& vtx : p.vertices) {
          const FieldElement c = q(w(rng));
          pt += vtx * c;
          total += c;
        }
        pt /= total;
        CHECK(winner_index_at(h.records, pt) == static_cast<int>(i));
        ++checked;
      }
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("regions meet the top edge in their winning intervals") {
  const auto& h = fixtures::heptagon();
  for (const auto& r : h.regions) {
    FieldElement lo = h.omega.a_right, hi = h.omega.a_left;
    for (const auto& p : r.pieces)
      for (const auto& v : p.vertices)
        if (v.y() == q(1)) {
          if (v.x() < lo) lo = v.x();
          if (v.x() > hi) hi = v.x();
        }
    CHECK(lo == r.record.interval.lo);
    CHECK(hi == r.record.interval.hi);
  }
}

TEST_CASE("an incomplete winner list leaves Omega uncovered") {
  const auto& h = fixtures::heptagon();
  std::vector<WinnerRecord> partial(h.records.begin(), h.records.end() - 1);
  CHECK_THROWS_AS(subdivide(h.omega, partial), Error);
}
