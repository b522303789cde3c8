#include <fstream>

#include "fixtures.hpp"
// after fixtures so doctest sees its stream operator
#include "doctest.h"
#include "slopegap/config.hpp"
#include "slopegap/surface.hpp"

using namespace slopegap;

namespace {

size_t vertex_at(const StaircaseSurface& s, const Vec& p) {
  for (size_t i = 0; i < s.vertices().size(); ++i)
    if (s.vertices()[i] == p) return i;
  FAIL("no vertex at the requested point");
  return 0;
}

nlohmann::json heptagon_json() {
  std::ifstream in(fixtures::config("double_heptagon.json"));
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("config constants match their trigonometric forms") {
  const auto& h = fixtures::heptagon();
  CHECK(h.ev("l1") == FieldElement(1));
  CHECK(h.ev("l2") == h.ev("2*cos(pi/7)"));
  CHECK(h.ev("l3") == h.ev("csc(pi/14)/2"));
  CHECK(h.ev("x0") == h.ev("cos(pi/7)"));
  CHECK(h.ev("y0") == h.ev("sin(pi/7)"));
  CHECK(h.ev("alpha") == h.ev("2*cot(pi/7)"));
  CHECK(h.cfg.cusp.n == 1);
}

TEST_CASE("staircase area matches two unit heptagons") {
  const auto& h = fixtures::heptagon();
  const auto& s = h.surface();
  CHECK(s.area() * det(s.shear_inv()) == h.ev("7/2*cot(pi/7)"));
}

TEST_CASE("mismatched gluing lengths name the offending pair") {
  auto j = heptagon_json();
  j["staircase"]["gluings"][0]["enter"]["x"] = {"0", "l3"};
  try {
    parse_config(j);
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
    CHECK(std::string(e.what()).find("cd-ab") != std::string::npos);
  }
}

TEST_CASE("malformed expressions are config errors") {
  const auto& h = fixtures::heptagon();
  CHECK_THROWS_AS(eval_expr(*h.cfg.field, "cos(pi/7"), Error);
  CHECK_THROWS_AS(eval_expr(*h.cfg.field, "l9"), Error);
  CHECK_THROWS_AS(load_config(fixtures::config("missing.json")), Error);
}

TEST_CASE("the double pentagon loads") {
  const auto cfg = load_config(fixtures::config("double_pentagon.json"));
  CHECK(cfg.surface.rects().size() > 0);
  CHECK(cfg.volume_over_pi2 == Rational(3, 10));
}

TEST_CASE("generate_L on small boxes") {
  const auto& s = fixtures::heptagon().surface();
  const auto small = generate_L(s, FieldElement(1), FieldElement(1));
  CHECK(small.size() == 4);
  for (const auto& p : {Vec(0, 0), Vec(0, 1), Vec(1, 0), Vec(1, 1)})
    CHECK(std::find(small.begin(), small.end(), p) != small.end());
  const auto zero = generate_L(s, FieldElement(0), FieldElement(0));
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == Vec(0, 0));
}

TEST_CASE("tracing along the bottom rectangle's vertical side") {
  const auto& h = fixtures::heptagon();
  const auto& s = h.surface();
  const size_t origin = vertex_at(s, Vec(0, 0));
  CHECK(s.trace(origin, Vec(0, 1)) == TraceResult::exact_hit);
  CHECK(s.trace(origin, Vec(0, 2)) == TraceResult::early_vertex);
  CHECK(s.is_holonomy(Vec(0, 1)));
  CHECK_FALSE(s.is_holonomy(Vec(0, 2)));
  const Vec bad = h.vec("l3", "2");
  for (size_t i = 0; i < s.vertices().size(); ++i) CHECK(s.trace(i, bad) != TraceResult::exact_hit);
  CHECK_FALSE(s.is_holonomy(bad));
  CHECK_THROWS_AS(s.trace(origin, Vec(0, 0)), Error);
}

TEST_CASE("sheared heptagon winners are holonomy vectors") {
  const auto& h = fixtures::heptagon();
  const auto& s = h.surface();
  CHECK(s.is_holonomy(h.vec("l3", "l2")));
  CHECK(s.is_holonomy(h.vec("l2", "l3")));
  for (int i = 0; i < 5; ++i) {
    const Vec m = s.shear() * fixtures::winner(i);
    CHECK(s.is_holonomy(m));
    CHECK(lattice_coords(s.generators(), m.x()).has_value());
    CHECK(lattice_coords(s.generators(), m.y()).has_value());
  }
}

TEST_CASE("exact hits lie in the generator lattice") {
  const auto& s = fixtures::heptagon().surface();
  const FieldElement box(3);
  int hits = 0;
  for (const auto& v : generate_L(s, box, box)) {
    if (v.isZero()) continue;
    if (!s.is_holonomy(v)) continue;
    ++hits;
    for (int k = 0; k < 2; ++k) {
      const auto c = lattice_coords(s.generators(), v[k]);
      REQUIRE(c.has_value());
      for (const auto& n : *c) CHECK(n >= 0);
    }
  }
  CHECK(hits > 5);
}
