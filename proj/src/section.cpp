#include "slopegap/section.hpp"

namespace slopegap {

namespace {
constexpr const char* kModule = "section";
}

Transversal build_transversal(const CuspData& cusp) {
  if (sign(cusp.y0) <= 0) throw config_error(kModule, "cusp y0 must be positive");
  if (sign(cusp.x0) <= 0) throw config_error(kModule, "cusp x0 must be positive");
  if (sign(cusp.alpha) <= 0) throw config_error(kModule, "cusp alpha must be positive");
  if (cusp.n != 1 && cusp.n != 2) throw config_error(kModule, "cusp n must be 1 or 2");
  if (cusp.C != Mat::Identity())
    throw config_error(kModule, "only C = identity is supported for the transversal");
  Transversal t;
  t.cusp = cusp;
  const FieldElement top_left = (cusp.x0 - 1) / cusp.y0;
  t.a_left = top_left;
  t.a_right = top_left + cusp.alpha * cusp.n;
  t.omega.vertices = {Vec(FieldElement(-1) / cusp.y0, FieldElement(0)), Vec(t.a_right, FieldElement(1)),
                      Vec(t.a_left, FieldElement(1))};
  // left edge is the line b*x0 - a*y0 = 1
  for (size_t i : {size_t{0}, size_t{2}})
    if (strip_value(Vec(cusp.x0, cusp.y0), t.omega.vertices[i]) != FieldElement(1))
      throw computation_error(kModule, "left edge of Omega off the strip boundary");
  return t;
}

Transversal restrict_top_edge(Transversal t, const FieldElement& a_left) {
  if (a_left < t.a_left || a_left >= t.a_right)
    throw config_error(kModule, "restricted A^L must lie inside the original top edge");
  t.a_left = a_left;
  return t;
}

bool is_left_candidate(const Vec& v, const Vec& pt) {
  if (sign(v.y()) <= 0) return false;
  const FieldElement s = strip_value(v, pt);
  return sign(s) >= 0 && sign(s - 1) < 0;
}

bool is_candidate(const Vec& v, const Vec& pt) {
  if (sign(v.y()) <= 0) return false;
  const FieldElement s = strip_value(v, pt);
  return sign(s) > 0 && sign(s - 1) <= 0;
}

CandidacyInterval candidacy_interval_left(const Vec& v) {
  if (sign(v.y()) <= 0) throw computation_error(kModule, "candidacy interval needs y > 0");
  return {(v.x() - 1) / v.y(), v.x() / v.y()};
}

FieldElement return_time(const Vec& v, const Vec& pt) {
  const FieldElement s = strip_value(v, pt);
  if (sign(s) <= 0) throw computation_error(kModule, "return time undefined where bx - ay <= 0");
  if (sign(pt.y()) <= 0) throw computation_error(kModule, "return time undefined for b <= 0");
  return v.y() / (pt.y() * s);
}

std::vector<HalfPlane<FieldElement>> strip_halfplanes(const Vec& v) {
  // bx - ay >= 0  and  1 - (bx - ay) >= 0, in the (a,b) plane
  return {{-v.y(), v.x(), FieldElement(0), false}, {v.y(), -v.x(), FieldElement(1), false}};
}

}  // namespace slopegap
