#pragma once

// The transversal triangle Omega in rotated (a,b) coordinates, its top edge
// A^L, the candidacy predicates and the return time.

#include "slopegap/geometry.hpp"

namespace slopegap {

struct CuspData {
  FieldElement x0, y0, alpha;
  int n = 1;
  Mat C = Mat::Identity();
};

/// Half-open interval (lo, hi].
struct CandidacyInterval {
  FieldElement lo, hi;
  bool contains(const FieldElement& a) const { return a > lo && a <= hi; }
};

struct Transversal {
  CuspData cusp;
  ConvexPolygon<FieldElement> omega;  ///< apex, top-right, top-left
  FieldElement a_left, a_right;       ///< A^L = (a_left, a_right] on b = 1

  Vec apex() const { return omega.vertices[0]; }
  Vec top_point(const FieldElement& a) const { return Vec(a, FieldElement(1)); }
  /// Omega's own top edge, unaffected by restrict_top_edge.
  FieldElement omega_a_left() const { return omega.vertices[2].x(); }
};

Transversal build_transversal(const CuspData& cusp);
/// Same Omega with A^L shortened to (a_left, a_right].
Transversal restrict_top_edge(Transversal t, const FieldElement& a_left);

/// b*x - a*y, the quantity the candidacy conditions bound.
inline FieldElement strip_value(const Vec& v, const Vec& pt) { return pt.y() * v.x() - pt.x() * v.y(); }

/// 0 <= bx - ay < 1 and y > 0.
bool is_left_candidate(const Vec& v, const Vec& pt);
/// 0 < bx - ay <= 1 and y > 0.
bool is_candidate(const Vec& v, const Vec& pt);

/// ((x-1)/y, x/y].
CandidacyInterval candidacy_interval_left(const Vec& v);

/// y / (b (bx - ay)).
FieldElement return_time(const Vec& v, const Vec& pt);

/// The closed candidacy strip {0 <= bx - ay <= 1} as two half planes.
std::vector<HalfPlane<FieldElement>> strip_halfplanes(const Vec& v);

}  // namespace slopegap
