#pragma once

// Exact planar primitives. Everything is templated on the scalar so the same
// code runs over FieldElement (the pipeline) and double (quick sanity tests).

#include <algorithm>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "slopegap/error.hpp"
#include "slopegap/realfield.hpp"

namespace slopegap {

template <class Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <class Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

using Vec = Vec2<FieldElement>;
using Mat = Mat2<FieldElement>;

template <class Scalar>
Scalar cross(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

template <class Scalar>
Scalar det(const Mat2<Scalar>& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

template <class Scalar>
Mat2<Scalar> inverse(const Mat2<Scalar>& m) {
  const Scalar d = det(m);
  if (sign(d) == 0) throw computation_error("geometry", "singular matrix");
  Mat2<Scalar> r;
  r << m(1, 1) / d, -m(0, 1) / d, -m(1, 0) / d, m(0, 0) / d;
  return r;
}

enum class Order { less, equal, greater };

/// Slope order for vectors in the upper half plane: v1 has smaller slope than
/// v2 iff x1*y2 > x2*y1.
template <class Scalar>
Order slope_compare(const Vec2<Scalar>& v1, const Vec2<Scalar>& v2) {
  if (sign(v1.y()) <= 0 || sign(v2.y()) <= 0)
    throw computation_error("geometry", "slope comparison needs positive y components");
  const int s = sign(v1.x() * v2.y() - v2.x() * v1.y());
  return s > 0 ? Order::less : (s < 0 ? Order::greater : Order::equal);
}

template <class Scalar>
bool slope_less(const Vec2<Scalar>& v1, const Vec2<Scalar>& v2) {
  return slope_compare(v1, v2) == Order::less;
}

/// Least slope first, then shorter. Total preorder on the upper half plane
/// that is a strict order on distinct vectors.
template <class Scalar>
bool winner_less(const Vec2<Scalar>& v1, const Vec2<Scalar>& v2) {
  switch (slope_compare(v1, v2)) {
    case Order::less: return true;
    case Order::greater: return false;
    default: return sign(v1.squaredNorm() - v2.squaredNorm()) < 0;
  }
}

/// {(a,b) : p*a + q*b + r >= 0}, or > 0 when strict.
template <class Scalar>
struct HalfPlane {
  Scalar p, q, r;
  bool strict = false;

  Scalar eval(const Vec2<Scalar>& pt) const { return p * pt.x() + q * pt.y() + r; }
  bool contains(const Vec2<Scalar>& pt) const {
    const int s = sign(eval(pt));
    return strict ? s > 0 : s >= 0;
  }
  HalfPlane complement() const { return {-p, -q, -r, !strict}; }
};

/// Counterclockwise convex polygon; an empty vertex list is the empty set.
template <class Scalar>
struct ConvexPolygon {
  std::vector<Vec2<Scalar>> vertices;

  bool empty() const { return vertices.empty(); }
  size_t size() const { return vertices.size(); }
};

/// Drops repeated and collinear vertices; collapses degenerate input to empty.
template <class Scalar>
ConvexPolygon<Scalar> prune(std::vector<Vec2<Scalar>> pts) {
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (size_t i = 0; i < pts.size() && pts.size() >= 3; ++i) {
      const auto& prev = pts[(i + pts.size() - 1) % pts.size()];
      const auto& next = pts[(i + 1) % pts.size()];
      if (pts[i] == prev || sign(cross<Scalar>(pts[i] - prev, next - pts[i])) == 0) {
        pts.erase(pts.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (pts.size() < 3) pts.clear();
  return {std::move(pts)};
}

/// Sutherland-Hodgman against one half plane (strictness ignored: closure).
template <class Scalar>
ConvexPolygon<Scalar> clip(const ConvexPolygon<Scalar>& poly, const HalfPlane<Scalar>& hp) {
  if (poly.empty()) return poly;
  std::vector<Vec2<Scalar>> out;
  const size_t n = poly.size();
  std::vector<Scalar> f(n);
  std::vector<int> s(n);
  for (size_t i = 0; i < n; ++i) {
    f[i] = hp.eval(poly.vertices[i]);
    s[i] = sign(f[i]);
  }
  for (size_t i = 0; i < n; ++i) {
    const size_t j = (i + 1) % n;
    if (s[i] >= 0) out.push_back(poly.vertices[i]);
    if (s[i] * s[j] < 0) {
      const Scalar t = f[i] / (f[i] - f[j]);
      out.push_back(poly.vertices[i] + (poly.vertices[j] - poly.vertices[i]) * t);
    }
  }
  return prune(std::move(out));
}

template <class Scalar>
ConvexPolygon<Scalar> clip(ConvexPolygon<Scalar> poly, const std::vector<HalfPlane<Scalar>>& hps) {
  for (const auto& h : hps) {
    if (poly.empty()) break;
    poly = clip(poly, h);
  }
  return poly;
}

template <class Scalar>
Scalar area(const ConvexPolygon<Scalar>& poly) {
  Scalar twice(0);
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) twice += cross(poly.vertices[i], poly.vertices[(i + 1) % n]);
  return twice / Scalar(2);
}

/// v -> m*v + t, re-oriented counterclockwise.
template <class Scalar>
ConvexPolygon<Scalar> map_affine(const ConvexPolygon<Scalar>& poly, const Mat2<Scalar>& m,
                                 const Vec2<Scalar>& t = Vec2<Scalar>(Scalar(0), Scalar(0))) {
  const int d = sign(det(m));
  if (d == 0) throw computation_error("geometry", "map_affine: singular matrix");
  ConvexPolygon<Scalar> out;
  out.vertices.reserve(poly.size());
  for (const auto& v : poly.vertices) out.vertices.push_back(m * v + t);
  if (d < 0) std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

/// Closed membership (boundary included).
template <class Scalar>
bool contains(const ConvexPolygon<Scalar>& poly, const Vec2<Scalar>& pt) {
  const size_t n = poly.size();
  if (n == 0) return false;
  for (size_t i = 0; i < n; ++i) {
    const auto& a = poly.vertices[i];
    const auto& b = poly.vertices[(i + 1) % n];
    if (sign(cross<Scalar>(b - a, pt - a)) < 0) return false;
  }
  return true;
}

/// Axis-aligned bounding box as (min, max).
template <class Scalar>
std::pair<Vec2<Scalar>, Vec2<Scalar>> bounding_box(const ConvexPolygon<Scalar>& poly) {
  Vec2<Scalar> lo = poly.vertices.at(0), hi = poly.vertices.at(0);
  for (const auto& v : poly.vertices) {
    for (int k = 0; k < 2; ++k) {
      if (v[k] < lo[k]) lo[k] = v[k];
      if (v[k] > hi[k]) hi[k] = v[k];
    }
  }
  return {lo, hi};
}

}  // namespace slopegap
