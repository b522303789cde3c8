#include "slopegap/surface.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace slopegap {

namespace {

constexpr const char* kModule = "surface";

std::string show(const Vec& v) {
  std::ostringstream os;
  os << "(" << to_decimal(v.x(), 6) << ", " << to_decimal(v.y(), 6) << ")";
  return os.str();
}

bool lex_positive(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
  if (int s = sign(a)) return s > 0;
  if (int s = sign(b)) return s > 0;
  return sign(c) > 0;
}

// Closed rectangle boundary membership: 0 outside, 1 corner, 2 edge interior.
int boundary_kind(const Rect& r, const Vec& p) {
  const int sx0 = sign(p.x() - r.lo.x()), sx1 = sign(r.hi.x() - p.x());
  const int sy0 = sign(p.y() - r.lo.y()), sy1 = sign(r.hi.y() - p.y());
  if (sx0 < 0 || sx1 < 0 || sy0 < 0 || sy1 < 0) return 0;
  const bool on_x = sx0 == 0 || sx1 == 0;
  const bool on_y = sy0 == 0 || sy1 == 0;
  if (on_x && on_y) return 1;
  if (on_x || on_y) return 2;
  return 0;
}

// Point strictly inside the segment start + [0, len] * axis.
bool on_open_segment(const Vec& p, const Vec& start, const FieldElement& len, bool vertical) {
  const int k = vertical ? 1 : 0;
  if (p[1 - k] != start[1 - k]) return false;
  return sign(p[k] - start[k]) > 0 && sign(start[k] + len - p[k]) > 0;
}

bool on_closed_segment(const Vec& p, const Vec& start, const FieldElement& len, bool vertical) {
  const int k = vertical ? 1 : 0;
  if (p[1 - k] != start[1 - k]) return false;
  return sign(p[k] - start[k]) >= 0 && sign(start[k] + len - p[k]) >= 0;
}

FieldElement overlap(const FieldElement& a0, const FieldElement& a1, const FieldElement& b0,
                     const FieldElement& b1) {
  const FieldElement lo = a0 > b0 ? a0 : b0;
  const FieldElement hi = a1 < b1 ? a1 : b1;
  return hi - lo;
}

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t{0}); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

void check_boundary(const std::vector<Rect>& rects, const std::vector<Gluing>& gluings) {
  // side: 0 bottom, 1 top, 2 left, 3 right
  for (size_t ri = 0; ri < rects.size(); ++ri) {
    const Rect& r = rects[ri];
    for (int side = 0; side < 4; ++side) {
      const bool vertical = side >= 2;  // the side itself runs along y
      const int k = vertical ? 1 : 0;   // coordinate along the side
      const FieldElement line = (side == 0) ? r.lo.y() : side == 1 ? r.hi.y() : side == 2 ? r.lo.x() : r.hi.x();
      const FieldElement s0 = r.lo[k], s1 = r.hi[k];
      struct Cover { FieldElement a, b; std::string what; };
      std::vector<Cover> covers;
      for (size_t oj = 0; oj < rects.size(); ++oj) {
        if (oj == ri) continue;
        const Rect& o = rects[oj];
        // the opposite side of o lies on the same line
        const FieldElement oline = (side == 0) ? o.hi.y() : side == 1 ? o.lo.y() : side == 2 ? o.hi.x() : o.lo.x();
        if (oline != line) continue;
        if (sign(overlap(s0, s1, o.lo[k], o.hi[k])) > 0)
          covers.push_back({o.lo[k], o.hi[k], "rectangle " + std::to_string(oj)});
      }
      for (const auto& g : gluings) {
        if (g.vertical != vertical) continue;
        // top/right sides are exits, bottom/left are entries
        const bool exit_side = side == 1 || side == 3;
        const Vec& st = exit_side ? g.exit_start : g.enter_start;
        if (st[1 - k] != line) continue;
        if (sign(overlap(s0, s1, st[k], st[k] + g.length)) > 0)
          covers.push_back({st[k], st[k] + g.length, "gluing " + g.name});
      }
      std::vector<FieldElement> cuts{s0, s1};
      for (const auto& c : covers) {
        if (c.a > s0 && c.a < s1) cuts.push_back(c.a);
        if (c.b > s0 && c.b < s1) cuts.push_back(c.b);
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const FieldElement mid = (cuts[i] + cuts[i + 1]) / FieldElement(2);
        std::vector<std::string> hits;
        for (const auto& c : covers)
          if (c.a < mid && mid < c.b) hits.push_back(c.what);
        if (hits.size() != 1) {
          static const char* names[] = {"bottom", "top", "left", "right"};
          std::ostringstream os;
          os << names[side] << " side of rectangle " << ri << " near " << to_decimal(mid, 6) << " is ";
          if (hits.empty()) {
            os << "neither shared with a rectangle nor glued";
          } else {
            os << "covered more than once:";
            for (const auto& h : hits) os << ' ' << h;
          }
          throw config_error(kModule, os.str());
        }
      }
    }
  }
  // every gluing segment must sit on the matching kind of side
  for (const auto& g : gluings) {
    auto sits = [&](const Vec& st, bool exit_side) {
      const int k = g.vertical ? 1 : 0;
      for (const auto& r : rects) {
        const FieldElement line = g.vertical ? (exit_side ? r.hi.x() : r.lo.x()) : (exit_side ? r.hi.y() : r.lo.y());
        if (st[1 - k] != line) continue;
        if (st[k] >= r.lo[k] && st[k] + g.length <= r.hi[k]) return true;
      }
      return false;
    };
    if (!sits(g.exit_start, true) || !sits(g.enter_start, false))
      throw config_error(kModule, "gluing " + g.name +
                                      ": each segment must lie within a single rectangle side of the right kind "
                                      "(top/right for the exit, bottom/left for the entry)");
  }
}

}  // namespace

StaircaseSurface StaircaseSurface::build(std::vector<Rect> rects, std::vector<Gluing> gluings,
                                         std::vector<FieldElement> generators, const Mat& shear) {
  StaircaseSurface s;
  if (rects.empty()) throw config_error(kModule, "no rectangles");
  for (size_t i = 0; i < rects.size(); ++i) {
    if (sign(rects[i].width()) <= 0 || sign(rects[i].height()) <= 0)
      throw config_error(kModule, "rectangle " + std::to_string(i) + " has non-positive size");
    for (size_t j = 0; j < i; ++j) {
      const Rect &a = rects[i], &b = rects[j];
      if (sign(overlap(a.lo.x(), a.hi.x(), b.lo.x(), b.hi.x())) > 0 &&
          sign(overlap(a.lo.y(), a.hi.y(), b.lo.y(), b.hi.y())) > 0)
        throw config_error(kModule, "rectangles " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
    }
  }
  for (const auto& g : gluings)
    if (sign(g.length) <= 0) throw config_error(kModule, "gluing " + g.name + " has non-positive length");
  check_boundary(rects, gluings);

  // vertex positions
  std::vector<Vec> verts;
  auto add = [&](const Vec& p) {
    for (const auto& q : verts)
      if (q == p) return;
    verts.push_back(p);
  };
  for (const auto& r : rects) {
    add(r.lo);
    add(Vec(r.hi.x(), r.lo.y()));
    add(r.hi);
    add(Vec(r.lo.x(), r.hi.y()));
  }
  for (const auto& g : gluings) {
    const Vec step = g.vertical ? Vec(FieldElement(0), g.length) : Vec(g.length, FieldElement(0));
    add(g.exit_start);
    add(g.exit_start + step);
    add(g.enter_start);
    add(g.enter_start + step);
  }
  auto index_of = [&](const Vec& p) -> long {
    for (size_t i = 0; i < verts.size(); ++i)
      if (verts[i] == p) return static_cast<long>(i);
    return -1;
  };

  UnionFind uf(verts.size());
  for (const auto& g : gluings) {
    for (size_t i = 0; i < verts.size(); ++i) {
      if (!on_closed_segment(verts[i], g.exit_start, g.length, g.vertical)) continue;
      const long j = index_of(verts[i] + g.shift());
      if (j < 0)
        throw config_error(kModule, "gluing " + g.name + " maps vertex " + show(verts[i]) +
                                        " to " + show(verts[i] + g.shift()) + ", which is not a vertex");
      uf.unite(i, static_cast<size_t>(j));
    }
    for (size_t i = 0; i < verts.size(); ++i) {
      if (on_closed_segment(verts[i], g.enter_start, g.length, g.vertical) && index_of(verts[i] - g.shift()) < 0)
        throw config_error(kModule, "gluing " + g.name + " maps vertex " + show(verts[i]) + " backwards to a non-vertex");
    }
  }

  // cone angles, counted in quarter turns
  std::vector<int> quarter(verts.size(), 0);
  for (size_t i = 0; i < verts.size(); ++i)
    for (const auto& r : rects) quarter[i] += boundary_kind(r, verts[i]);
  std::vector<long> class_of(verts.size(), -1);
  std::vector<size_t> roots;
  for (size_t i = 0; i < verts.size(); ++i) {
    const size_t root = uf.find(i);
    auto it = std::find(roots.begin(), roots.end(), root);
    if (it == roots.end()) {
      roots.push_back(root);
      class_of[i] = static_cast<long>(roots.size() - 1);
    } else {
      class_of[i] = it - roots.begin();
    }
  }
  std::vector<int> angle_quarters(roots.size(), 0);
  for (size_t i = 0; i < verts.size(); ++i) angle_quarters[static_cast<size_t>(class_of[i])] += quarter[i];
  for (size_t c = 0; c < roots.size(); ++c) {
    if (angle_quarters[c] % 4 != 0)
      throw config_error(kModule, "vertex class of " + show(verts[roots[c]]) + " has cone angle " +
                                      std::to_string(angle_quarters[c]) + "*pi/2, not a multiple of 2pi");
    if (angle_quarters[c] == 4)
      throw config_error(kModule, "vertex " + show(verts[roots[c]]) +
                                      " is a regular point (cone angle 2pi); marked points are not supported");
  }

  // lattice check on vertex displacements
  for (size_t i = 1; i < verts.size(); ++i) {
    for (int k = 0; k < 2; ++k) {
      if (!lattice_coords(generators, verts[i][k] - verts[0][k]))
        throw config_error(kModule, "vertex displacement " + show(verts[i] - verts[0]) +
                                        " is not in the lattice spanned by the generators");
    }
  }

  s.rects_ = std::move(rects);
  s.gluings_ = std::move(gluings);
  s.vertices_ = std::move(verts);
  for (auto c : class_of) s.vertex_class_.push_back(static_cast<int>(c));
  for (int q : angle_quarters) s.class_angle_pi_.push_back(q / 2);
  s.rect_vertices_.resize(s.rects_.size());
  for (size_t r = 0; r < s.rects_.size(); ++r)
    for (size_t v = 0; v < s.vertices_.size(); ++v)
      if (boundary_kind(s.rects_[r], s.vertices_[v])) s.rect_vertices_[r].push_back(v);
  s.generators_ = std::move(generators);
  s.shear_ = shear;
  s.shear_inv_ = inverse(shear);
  s.min_width_ = s.min_height_ = INFINITY;
  for (const auto& r : s.rects_) {
    s.min_width_ = std::min(s.min_width_, to_double(r.width()));
    s.min_height_ = std::min(s.min_height_, to_double(r.height()));
  }
  return s;
}

FieldElement StaircaseSurface::area() const {
  FieldElement a;
  for (const auto& r : rects_) a += r.width() * r.height();
  return a;
}

int StaircaseSurface::locate(const Vec& x, const Vec& d, int side) const {
  const Vec perp(-d.y() * side, d.x() * side);
  for (size_t r = 0; r < rects_.size(); ++r) {
    const Rect& R = rects_[r];
    bool inside = true;
    for (int k = 0; k < 2 && inside; ++k) {
      inside = lex_positive(x[k] - R.lo[k], d[k], perp[k]) && lex_positive(R.hi[k] - x[k], -d[k], -perp[k]);
    }
    if (inside) return static_cast<int>(r);
  }
  return -1;
}

std::optional<FieldElement> StaircaseSurface::first_hit(const Vec& start, const Vec& d,
                                                        const FieldElement& s_max, int side) const {
  int r = locate(start, d, side);
  if (r < 0) return std::nullopt;
  const int sdx = sign(d.x()), sdy = sign(d.y());
  if (sdx == 0 && sdy == 0) throw computation_error(kModule, "trace with zero displacement");
  const FieldElement inv_dx = sdx ? FieldElement(1) / d.x() : FieldElement();
  const FieldElement inv_dy = sdy ? FieldElement(1) / d.y() : FieldElement();
  const double budget = to_double(s_max) * (std::abs(to_double(d.x())) / min_width_ +
                                             std::abs(to_double(d.y())) / min_height_);
  const long max_steps = 2 * static_cast<long>(std::ceil(budget)) + 8;

  Vec x = start;
  FieldElement s;
  for (long step = 0; step <= max_steps; ++step) {
    const Rect& R = rects_[static_cast<size_t>(r)];
    std::optional<FieldElement> sx, sy;
    if (sdx > 0) sx = (R.hi.x() - x.x()) * inv_dx;
    if (sdx < 0) sx = (R.lo.x() - x.x()) * inv_dx;
    if (sdy > 0) sy = (R.hi.y() - x.y()) * inv_dy;
    if (sdy < 0) sy = (R.lo.y() - x.y()) * inv_dy;
    const bool exit_x = sx && (!sy || *sx < *sy);
    const FieldElement s_exit = exit_x ? *sx : *sy;

    std::optional<FieldElement> best;
    for (size_t v : rect_vertices_[static_cast<size_t>(r)]) {
      const Vec w = vertices_[v] - x;
      if (!cross(w, d).is_zero()) continue;
      const FieldElement t = sdx ? w.x() * inv_dx : w.y() * inv_dy;
      if (sign(t) <= 0 || t > s_exit) continue;
      if (!best || t < *best) best = t;
    }
    if (best) {
      const FieldElement total = s + *best;
      if (total <= s_max) return total;
      return std::nullopt;
    }
    if (s + s_exit >= s_max) return std::nullopt;

    x += d * s_exit;
    s += s_exit;
    const int nr = cross_boundary(x, d, side, exit_x);
    r = nr;
  }
  throw computation_error(kModule, "trace step limit exceeded for displacement " + show(d * s_max) +
                                       "; gluings are probably inconsistent");
}

int StaircaseSurface::cross_boundary(Vec& x, const Vec& d, int side, bool vertical_side) const {
  int r = locate(x, d, side);
  if (r >= 0) return r;
  const bool forward = vertical_side ? sign(d.x()) > 0 : sign(d.y()) > 0;
  for (const auto& g : gluings_) {
    if (g.vertical != vertical_side) continue;
    if (forward && on_open_segment(x, g.exit_start, g.length, vertical_side)) {
      x += g.shift();
      break;
    }
    if (!forward && on_open_segment(x, g.enter_start, g.length, vertical_side)) {
      x -= g.shift();
      break;
    }
  }
  r = locate(x, d, side);
  if (r < 0) throw computation_error(kModule, "ray leaves the surface at " + show(x) + " with no gluing; bad config");
  return r;
}

TraceResult StaircaseSurface::trace(size_t start_vertex, const Vec& displacement) const {
  if (displacement.x().is_zero() && displacement.y().is_zero())
    throw computation_error(kModule, "trace with zero displacement");
  const Vec& p = vertices_.at(start_vertex);
  for (int side : {1, -1}) {
    if (locate(p, displacement, side) < 0) continue;
    const auto hit = first_hit(p, displacement, FieldElement(1), side);
    if (!hit) return TraceResult::no_hit;
    return *hit == FieldElement(1) ? TraceResult::exact_hit : TraceResult::early_vertex;
  }
  return TraceResult::no_hit;
}

bool StaircaseSurface::is_holonomy(const Vec& v) const {
  if (v.x().is_zero() && v.y().is_zero()) return false;
  for (size_t i = 0; i < vertices_.size(); ++i)
    if (trace(i, v) == TraceResult::exact_hit) return true;
  return false;
}

std::vector<FieldElement> lattice_values(const std::vector<FieldElement>& gens, const FieldElement& bound) {
  std::vector<FieldElement> out;
  if (sign(bound) < 0) return out;
  std::function<void(size_t, const FieldElement&)> rec = [&](size_t i, const FieldElement& acc) {
    if (i == gens.size()) {
      out.push_back(acc);
      return;
    }
    for (FieldElement v = acc; v <= bound; v += gens[i]) rec(i + 1, v);
  };
  rec(0, FieldElement());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vec> generate_L(const StaircaseSurface& s, const FieldElement& x_max, const FieldElement& y_max) {
  const auto xs = lattice_values(s.generators(), x_max);
  const auto ys = lattice_values(s.generators(), y_max);
  std::vector<Vec> out;
  out.reserve(xs.size() * ys.size());
  for (const auto& x : xs)
    for (const auto& y : ys) out.emplace_back(x, y);
  std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
    const bool az = a.x().is_zero() && a.y().is_zero(), bz = b.x().is_zero() && b.y().is_zero();
    if (az || bz) return az && !bz;
    if (int c = sign(cross(a, b))) return c > 0;
    return a.squaredNorm() < b.squaredNorm();
  });
  return out;
}

std::optional<std::vector<Integer>> lattice_coords(const std::vector<FieldElement>& gens, const FieldElement& e) {
  // Solve sum n_i coeffs(g_i) = coeffs(e) over Q by Gaussian elimination.
  size_t d = 1;
  for (const auto& g : gens) d = std::max(d, g.coeffs().size());
  d = std::max(d, e.coeffs().size());
  const size_t m = gens.size();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(m + 1, Rational(0)));
  for (size_t j = 0; j < m; ++j) {
    const auto c = gens[j].coeffs();
    for (size_t i = 0; i < c.size(); ++i) a[i][j] = c[i];
  }
  const auto ce = e.coeffs();
  for (size_t i = 0; i < ce.size(); ++i) a[i][m] = ce[i];
  size_t row = 0;
  std::vector<long> pivot_row(m, -1);
  for (size_t col = 0; col < m && row < d; ++col) {
    size_t p = row;
    while (p < d && a[p][col] == 0) ++p;
    if (p == d) throw config_error(kModule, "generators are linearly dependent over Q");
    std::swap(a[p], a[row]);
    for (size_t i = 0; i < d; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[row][col];
      for (size_t j = col; j <= m; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_row[col] = static_cast<long>(row);
    ++row;
  }
  if (row < m) throw config_error(kModule, "generators are linearly dependent over Q");
  for (size_t i = row; i < d; ++i)
    if (a[i][m] != 0) return std::nullopt;
  std::vector<Integer> out(m);
  for (size_t col = 0; col < m; ++col) {
    const auto& r = a[static_cast<size_t>(pivot_row[col])];
    Rational q = r[m] / r[col];
    q.canonicalize();
    if (q.get_den() != 1) return std::nullopt;
    out[col] = q.get_num();
  }
  return out;
}

}  // namespace slopegap
