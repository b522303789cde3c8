#include "slopegap/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <thread>

#include "slopegap/section.hpp"

namespace slopegap {

namespace {

constexpr const char* kModule = "oracle";

struct Item {
  size_t rect;
  Vec offset;  // developed position = rectangle-local position + offset
  Vec lo, hi;  // open wedge of directions from the start vertex
};

bool in_open(const Vec& lo, const Vec& hi, const Vec& d) { return sign(cross(lo, d)) > 0 && sign(cross(d, hi)) > 0; }
bool in_closed(const Vec& lo, const Vec& hi, const Vec& d) {
  return sign(cross(lo, d)) >= 0 && sign(cross(d, hi)) >= 0;
}

Vec axis(int x, int y) { return Vec(FieldElement(x), FieldElement(y)); }

// Directions into rectangle r from boundary point p, counterclockwise.
std::pair<Vec, Vec> sector(const Rect& r, const Vec& p) {
  const int bx = p.x() == r.lo.x() ? -1 : p.x() == r.hi.x() ? 1 : 0;
  const int by = p.y() == r.lo.y() ? -1 : p.y() == r.hi.y() ? 1 : 0;
  if (bx == -1 && by == -1) return {axis(1, 0), axis(0, 1)};
  if (bx == 1 && by == -1) return {axis(0, 1), axis(-1, 0)};
  if (bx == 1 && by == 1) return {axis(-1, 0), axis(0, -1)};
  if (bx == -1 && by == 1) return {axis(0, -1), axis(1, 0)};
  if (by == -1) return {axis(1, 0), axis(-1, 0)};
  if (by == 1) return {axis(-1, 0), axis(1, 0)};
  if (bx == -1) return {axis(0, -1), axis(0, 1)};
  return {axis(0, 1), axis(0, -1)};
}

class WedgeWalker {
 public:
  WedgeWalker(const StaircaseSurface& s, const Vec& lo, const Vec& hi, const Vec& phi, const FieldElement& bound,
              std::atomic<long>& steps, long max_steps)
      : s_(s), lo_(lo), hi_(hi), phi_(phi), bound_(bound), steps_(steps), max_steps_(max_steps) {}

  // Every saddle connection leaving vertex v inside rectangle r's sector.
  std::vector<Vec> run(size_t v, size_t r) {
    out_.clear();
    stack_.clear();
    const Rect& R = s_.rects()[r];
    const Vec& p = s_.vertices()[v];
    const auto [slo, shi] = sector(R, p);
    // the sector's first side belongs to this sector alone
    if (in_open(lo_, hi_, slo)) {
      std::optional<Vec> best;
      for (size_t w : s_.rect_vertices(r)) {
        const Vec d = s_.vertices()[w] - p;
        if (!cross(slo, d).is_zero() || sign(d.dot(slo)) <= 0) continue;
        if (!best || d.dot(slo) < best->dot(slo)) best = d;
      }
      if (best) record(*best);
    }
    std::optional<Vec> a, b;
    if (in_closed(slo, shi, lo_))
      a = lo_;
    else if (in_closed(lo_, hi_, slo))
      a = slo;
    if (in_closed(slo, shi, hi_))
      b = hi_;
    else if (in_closed(lo_, hi_, shi))
      b = shi;
    if (!a || !b || sign(cross(*a, *b)) <= 0) return out_;
    stack_.push_back({r, -p, *a, *b});
    while (!stack_.empty()) {
      Item it = std::move(stack_.back());
      stack_.pop_back();
      step(it);
    }
    return out_;
  }

 private:
  FieldElement level(const Vec& q) const { return phi_.dot(q); }
  void record(const Vec& q) {
    if (level(q) <= bound_) out_.push_back(q);
  }

  void step(const Item& it) {
    if (++steps_ > max_steps_)
      throw computation_error(kModule, "enumeration exceeded " + std::to_string(max_steps_) +
                                           " rectangle visits; use a smaller radius");
    const Rect& R = s_.rects()[it.rect];
    const auto& rv = s_.rect_vertices(it.rect);
    std::vector<Vec> crit;
    for (size_t w : rv) {
      const Vec q = s_.vertices()[w] + it.offset;
      if (in_open(it.lo, it.hi, q)) crit.push_back(q);
    }
    for (const auto& q : crit) record(q);
    std::sort(crit.begin(), crit.end(), [](const Vec& x, const Vec& y) { return sign(cross(x, y)) > 0; });
    crit.insert(crit.begin(), it.lo);
    crit.push_back(it.hi);

    const Vec origin = -it.offset;
    for (size_t i = 0; i + 1 < crit.size(); ++i) {
      const Vec rep = crit[i] + crit[i + 1];
      std::optional<FieldElement> sx, sy;
      if (sign(rep.x()) > 0) sx = (R.hi.x() - origin.x()) / rep.x();
      if (sign(rep.x()) < 0) sx = (R.lo.x() - origin.x()) / rep.x();
      if (sign(rep.y()) > 0) sy = (R.hi.y() - origin.y()) / rep.y();
      if (sign(rep.y()) < 0) sy = (R.lo.y() - origin.y()) / rep.y();
      const bool exit_x = sx && (!sy || *sx < *sy);
      const Vec x = origin + rep * (exit_x ? *sx : *sy);
      // the elementary segment of that side holding x
      const int k = exit_x ? 1 : 0;  // coordinate running along the side
      std::optional<FieldElement> below, above;
      for (size_t w : rv) {
        const Vec& q = s_.vertices()[w];
        if (q[1 - k] != x[1 - k]) continue;
        if (q[k] < x[k] && (!below || q[k] > *below)) below = q[k];
        if (q[k] > x[k] && (!above || q[k] < *above)) above = q[k];
      }
      if (!below || !above) throw computation_error(kModule, "exit point outside its rectangle side");
      Vec ea = x, eb = x;
      ea[k] = *below;
      eb[k] = *above;
      if (level(ea + it.offset) > bound_ && level(eb + it.offset) > bound_) continue;
      Vec entered = x;
      const int nr = s_.cross_boundary(entered, rep, 1, exit_x);
      stack_.push_back({static_cast<size_t>(nr), it.offset + x - entered, crit[i], crit[i + 1]});
    }
  }

  const StaircaseSurface& s_;
  Vec lo_, hi_, phi_;
  FieldElement bound_;
  std::atomic<long>& steps_;
  long max_steps_;
  std::vector<Item> stack_;
  std::vector<Vec> out_;
};

}  // namespace

std::vector<Vec> enumerate_in_wedge(const StaircaseSurface& surface, const DirectionWedge& wedge, const Vec& phi,
                                    const FieldElement& bound, const EnumerationLimits& limits) {
  if (sign(cross(wedge.lo, wedge.hi)) <= 0) throw computation_error(kModule, "wedge must open counterclockwise");
  if (sign(phi.dot(wedge.lo)) <= 0 || sign(phi.dot(wedge.hi)) <= 0)
    throw computation_error(kModule, "bounding functional must be positive on the wedge");
  const Mat& m = surface.shear();
  Vec lo = m * wedge.lo, hi = m * wedge.hi;
  if (sign(det(m)) < 0) std::swap(lo, hi);
  // phi . v = phi . M^-1 v'
  const Vec phi_s = surface.shear_inv().transpose() * phi;

  std::vector<std::pair<size_t, size_t>> starts;
  for (size_t v = 0; v < surface.vertices().size(); ++v)
    for (size_t r = 0; r < surface.rects().size(); ++r) {
      const auto& rv = surface.rect_vertices(r);
      if (std::find(rv.begin(), rv.end(), v) != rv.end()) starts.emplace_back(v, r);
    }

  std::vector<std::vector<Vec>> found(starts.size());
  std::atomic<long> steps{0};
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    WedgeWalker walker(surface, lo, hi, phi_s, bound, steps, limits.max_steps);
    for (size_t i; (i = next++) < starts.size();) {
      try {
        found[i] = walker.run(starts[i].first, starts[i].second);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = starts.size();
      }
    }
  };
  const int n = std::max(1, limits.threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<Vec> out;
  for (const auto& f : found)
    for (const auto& q : f) out.push_back(surface.shear_inv() * q);
  // clockwise first, then shorter; agrees with winner_less when y > 0
  std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
    const int c = sign(cross(a, b));
    if (c != 0) return c > 0;
    return a.squaredNorm() < b.squaredNorm();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vec> enumerate_saddle_connections(const StaircaseSurface& surface, const FieldElement& R,
                                              const EnumerationLimits& limits) {
  if (sign(R) <= 0) throw computation_error(kModule, "radius must be positive");
  // slightly wider than the closed cone, trimmed exactly below
  const DirectionWedge wedge{axis(100, -1), axis(100, 101)};
  auto all = enumerate_in_wedge(surface, wedge, axis(1, 0), R, limits);
  std::vector<Vec> out;
  for (const auto& v : all)
    if (sign(v.y()) >= 0 && v.y() <= v.x()) out.push_back(v);
  return out;
}

EmpiricalGaps gaps_from_vectors(const std::vector<Vec>& vectors, const FieldElement& R) {
  EmpiricalGaps e;
  e.radius = to_double(R);
  e.connections = vectors.size();
  for (const auto& v : vectors) {
    if (sign(v.x()) <= 0) throw computation_error(kModule, "slope needs a positive horizontal part");
    e.slopes.push_back(v.y() / v.x());
  }
  std::sort(e.slopes.begin(), e.slopes.end());
  e.slopes.erase(std::unique(e.slopes.begin(), e.slopes.end()), e.slopes.end());
  if (e.slopes.size() < 2) throw computation_error(kModule, "fewer than two slopes; use a larger radius");
  const FieldElement r2 = R * R;
  for (size_t i = 0; i + 1 < e.slopes.size(); ++i) e.gaps.push_back(to_double(r2 * (e.slopes[i + 1] - e.slopes[i])));
  return e;
}

EmpiricalGaps empirical_gaps(const StaircaseSurface& surface, const FieldElement& R, const EnumerationLimits& limits) {
  return gaps_from_vectors(enumerate_saddle_connections(surface, R, limits), R);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& F) {
  if (samples.empty()) throw computation_error(kModule, "no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (size_t i = 0; i < samples.size(); ++i) {
    // ties: only the last copy of a value is a jump point of F_n
    if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
    size_t first = i;
    while (first > 0 && samples[first - 1] == samples[i]) --first;
    const double f = F(samples[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(first) / n)});
  }
  return d;
}

double ks_distance(const EmpiricalGaps& emp, const PiecewiseDistribution& dist) {
  return ks_distance(emp.gaps, [&](double t) { return static_cast<double>(cdf(dist, Real(t))); });
}

Vec brute_winner_at(const Vec& point, const StaircaseSurface& surface, const FieldElement& length_bound,
                    const EnumerationLimits& limits) {
  if (sign(point.y()) <= 0) throw computation_error(kModule, "winner point needs b > 0");
  // left candidates point at angles in (0, angle(point)]
  const DirectionWedge wedge{axis(1, 0), point + Vec(-point.y(), point.x()) / FieldElement(100)};
  // strip value plus y: positive on the wedge, and at most 1 + y on candidates
  const Vec phi(point.y(), FieldElement(1) - point.x());
  const auto all = enumerate_in_wedge(surface, wedge, phi, length_bound + 1, limits);
  for (const auto& v : all)  // already in winner order
    if (is_left_candidate(v, point) && v.y() <= length_bound) return v;
  throw computation_error(kModule, "no left candidate with y <= " + to_decimal(length_bound, 3) +
                                       "; increase the length bound");
}

}  // namespace slopegap
