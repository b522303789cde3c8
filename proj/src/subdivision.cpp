#include "slopegap/subdivision.hpp"

namespace slopegap {

namespace {
constexpr const char* kModule = "subdivision";
}

std::vector<WinnerRegion> subdivide(const Transversal& transversal, const std::vector<WinnerRecord>& records) {
  std::vector<WinnerRegion> out;
  FieldElement total;
  for (size_t i = 0; i < records.size(); ++i) {
    const Vec& w = records[i].vector;
    std::vector<ConvexPolygon<FieldElement>> pieces;
    auto first = clip(transversal.omega, strip_halfplanes(w));
    if (!first.empty()) pieces.push_back(std::move(first));
    for (size_t j = 0; j < records.size() && !pieces.empty(); ++j) {
      if (j == i || !winner_less(records[j].vector, w)) continue;
      const auto hp = strip_halfplanes(records[j].vector);
      std::vector<ConvexPolygon<FieldElement>> next;
      for (const auto& p : pieces) {
        // keep what lies outside the dominating strip: two disjoint sides
        for (const auto& h : hp) {
          auto q = clip(p, h.complement());
          if (!q.empty()) next.push_back(std::move(q));
        }
      }
      pieces = std::move(next);
    }
    WinnerRegion r{records[i], std::move(pieces), FieldElement()};
    for (const auto& p : r.pieces) r.area += area(p);
    total += r.area;
    out.push_back(std::move(r));
  }
  const FieldElement full = area(transversal.omega);
  if (total != full)
    throw computation_error(kModule, "regions cover area " + to_decimal(total, 12) + " of Omega's " +
                                         to_decimal(full, 12) + "; the winner list is incomplete");
  return out;
}

int winner_index_at(const std::vector<WinnerRecord>& records, const Vec& pt) {
  int best = -1;
  for (size_t i = 0; i < records.size(); ++i) {
    const FieldElement s = strip_value(records[i].vector, pt);
    if (sign(s) < 0 || sign(s - 1) > 0) continue;
    if (best < 0 || winner_less(records[i].vector, records[static_cast<size_t>(best)].vector))
      best = static_cast<int>(i);
  }
  return best;
}

}  // namespace slopegap
