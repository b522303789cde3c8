#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "slopegap/config.hpp"
#include "slopegap/distribution.hpp"
#include "slopegap/subdivision.hpp"
#include "slopegap/winners.hpp"

// Lets doctest print field values (and Eigen vectors of them) on failure.
namespace slopegap {
inline std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << to_decimal(e, 12); }
}  // namespace slopegap

namespace fixtures {

inline std::string config(const std::string& name) { return std::string(SLOPEGAP_CONFIG_DIR) + "/" + name; }

// Built once per test binary; the sweep and subdivision are the slow part.
struct Heptagon {
  slopegap::SurfaceConfig cfg;
  slopegap::Transversal omega;
  std::vector<slopegap::WinnerRecord> records;
  std::vector<slopegap::WinnerRegion> regions;
  slopegap::PiecewiseDistribution dist;

  slopegap::FieldElement ev(const std::string& e) const { return slopegap::eval_expr(*cfg.field, e); }
  slopegap::Vec vec(const std::string& x, const std::string& y) const { return slopegap::Vec(ev(x), ev(y)); }
  const slopegap::StaircaseSurface& surface() const { return cfg.surface; }
};

inline const Heptagon& heptagon() {
  static const Heptagon h = [] {
    Heptagon r;
    r.cfg = slopegap::load_config(config("double_heptagon.json"));
    r.omega = slopegap::build_transversal(r.cfg.cusp);
    r.records = slopegap::sweep_winners(r.cfg.surface, r.omega, r.cfg.search);
    r.regions = slopegap::subdivide(r.omega, r.records);
    r.dist = slopegap::build_distribution(r.regions, r.omega, 40);
    return r;
  }();
  return h;
}

// Heptagon winners w1..w5 and the right endpoints a1..a5 of their intervals.
inline const char* const kWinners[5][2] = {{"2 + 3*cos(2*pi/7)", "sin(2*pi/7)"},
                                           {"4*cos(pi/7) + 3*cos(3*pi/7)", "sin(3*pi/7)"},
                                           {"4*cos(pi/7) + cos(3*pi/7)", "sin(3*pi/7)"},
                                           {"2 + cos(2*pi/7)", "sin(2*pi/7)"},
                                           {"cos(pi/7)", "sin(pi/7)"}};
inline const char* const kEndpoints[5] = {
    "(3*cos(pi/7) - 1)/sin(pi/7)", "(1 + 3*cos(2*pi/7))/sin(2*pi/7)",
    "(4*cos(pi/7) + 3*cos(3*pi/7) - 1)/sin(3*pi/7)", "(4*cos(pi/7) + cos(3*pi/7) - 1)/sin(3*pi/7)",
    "(1 + cos(2*pi/7))/sin(2*pi/7)"};

inline slopegap::Vec winner(int i) { return heptagon().vec(kWinners[i][0], kWinners[i][1]); }
inline slopegap::FieldElement endpoint(int i) { return heptagon().ev(kEndpoints[i]); }

}  // namespace fixtures
