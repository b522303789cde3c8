#pragma once

// Surface configuration files (JSON). Every real number is either a rational
// string "p/q" or an expression over named constants, e.g. "1+l3+l2" or
// "2*cot(pi/7)".

#include <optional>
#include <string>

#include "json.hpp"
#include "slopegap/section.hpp"
#include "slopegap/surface.hpp"

namespace slopegap {

struct SearchConfig {
  Rational initial_box_margin = 1;
  long max_candidates = 200000;
  bool fallback_width_check = true;
  int max_iterations = 64;
};

struct Defaults {
  int precision_digits = 50;
  double t_min = 0.2, t_max = 6.0;
  int samples = 500;
  double radius = 40;
};

struct SurfaceConfig {
  std::string name;
  std::string path;
  FieldPtr field;
  StaircaseSurface surface;
  CuspData cusp;
  SearchConfig search;
  Defaults defaults;
  /// Area of the surface in its original (unsheared) coordinates, if declared.
  std::optional<FieldElement> original_area;
  /// Expected covolume divided by pi^2, if declared.
  std::optional<Rational> volume_over_pi2;
};

/// Environment variable naming a default config path.
inline constexpr const char* kConfigEnv = "SLOPEGAP_CONFIG";

SurfaceConfig load_config(const std::string& path);
SurfaceConfig parse_config(const nlohmann::json& j, const std::string& origin = "<memory>");

/// Evaluates an expression in the field: + - * / ^ (integer exponent),
/// parentheses, integers, constant names and trig names like cos(3*pi/14).
FieldElement eval_expr(const NumberField& field, const std::string& expr);

/// Exact rational from "p/q", "p" or a JSON integer.
Rational parse_rational(const nlohmann::json& v);

}  // namespace slopegap
