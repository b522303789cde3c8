#include "slopegap/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace slopegap {

namespace {

constexpr const char* kModule = "config";
using nlohmann::json;

class ExprParser {
 public:
  ExprParser(const NumberField& f, const std::string& s) : f_(f), s_(s) {}

  FieldElement parse() {
    FieldElement v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw config_error(kModule, "expression \"" + s_ + "\" at " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  FieldElement sum() {
    FieldElement v = product();
    for (;;) {
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }
  FieldElement product() {
    FieldElement v = unary();
    for (;;) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }
  FieldElement unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  FieldElement power() {
    FieldElement base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = eat('-');
    skip();
    const size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer");
    const long e = std::stol(s_.substr(start, pos_ - start));
    FieldElement r(1);
    for (long i = 0; i < e; ++i) r *= base;
    return neg ? r.inverse() : r;
  }
  FieldElement atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return FieldElement(Rational(Integer(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      static const char* trig[] = {"cos", "sin", "tan", "cot", "sec", "csc"};
      bool is_trig = false;
      for (const char* t : trig) is_trig |= name == t;
      if (is_trig && pos_ < s_.size() && s_[pos_] == '(') {
        const size_t close = s_.find(')', pos_);
        if (close == std::string::npos) fail("missing ')'");
        std::string inner;
        for (size_t i = pos_ + 1; i < close; ++i)
          if (!std::isspace(static_cast<unsigned char>(s_[i]))) inner += s_[i];
        pos_ = close + 1;
        name += "(" + inner + ")";
      }
      return f_.constant(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const NumberField& f_;
  const std::string& s_;
  size_t pos_ = 0;
};

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw config_error(kModule, where + ": missing key '" + key + "'");
  return j.at(key);
}

std::string as_expr(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw config_error(kModule, where + ": expected an expression string or integer");
}

}  // namespace

FieldElement eval_expr(const NumberField& field, const std::string& expr) {
  return ExprParser(field, expr).parse();
}

Rational parse_rational(const json& v) {
  try {
    if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
    if (v.is_string()) {
      Rational q(v.get<std::string>());
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  throw config_error(kModule, "not an exact rational: " + v.dump());
}

SurfaceConfig parse_config(const json& j, const std::string& origin) {
  try {
    SurfaceConfig cfg;
    cfg.path = origin;
    cfg.name = j.value("name", "unnamed");

    // field
    const json& jf = need(j, "field", "config");
    FieldSpec spec;
    for (const auto& c : need(jf, "min_poly", "field")) spec.min_poly.push_back(Integer(parse_rational(c)));
    const json& ri = need(jf, "root_interval", "field");
    if (!ri.is_array() || ri.size() != 2) throw config_error(kModule, "field.root_interval must be [lo, hi]");
    spec.root_lo = parse_rational(ri[0]);
    spec.root_hi = parse_rational(ri[1]);
    spec.trig_base = jf.value("trig_base", 0);
    std::vector<std::pair<std::string, std::string>> expr_constants;
    if (jf.contains("constants")) {
      for (const auto& [name, val] : jf.at("constants").items()) {
        if (val.is_array()) {
          std::vector<Rational> coeffs;
          for (const auto& c : val) coeffs.push_back(parse_rational(c));
          spec.constants[name] = coeffs;
        } else {
          expr_constants.emplace_back(name, as_expr(val, "field.constants." + name));
        }
      }
    }
    auto field = NumberField::create(spec);
    // expression constants may refer to each other in file order
    for (const auto& [name, expr] : expr_constants) {
      spec.constants[name] = eval_expr(*field, expr).coeffs();
      field = NumberField::create(spec);
    }
    cfg.field = field;
    auto ev = [&](const json& v, const std::string& where) { return eval_expr(*field, as_expr(v, where)); };

    // shear
    const json& js = need(j, "shear", "config");
    if (!js.is_array() || js.size() != 2 || js[0].size() != 2 || js[1].size() != 2)
      throw config_error(kModule, "shear must be a 2x2 array");
    Mat shear;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) shear(r, c) = ev(js[r][c], "shear");
    if (sign(det(shear)) == 0) throw config_error(kModule, "shear matrix is singular");

    // generators
    std::vector<FieldElement> gens;
    for (const auto& g : need(j, "generators", "config")) {
      gens.push_back(ev(g, "generators"));
      if (sign(gens.back()) <= 0) throw config_error(kModule, "generators must be positive");
    }

    // staircase
    const json& st = need(j, "staircase", "config");
    std::vector<Rect> rects;
    for (const auto& jr : need(st, "rectangles", "staircase")) {
      const std::string nm = jr.value("name", "rectangle");
      const json& xs = need(jr, "x", nm);
      const json& ys = need(jr, "y", nm);
      rects.push_back({Vec(ev(xs.at(0), nm), ev(ys.at(0), nm)), Vec(ev(xs.at(1), nm), ev(ys.at(1), nm))});
    }
    std::vector<Gluing> gluings;
    for (const auto& jg : need(st, "gluings", "staircase")) {
      Gluing g;
      g.name = jg.value("name", "gluing");
      const std::string kind = need(jg, "kind", g.name).get<std::string>();
      if (kind != "horizontal" && kind != "vertical")
        throw config_error(kModule, "gluing " + g.name + ": kind must be horizontal or vertical");
      g.vertical = kind == "vertical";
      const char* along = g.vertical ? "y" : "x";
      const char* across = g.vertical ? "x" : "y";
      auto seg = [&](const char* key, Vec& start) {
        const json& js2 = need(jg, key, g.name);
        const json& span = need(js2, along, g.name + "." + key);
        const FieldElement a = ev(span.at(0), g.name), b = ev(span.at(1), g.name);
        const FieldElement c = ev(need(js2, across, g.name + "." + key), g.name);
        start = g.vertical ? Vec(c, a) : Vec(a, c);
        return b - a;
      };
      const FieldElement len_exit = seg("exit", g.exit_start);
      const FieldElement len_enter = seg("enter", g.enter_start);
      if (len_exit != len_enter)
        throw config_error(kModule, "gluing " + g.name + ": segment lengths differ (" + to_decimal(len_exit, 6) +
                                        " vs " + to_decimal(len_enter, 6) + ")");
      g.length = len_exit;
      gluings.push_back(std::move(g));
    }
    cfg.surface = StaircaseSurface::build(std::move(rects), std::move(gluings), gens, shear);

    // cusp
    const json& jc = need(j, "cusp", "config");
    cfg.cusp.x0 = ev(need(jc, "x0", "cusp"), "cusp.x0");
    cfg.cusp.y0 = ev(need(jc, "y0", "cusp"), "cusp.y0");
    cfg.cusp.alpha = ev(need(jc, "alpha", "cusp"), "cusp.alpha");
    cfg.cusp.n = jc.value("n", 1);
    if (jc.contains("C")) {
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) cfg.cusp.C(r, c) = ev(jc["C"][r][c], "cusp.C");
    }
    (void)build_transversal(cfg.cusp);
    const Vec mv = shear * Vec(cfg.cusp.x0, cfg.cusp.y0);
    if (!mv.x().is_zero() || sign(mv.y()) <= 0)
      throw config_error(kModule, "shear must send (x0, y0) to a positive vertical vector");

    if (j.contains("search")) {
      const json& s = j["search"];
      if (s.contains("initial_box_margin")) cfg.search.initial_box_margin = parse_rational(s["initial_box_margin"]);
      cfg.search.max_candidates = s.value("max_candidates", cfg.search.max_candidates);
      cfg.search.fallback_width_check = s.value("fallback_width_check", true);
      cfg.search.max_iterations = s.value("max_iterations", cfg.search.max_iterations);
      if (cfg.search.initial_box_margin < 1) throw config_error(kModule, "search.initial_box_margin must be >= 1");
      if (cfg.search.max_candidates <= 0 || cfg.search.max_iterations <= 0)
        throw config_error(kModule, "search caps must be positive");
    }
    if (j.contains("defaults")) {
      const json& d = j["defaults"];
      cfg.defaults.precision_digits = d.value("precision_digits", cfg.defaults.precision_digits);
      cfg.defaults.t_min = d.value("t_min", cfg.defaults.t_min);
      cfg.defaults.t_max = d.value("t_max", cfg.defaults.t_max);
      cfg.defaults.samples = d.value("samples", cfg.defaults.samples);
      cfg.defaults.radius = d.value("radius", cfg.defaults.radius);
    }
    if (j.contains("checks")) {
      const json& c = j["checks"];
      if (c.contains("original_area")) {
        cfg.original_area = ev(c["original_area"], "checks.original_area");
        const FieldElement got = cfg.surface.area() / abs(det(shear));
        if (got != *cfg.original_area)
          throw config_error(kModule, "staircase area " + to_decimal(got, 10) + " (unsheared) differs from declared " +
                                          to_decimal(*cfg.original_area, 10));
      }
      if (c.contains("volume_over_pi_squared")) cfg.volume_over_pi2 = parse_rational(c["volume_over_pi_squared"]);
    }
    return cfg;
  } catch (const json::exception& e) {
    throw config_error(kModule, origin + ": " + e.what());
  }
}

SurfaceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(kModule, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error(kModule, path + ": parse error: " + e.what());
  }
  return parse_config(j, path);
}

}  // namespace slopegap
