// Command-line front end. Exit codes: 0 ok, 2 configuration or usage error,
// 3 computation error, 4 verification failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "slopegap/acceptance.hpp"
#include "slopegap/config.hpp"
#include "slopegap/report.hpp"

using namespace slopegap;

namespace {

struct Options {
  std::string config;
  std::string output;
  int threads = 1;
  std::optional<int> precision;
  std::optional<double> t_min, t_max, radius;
  std::optional<int> samples;
  int grid = 200;
  double grid_lo = 0.4, grid_hi = 10;
  std::string gaps_csv;
  std::string pentagon;
};

// Lazily computed pipeline stages.
class Pipeline {
 public:
  explicit Pipeline(const Options& o) : opts_(o) {}

  const SurfaceConfig& config() {
    if (!cfg_) {
      std::string path = opts_.config;
      if (path.empty())
        if (const char* env = std::getenv(kConfigEnv)) path = env;
      if (path.empty()) throw config_error("cli", "no config given; pass --config or set " + std::string(kConfigEnv));
      cfg_ = load_config(path);
    }
    return *cfg_;
  }
  const Transversal& transversal() {
    if (!omega_) omega_ = build_transversal(config().cusp);
    return *omega_;
  }
  const std::vector<WinnerRecord>& winners() {
    if (!records_) records_ = sweep_winners(config().surface, transversal(), config().search);
    return *records_;
  }
  const std::vector<WinnerRegion>& regions() {
    if (!regions_) regions_ = subdivide(transversal(), winners());
    return *regions_;
  }
  const PiecewiseDistribution& distribution() {
    if (!dist_) dist_ = build_distribution(regions(), transversal(), digits());
    return *dist_;
  }
  int digits() { return opts_.precision.value_or(config().defaults.precision_digits); }

 private:
  const Options& opts_;
  std::optional<SurfaceConfig> cfg_;
  std::optional<Transversal> omega_;
  std::optional<std::vector<WinnerRecord>> records_;
  std::optional<std::vector<WinnerRegion>> regions_;
  std::optional<PiecewiseDistribution> dist_;
};

int run(const std::string& command, const Options& o, std::ostream& out) {
  Pipeline p(o);
  EnumerationLimits lim;
  lim.threads = std::max(1, o.threads);
  if (command == "winners") {
    out << winners_json(p.winners()).dump(2) << '\n';
  } else if (command == "subdivide") {
    out << regions_json(p.regions(), area(p.transversal().omega)).dump(2) << '\n';
  } else if (command == "breakpoints") {
    out << breakpoints_json(p.distribution()).dump(2) << '\n';
  } else if (command == "distribution") {
    const auto& d = p.config().defaults;
    write_distribution_csv(out, p.distribution(), o.t_min.value_or(d.t_min), o.t_max.value_or(d.t_max),
                           o.samples.value_or(d.samples));
  } else if (command == "volume") {
    out << volume_json(volume(p.distribution()), p.config().volume_over_pi2).dump(2) << '\n';
  } else if (command == "empirical") {
    const double r = o.radius.value_or(p.config().defaults.radius);
    if (!(r > 0)) throw config_error("cli", "--radius must be positive");
    const FieldElement R{Rational(r)};
    const auto emp = empirical_gaps(p.config().surface, R, lim);
    if (!o.gaps_csv.empty()) {
      std::ofstream f(o.gaps_csv);
      if (!f) throw config_error("cli", "cannot write " + o.gaps_csv);
      write_gaps_csv(f, emp);
    }
    out << empirical_json(emp, ks_distance(emp, p.distribution())).dump(2) << '\n';
  } else if (command == "appendix-compare") {
    const double tol = 1e-6;
    out << appendix_json(compare_appendix(p.distribution(), o.grid_lo, o.grid_hi, o.grid), tol).dump(2) << '\n';
  } else if (command == "verify") {
    AcceptanceOptions a;
    a.heptagon_config = p.config().path;
    a.pentagon_config = o.pentagon.empty()
                            ? (std::filesystem::path(a.heptagon_config).parent_path() / "double_pentagon.json").string()
                            : o.pentagon;
    a.threads = lim.threads;
    a.digits = p.digits();
    return print_acceptance(out, run_acceptance(a)) ? 0 : 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slope gap distributions of Veech translation surfaces"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-c,--config", o.config, std::string("Surface config (JSON); defaults to $") + kConfigEnv);
  app.add_option("-o,--output", o.output, "Write to this file instead of stdout");
  app.add_option("-j,--threads", o.threads, "Worker threads for enumeration")->check(CLI::PositiveNumber);
  app.add_option("--precision", o.precision, "Decimal digits for distribution arithmetic")->check(CLI::Range(10, 1000));

  app.add_subcommand("winners", "Left winners on the top edge (JSON)");
  app.add_subcommand("subdivide", "Winner regions of the transversal (JSON)");
  app.add_subcommand("breakpoints", "Return times of non-analyticity, exact and decimal (JSON)");
  auto* dist = app.add_subcommand("distribution", "CSV with columns t,pdf,cdf on an even grid");
  dist->add_option("--t-min", o.t_min, "First t");
  dist->add_option("--t-max", o.t_max, "Last t");
  dist->add_option("--samples", o.samples, "Grid points")->check(CLI::Range(2, 10000000));
  app.add_subcommand("volume", "Integral of the return time over the transversal (JSON)");
  auto* emp = app.add_subcommand("empirical", "Saddle connection gaps against the analytic cdf (JSON summary)");
  emp->add_option("--radius", o.radius, "Horizontal bound R");
  emp->add_option("--csv", o.gaps_csv, "Also write index,slope,gap rows here");
  auto* app_cmp = app.add_subcommand("appendix-compare", "Double heptagon closed forms against the sweep (JSON)");
  app_cmp->add_option("--grid", o.grid, "Grid points")->check(CLI::Range(2, 1000000));
  app_cmp->add_option("--t-min", o.grid_lo, "First t");
  app_cmp->add_option("--t-max", o.grid_hi, "Last t");
  auto* verify = app.add_subcommand("verify", "Run every acceptance check on the double heptagon");
  verify->add_option("--pentagon", o.pentagon, "Double pentagon config (default: next to --config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    std::ofstream file;
    if (!o.output.empty()) {
      file.open(o.output);
      if (!file) throw config_error("cli", "cannot write " + o.output);
    }
    return run(command, o, o.output.empty() ? std::cout : file);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.kind() == ErrorKind::config ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "[cli] " << e.what() << '\n';
    return 3;
  }
}
