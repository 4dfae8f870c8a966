// Command-line front end: table | analyze | sweep | selftest.
//
// Exit codes: 0 success, 1 data/runtime failure, 2 usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "bhp/bhp_dist.hpp"
#include "bhp/collapse.hpp"
#include "bhp/io_util.hpp"
#include "bhp/returns.hpp"
#include "bhp/selftest.hpp"
#include "bhp/sweep.hpp"
#include "bhp/table_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string input_path;
  std::string sign = "both";
  double alpha_min = 0.30;
  double alpha_max = 0.60;
  double alpha_step = 0.01;
  int lattice_side = 10;
  bhp::QuadratureSettings quad;
  double grid_lo = -10.0;
  double grid_hi = 14.0;
  double grid_step = 0.01;
  std::string orientation = "mirrored";
  std::string truncation = "shifted";
  std::size_t n_bins = 40;
  std::string output_dir;
  std::string cache_dir;
  std::size_t seeds = 20;
  std::size_t trials = 100;
  std::uint64_t seed = 1;

  bhp::SpectrumConfig spectrum() const { return {lattice_side}; }
  bhp::GridSpec grid() const {
    return {grid_lo, grid_hi, grid_step, bhp::orientation_from_string(orientation)};
  }
  bhp::TruncationMode truncation_mode() const {
    return bhp::truncation_mode_from_string(truncation);
  }
  std::vector<bhp::Sign> signs() const {
    if (sign == "both") return {bhp::Sign::kPositive, bhp::Sign::kNegative};
    return {bhp::sign_from_string(sign)};
  }
  bhp::SweepSpec sweep_spec(bhp::Sign s) const {
    return {alpha_min, alpha_max, alpha_step, s, truncation_mode()};
  }

  // Mirrors the domain-type constraints; violations are usage errors.
  void validate() const {
    try {
      spectrum().validate();
      quad.validate();
      grid().validate();
      sweep_spec(bhp::Sign::kPositive).validate();
      signs();
      if (n_bins < 1) throw std::invalid_argument("--bins must be >= 1");
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  json table_json() const {
    return {{"lattice_side", lattice_side},
            {"x_max", quad.x_max},
            {"abs_tol", quad.abs_tol},
            {"max_subdivisions", quad.max_subdivisions},
            {"grid", {grid_lo, grid_hi, grid_step}},
            {"orientation", orientation}};
  }
};

void add_table_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--lattice-side", cfg.lattice_side, "Lattice side L (N = L^2)")
      ->check(CLI::Range(2, 4096))
      ->capture_default_str();
  cmd->add_option("--x-max", cfg.quad.x_max, "Truncation of the inversion integral")
      ->capture_default_str();
  cmd->add_option("--abs-tol", cfg.quad.abs_tol, "Absolute quadrature tolerance")
      ->capture_default_str();
  cmd->add_option("--max-subdivisions", cfg.quad.max_subdivisions,
                  "Quadrature subdivision budget")
      ->capture_default_str();
  cmd->add_option("--grid-lo", cfg.grid_lo, "Table grid start")->capture_default_str();
  cmd->add_option("--grid-hi", cfg.grid_hi, "Table grid end")->capture_default_str();
  cmd->add_option("--grid-step", cfg.grid_step, "Table grid step")->capture_default_str();
  cmd->add_option("--orientation", cfg.orientation,
                  "mirrored (exponential tail above the mean) or literal")
      ->check(CLI::IsMember({"mirrored", "literal"}))
      ->capture_default_str();
  cmd->add_option("--cache-dir", cfg.cache_dir,
                  "Table cache directory (env BHP_CACHE_DIR, default .bhp_cache)");
}

void add_sweep_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input,-i", cfg.input_path, "Price CSV with header date,close")
      ->required();
  cmd->add_option("--sign", cfg.sign, "+, - or both")
      ->check(CLI::IsMember({"+", "-", "both"}))
      ->capture_default_str();
  cmd->add_option("--alpha-min", cfg.alpha_min)->capture_default_str();
  cmd->add_option("--alpha-max", cfg.alpha_max)->capture_default_str();
  cmd->add_option("--alpha-step", cfg.alpha_step)->capture_default_str();
  cmd->add_option("--truncation", cfg.truncation, "shifted or paper-literal")
      ->check(CLI::IsMember({"shifted", "paper-literal"}))
      ->capture_default_str();
}

fs::path cache_dir(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* env = std::getenv("BHP_CACHE_DIR"); env && *env) return env;
  return ".bhp_cache";
}

bhp::BhpTable obtain_table(const RunConfig& cfg) {
  auto cached = bhp::load_or_build_table(cache_dir(cfg), cfg.spectrum(), cfg.quad, cfg.grid());
  std::cerr << (cached.cache_hit ? "cache hit: " : "built table: ") << cached.stem.string()
            << ".csv\n";
  return std::move(cached.table);
}

std::string run_config_hash(const RunConfig& cfg, const std::string& input_hash,
                            const std::string& command) {
  json j = {{"command", command},
            {"input_sha256", input_hash},
            {"table", cfg.table_json()},
            {"alpha", {cfg.alpha_min, cfg.alpha_max, cfg.alpha_step}},
            {"truncation", cfg.truncation},
            {"sign", cfg.sign}};
  if (command == "analyze") j["n_bins"] = cfg.n_bins;
  return bhp::sha256_hex(j.dump());
}

std::string side_name(bhp::Sign s) {
  return s == bhp::Sign::kPositive ? "positive" : "negative";
}

std::string sweep_csv(const bhp::SweepResult& r, const std::string& config_hash) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : r.points) rows.push_back({p.alpha, p.d, p.p_value, p.mu, p.sigma, p.L, p.R});
  return bhp::format_csv(config_hash, "alpha,d,p,mu,sigma,L,R", rows);
}

json counts_json(const bhp::PriceSeries& prices, const bhp::ReturnSeries& returns,
                 const bhp::SignPartition& part) {
  const double n = static_cast<double>(returns.size());
  return {{"days", prices.size()},
          {"returns", returns.size()},
          {"n_plus", part.positive.size()},
          {"n_minus", part.negative.size()},
          {"zero_count", part.zero_count},
          {"ratio_plus", static_cast<double>(part.positive.size()) / n},
          {"ratio_minus", static_cast<double>(part.negative.size()) / n},
          {"ratio_denominator", "returns"}};
}

json sweep_summary(const bhp::SweepResult& r) {
  return {{"alpha_star", r.alpha_star},
          {"p_star", r.p_star},
          {"grid", {{"alpha_min", r.spec.alpha_min},
                    {"alpha_max", r.spec.alpha_max},
                    {"step", r.spec.step},
                    {"points", r.points.size()}}},
          {"truncation_mode", std::string(bhp::to_string(r.spec.truncation_mode))},
          {"p_value_convention", std::string(bhp::kPvalueConvention)},
          {"tie_break", "smallest alpha"}};
}

json published_json(bhp::Sign s) {
  const auto& ref = bhp::published::for_sign(s);
  return {{"alpha", ref.alpha}, {"p_value", ref.p_value}, {"mu", ref.mu},
          {"sigma", ref.sigma}, {"L", ref.L},             {"R", ref.R},
          {"n", ref.n},         {"observed_days", bhp::published::kObservedDays}};
}

struct Loaded {
  bhp::PriceSeries prices;
  bhp::ReturnSeries returns;
  bhp::SignPartition partition;
  std::string input_hash;
};

Loaded load_input(const RunConfig& cfg) {
  std::string contents;
  try {
    contents = bhp::read_file(cfg.input_path);
  } catch (const std::runtime_error& e) {
    throw bhp::DataError(e.what());
  }
  bhp::PriceSeries prices = bhp::parse_price_csv(contents);
  bhp::ReturnSeries returns = bhp::daily_returns(prices);
  bhp::SignPartition partition = bhp::partition_signs(returns);
  return {std::move(prices), std::move(returns), std::move(partition),
          bhp::sha256_hex(contents)};
}

const std::vector<double>& require_side(const Loaded& in, bhp::Sign s) {
  const auto& values = in.partition.side(s);
  if (values.empty()) {
    throw bhp::DataError("the " + side_name(s) + " partition is empty");
  }
  return values;
}

int cmd_table(const RunConfig& cfg) {
  auto cached =
      bhp::load_or_build_table(cache_dir(cfg), cfg.spectrum(), cfg.quad, cfg.grid());
  std::cerr << (cached.cache_hit ? "cache hit, no recomputation: "
                                 : "built table: ")
            << cached.stem.string() << ".csv\n";
  std::cout << cached.stem.string() << ".csv\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, bool with_collapse) {
  const Loaded in = load_input(cfg);
  const bhp::BhpTable table = obtain_table(cfg);
  const fs::path out = cfg.output_dir.empty() ? fs::path("bhp_out") : fs::path(cfg.output_dir);
  const std::string command = with_collapse ? "analyze" : "sweep";
  const std::string config_hash = run_config_hash(cfg, in.input_hash, command);
  fs::create_directories(out);

  json top = {{"config_hash", config_hash},
              {"counts", counts_json(in.prices, in.returns, in.partition)},
              {"config", cfg.table_json()},
              {"sides", json::object()}};
  for (bhp::Sign s : cfg.signs()) {
    const auto& values = require_side(in, s);
    const bhp::SweepResult result = bhp::sweep(values, cfg.sweep_spec(s), table);
    const std::string name = side_name(s);
    std::cout << name << ": alpha* = " << bhp::format_double(result.alpha_star)
              << ", P* = " << bhp::format_double(result.p_star) << " (n = " << values.size()
              << ")\n";
    json context = {{"counts", counts_json(in.prices, in.returns, in.partition)},
                    {"sweep", sweep_summary(result)},
                    {"published_comparison", published_json(s)},
                    {"config", cfg.table_json()},
                    {"input_sha256", in.input_hash}};
    top["sides"][name] = {{"alpha_star", result.alpha_star}, {"p_star", result.p_star}};
    if (with_collapse) {
      const fs::path dir = out / name;
      fs::create_directories(dir);
      const std::string csv = sweep_csv(result, config_hash);
      bhp::write_file(dir / "sweep.csv", csv);
      context["sweep"]["sweep_csv_sha256"] = bhp::sha256_hex(csv);
      bhp::CollapseOptions options;
      options.n_bins = cfg.n_bins;
      options.truncation_mode = cfg.truncation_mode();
      bhp::collapse_bundle(values, s, result.alpha_star, table, options, dir, config_hash,
                           context);
    } else {
      const std::string csv = sweep_csv(result, config_hash);
      bhp::write_file(out / ("sweep_" + name + ".csv"), csv);
      context["config_hash"] = config_hash;
      context["sweep"]["sweep_csv_sha256"] = bhp::sha256_hex(csv);
      bhp::write_file(out / ("sweep_" + name + ".json"), context.dump(2) + "\n");
    }
  }
  bhp::write_file(out / "summary.json", top.dump(2) + "\n");
  return kExitOk;
}

int cmd_selftest(const RunConfig& cfg) {
  const bhp::BhpTable table = obtain_table(cfg);
  std::cout << "seed " << cfg.seed << "\n";
  const bhp::SelftestReport r = bhp::run_selftest(table, cfg.seeds, cfg.trials, cfg.seed);
  std::cout << "planted alpha0=0.45 seeds=" << cfg.seeds
            << " median |alpha*-alpha0| = " << bhp::format_double(r.planted_median_error)
            << "  " << (r.planted_pass ? "PASS" : "FAIL") << "\n";
  std::cout << "null calibration p>0.05 in " << r.null_passes << "/" << cfg.trials
            << " (need " << r.null_required << ")  " << (r.null_pass ? "PASS" : "FAIL")
            << "\n";

  const std::string config_hash = bhp::sha256_hex(
      json{{"command", "selftest"}, {"table", cfg.table_json()}, {"seed", cfg.seed},
           {"seeds", cfg.seeds}, {"trials", cfg.trials}}
          .dump());
  json planted = json::array();
  for (const auto& t : r.planted) {
    planted.push_back({{"seed", t.seed}, {"alpha_star", t.alpha_star},
                       {"p_star", t.p_star}, {"error", t.error}});
  }
  const json summary = {{"config_hash", config_hash},
                        {"seed", cfg.seed},
                        {"planted", {{"trials", planted},
                                     {"median_error", r.planted_median_error},
                                     {"pass", r.planted_pass}}},
                        {"null_calibration", {{"p_values", r.null_p_values},
                                              {"passes", r.null_passes},
                                              {"required", r.null_required},
                                              {"pass", r.null_pass}}},
                        {"config", cfg.table_json()}};
  if (!cfg.output_dir.empty()) {
    fs::create_directories(cfg.output_dir);
    bhp::write_file(fs::path(cfg.output_dir) / "summary.json", summary.dump(2) + "\n");
  }
  std::vector<std::string> failing;
  if (!r.planted_pass) failing.push_back("planted-alpha");
  if (!r.null_pass) failing.push_back("null-calibration");
  if (!failing.empty()) {
    std::cerr << "failing suites:";
    for (const auto& f : failing) std::cerr << ' ' << f;
    std::cerr << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BHP universal-fluctuation analysis of daily price series"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* table = app.add_subcommand("table", "Build (or reuse) the cached BHP table");
  add_table_options(table, cfg);

  auto* analyze = app.add_subcommand("analyze", "Returns -> alpha sweep -> collapse report");
  add_table_options(analyze, cfg);
  add_sweep_options(analyze, cfg);
  analyze->add_option("--bins", cfg.n_bins, "Histogram bins")->capture_default_str();
  analyze->add_option("--output-dir,-o", cfg.output_dir, "Output directory (default bhp_out)");

  auto* sweep = app.add_subcommand("sweep", "Alpha sweep CSV only");
  add_table_options(sweep, cfg);
  add_sweep_options(sweep, cfg);
  sweep->add_option("--output-dir,-o", cfg.output_dir, "Output directory (default bhp_out)");

  auto* selftest = app.add_subcommand("selftest", "Planted-alpha and null-calibration checks");
  add_table_options(selftest, cfg);
  selftest->add_option("--seeds", cfg.seeds, "Planted-alpha seeds")->capture_default_str();
  selftest->add_option("--trials", cfg.trials, "Null-calibration trials")->capture_default_str();
  selftest->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  selftest->add_option("--output-dir,-o", cfg.output_dir, "Write summary.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.validate();
    if (*table) return cmd_table(cfg);
    if (*analyze) return cmd_sweep(cfg, true);
    if (*sweep) return cmd_sweep(cfg, false);
    if (*selftest) return cmd_selftest(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bhp::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
