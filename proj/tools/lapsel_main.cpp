// lapsel: graph-Laplacian estimation of the Laplace-Beltrami operator from
// point clouds, with Lepski bandwidth selection and the bandwidth-jump
// calibration heuristic. See README.md for the file formats.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lapsel/calibration.hpp"
#include "lapsel/csv.hpp"
#include "lapsel/empirical_norms.hpp"
#include "lapsel/errors.hpp"
#include "lapsel/lepski.hpp"
#include "lapsel/rng.hpp"
#include "lapsel/sphere.hpp"
#include "lapsel/theory_constants.hpp"

namespace {

using nlohmann::json;

// Merges a JSON config file into option targets. Command-line flags always
// win; config supplies values only for flags not present on the command
// line. Keys are the long flag names without the leading dashes; unknown
// keys are errors.
class ConfigMerge {
public:
  explicit ConfigMerge(const CLI::App* cmd) : cmd_(cmd) {}

  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    try {
      in >> cfg_;
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("config file is not valid JSON: " +
                                  std::string(e.what()));
    }
    if (!cfg_.is_object())
      throw std::invalid_argument("config file must hold a JSON object");
  }

  template <typename T>
  void apply(const std::string& flag, T& var) {
    const std::string key = flag.substr(2);
    known_.insert(key);
    if (cfg_.is_null() || !cfg_.contains(key)) return;
    if (cmd_->count(flag) > 0) return;
    try {
      var = cfg_.at(key).get<T>();
    } catch (const json::exception&) {
      throw std::invalid_argument("config key '" + key + "' has the wrong type");
    }
  }

  void finish() const {
    if (cfg_.is_null()) return;
    for (const auto& item : cfg_.items())
      if (!known_.contains(item.key()) && item.key() != "config")
        throw std::invalid_argument("unknown config key '" + item.key() + "'");
  }

private:
  const CLI::App* cmd_;
  json cfg_;
  std::set<std::string> known_;
};

// Grid specs: "lo:hi:N" (log-spaced), "lo:hi:Nlin" (linear), "theoretical:n",
// or an explicit comma list of bandwidths.
lapsel::BandwidthGrid parse_grid_spec(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty bandwidth grid spec");
  if (spec.rfind("theoretical:", 0) == 0) {
    const long n = std::stol(spec.substr(12));
    return lapsel::theoretical_grid(n);
  }
  const size_t c1 = spec.find(':');
  if (c1 != std::string::npos) {
    const size_t c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw std::invalid_argument("grid spec must be lo:hi:N[lin]: " + spec);
    const double lo = lapsel::parse_double(spec.substr(0, c1));
    const double hi = lapsel::parse_double(spec.substr(c1 + 1, c2 - c1 - 1));
    std::string count = spec.substr(c2 + 1);
    bool linear = false;
    if (count.size() > 3 && count.substr(count.size() - 3) == "lin") {
      linear = true;
      count = count.substr(0, count.size() - 3);
    }
    const int n = std::stoi(count);
    if (!linear) return lapsel::log_spaced_grid(lo, hi, n);
    if (n < 2 || !(lo > 0.0) || !(hi > lo))
      throw std::invalid_argument("linear grid needs 0 < lo < hi and N >= 2");
    std::vector<double> h(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
      h[static_cast<size_t>(k)] = lo + (hi - lo) * k / (n - 1);
    return lapsel::BandwidthGrid(std::move(h));
  }
  std::vector<double> h;
  for (const auto field : lapsel::split_csv_line(spec))
    h.push_back(lapsel::parse_double(field));
  return lapsel::BandwidthGrid(std::move(h));
}

// a-grid specs: "hi:lo:N" geometric descending, or a comma list (descending).
std::vector<double> parse_a_grid_spec(const std::string& spec) {
  const size_t c1 = spec.find(':');
  if (c1 != std::string::npos) {
    const size_t c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw std::invalid_argument("a-grid spec must be hi:lo:N: " + spec);
    const double hi = lapsel::parse_double(spec.substr(0, c1));
    const double lo = lapsel::parse_double(spec.substr(c1 + 1, c2 - c1 - 1));
    const int n = std::stoi(spec.substr(c2 + 1));
    if (!(lo > 0.0) || !(hi > lo) || n < 1)
      throw std::invalid_argument("a-grid needs 0 < lo < hi and N >= 1");
    if (n == 1) return {hi};
    std::vector<double> a(static_cast<size_t>(n));
    const double ratio = std::log(lo / hi);
    for (int i = 0; i < n; ++i)
      a[static_cast<size_t>(i)] = hi * std::exp(ratio * i / (n - 1));
    return a;
  }
  std::vector<double> a;
  for (const auto field : lapsel::split_csv_line(spec))
    a.push_back(lapsel::parse_double(field));
  return a;
}

lapsel::TargetConvention parse_convention(const std::string& name) {
  if (name == "analytic") return lapsel::TargetConvention::analytic;
  if (name == "weighted") return lapsel::TargetConvention::weighted;
  throw std::invalid_argument("convention must be analytic or weighted");
}

lapsel::VarianceMode parse_mode(const std::string& name) {
  if (name == "practical") return lapsel::VarianceMode::practical;
  if (name == "theoretical") return lapsel::VarianceMode::theoretical;
  throw std::invalid_argument("mode must be practical or theoretical");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write output file: " + path);
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out.good())
    throw std::invalid_argument("write failed for output file: " + path);
}

lapsel::PointCloud load_cloud(const std::string& path, int d) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read point cloud: " + path);
  const lapsel::PointCloud cloud = lapsel::read_cloud_csv(in, d);
  if (!cloud.has_f())
    throw std::invalid_argument(
        "point cloud '" + path +
        "' has no f column; function values are required, not imputed");
  return cloud;
}

// Options shared by the subcommands that run the sphere bench or consume
// point-cloud files.
struct DataOptions {
  long n1 = 50000;
  long n2 = 1000;
  std::uint64_t seed = 1;
  int d = 2;
  std::string estimation_file;
  std::string validation_file;
};

void add_data_options(CLI::App* cmd, DataOptions& data) {
  cmd->add_option("--n1", data.n1, "estimation sample size (sphere bench)");
  cmd->add_option("--n2", data.n2, "validation sample size (sphere bench)");
  cmd->add_option("--seed", data.seed, "master seed");
  cmd->add_option("--d", data.d, "intrinsic dimension of file-based clouds");
  cmd->add_option("--estimation", data.estimation_file,
                  "estimation cloud CSV (x,y,z,f); replaces --n1 sampling");
  cmd->add_option("--validation", data.validation_file,
                  "validation cloud CSV (x,y,z,f); replaces --n2 sampling");
}

void merge_data_options(ConfigMerge& merge, DataOptions& data) {
  merge.apply("--n1", data.n1);
  merge.apply("--n2", data.n2);
  merge.apply("--seed", data.seed);
  merge.apply("--d", data.d);
  merge.apply("--estimation", data.estimation_file);
  merge.apply("--validation", data.validation_file);
}

struct BenchData {
  lapsel::PointCloud estimation;
  lapsel::PointCloud validation;
  Eigen::VectorXd f_estimation;
  Eigen::VectorXd f_validation;
};

// File clouds carry their own f column; generated clouds evaluate the bench
// function. Generated samples reuse the substream layout of the risk bench
// (replicate 0: estimation = substream 0, validation = substream 1).
BenchData load_bench_data(const DataOptions& data) {
  BenchData bench;
  if (!data.estimation_file.empty() || !data.validation_file.empty()) {
    if (data.estimation_file.empty() || data.validation_file.empty())
      throw std::invalid_argument(
          "--estimation and --validation must be given together");
    bench.estimation = load_cloud(data.estimation_file, data.d);
    bench.validation = load_cloud(data.validation_file, data.d);
    bench.f_estimation = bench.estimation.f;
    bench.f_validation = bench.validation.f;
    return bench;
  }
  if (data.n1 < 1 || data.n2 < 1)
    throw std::invalid_argument("n1 and n2 must be >= 1");
  bench.estimation =
      lapsel::sample_uniform_sphere(data.n1, lapsel::substream_seed(data.seed, 0));
  bench.validation = lapsel::sample_uniform_sphere_nonpolar(
      data.n2, lapsel::substream_seed(data.seed, 1));
  bench.f_estimation = lapsel::eval_test_function(bench.estimation);
  bench.f_validation = lapsel::eval_test_function(bench.validation);
  return bench;
}

void add_theory_options(CLI::App* cmd, lapsel::TheoryConfig& theory) {
  cmd->add_option("--C", theory.C, "geometric constant C");
  cmd->add_option("--C1", theory.C1, "geometric constant C1");
  cmd->add_option("--rho", theory.rho, "reach/injectivity scale rho(M)");
  cmd->add_option("--mu", theory.mu, "volume mu(M)");
  cmd->add_option("--p-inf", theory.p_inf, "sup norm of the density");
  cmd->add_option("--p1-inf", theory.p1_inf, "sup norm of the density gradient");
  cmd->add_option("--p2-inf", theory.p2_inf, "sup norm of the density Hessian");
  cmd->add_option("--c-f", theory.C_F, "smoothness bound C_F");
}

void merge_theory_options(ConfigMerge& merge, lapsel::TheoryConfig& theory) {
  merge.apply("--C", theory.C);
  merge.apply("--C1", theory.C1);
  merge.apply("--rho", theory.rho);
  merge.apply("--mu", theory.mu);
  merge.apply("--p-inf", theory.p_inf);
  merge.apply("--p1-inf", theory.p1_inf);
  merge.apply("--p2-inf", theory.p2_inf);
  merge.apply("--c-f", theory.C_F);
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  long n = 1000;
  std::uint64_t seed = 1;
  std::string out;
  bool nonpolar = false;
  double pole_margin = lapsel::kPoleMargin;
  std::string config;
};

int run_sample(const CLI::App* cmd, SampleArgs& args) {
  ConfigMerge merge(cmd);
  if (!args.config.empty()) merge.load(args.config);
  merge.apply("--n", args.n);
  merge.apply("--seed", args.seed);
  merge.apply("--out", args.out);
  merge.apply("--nonpolar", args.nonpolar);
  merge.apply("--pole-margin", args.pole_margin);
  merge.finish();
  if (args.out.empty()) throw std::invalid_argument("--out is required");
  if (args.n < 0) throw std::invalid_argument("--n must be >= 0");

  lapsel::PointCloud cloud =
      args.nonpolar
          ? lapsel::sample_uniform_sphere_nonpolar(args.n, args.seed,
                                                   args.pole_margin)
          : lapsel::sample_uniform_sphere(args.n, args.seed);
  cloud.f = lapsel::eval_test_function(cloud);

  std::ofstream out = open_output(args.out);
  lapsel::write_cloud_csv(out, cloud);
  finish_output(out, args.out);
  std::cout << "wrote " << cloud.n() << " points to " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
  DataOptions data;
  std::string grid_spec = "0.02:0.8:15";
  double cutoff_factor = 0.0;
  int threads = 0;
  std::string out;
  std::string config;
};

int run_estimate(const CLI::App* cmd, EstimateArgs& args) {
  ConfigMerge merge(cmd);
  if (!args.config.empty()) merge.load(args.config);
  merge_data_options(merge, args.data);
  merge.apply("--grid", args.grid_spec);
  merge.apply("--cutoff-factor", args.cutoff_factor);
  merge.apply("--threads", args.threads);
  merge.apply("--out", args.out);
  merge.finish();
  if (args.out.empty()) throw std::invalid_argument("--out is required");

  const lapsel::BandwidthGrid grid = parse_grid_spec(args.grid_spec);
  const BenchData bench = load_bench_data(args.data);
  lapsel::ApplyOptions apply;
  apply.cutoff_factor = args.cutoff_factor;
  apply.threads = args.threads;
  const lapsel::EstimatorFamily family =
      lapsel::build_family(bench.estimation, bench.f_estimation,
                           bench.validation, bench.f_validation, grid, apply);

  std::ofstream out = open_output(args.out);
  lapsel::write_family_csv(out, family);
  finish_output(out, args.out);
  std::cout << "evaluated " << grid.size() << " bandwidths at "
            << bench.validation.n() << " query points -> " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// risk

struct RiskArgs {
  DataOptions data;
  std::string grid_spec = "0.02:0.8:15";
  int replicates = 5;
  std::string convention = "analytic";
  int threads = 0;
  std::string out;
  std::string config;
};

int run_risk(const CLI::App* cmd, RiskArgs& args) {
  ConfigMerge merge(cmd);
  if (!args.config.empty()) merge.load(args.config);
  merge.apply("--n1", args.data.n1);
  merge.apply("--n2", args.data.n2);
  merge.apply("--seed", args.data.seed);
  merge.apply("--grid", args.grid_spec);
  merge.apply("--replicates", args.replicates);
  merge.apply("--convention", args.convention);
  merge.apply("--threads", args.threads);
  merge.apply("--out", args.out);
  merge.finish();
  if (args.out.empty()) throw std::invalid_argument("--out is required");

  lapsel::RiskParams params;
  params.grid = parse_grid_spec(args.grid_spec);
  params.n1 = args.data.n1;
  params.n2 = args.data.n2;
  params.replicates = args.replicates;
  params.seed = args.data.seed;
  params.convention = parse_convention(args.convention);
  params.apply.threads = args.threads;
  const lapsel::RiskTable table = lapsel::monte_carlo_risk(params);

  std::ofstream out = open_output(args.out);
  lapsel::write_risk_csv(out, table);
  finish_output(out, args.out);
  std::cout << "oracle bandwidth "
            << lapsel::format_g17(lapsel::oracle_bandwidth(table)) << " -> "
            << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// lepski / calibrate

struct LepskiArgs {
  DataOptions data;
  std::string grid_spec = "0.02:0.8:15";
  double a = 0.0;
  double b = 0.0;
  bool calibrate = false;
  std::string a_grid_spec = "100:0.1:40";
  std::string mode = "practical";
  bool strict_admissibility = false;
  lapsel::TheoryConfig theory;
  int threads = 0;
  std::string out;
  std::string path_out;
  std::string config;
};

int run_lepski(const CLI::App* cmd, LepskiArgs& args, bool force_calibrate) {
  ConfigMerge merge(cmd);
  if (!args.config.empty()) merge.load(args.config);
  merge_data_options(merge, args.data);
  merge.apply("--grid", args.grid_spec);
  if (!force_calibrate) {
    merge.apply("--a", args.a);
    merge.apply("--b", args.b);
    merge.apply("--calibrate", args.calibrate);
  }
  merge.apply("--a-grid", args.a_grid_spec);
  merge.apply("--mode", args.mode);
  merge.apply("--strict-admissibility", args.strict_admissibility);
  merge_theory_options(merge, args.theory);
  merge.apply("--threads", args.threads);
  merge.apply("--out", args.out);
  merge.apply("--path-out", args.path_out);
  merge.finish();
  if (args.out.empty()) throw std::invalid_argument("--out is required");

  const bool calibrating = force_calibrate || args.calibrate;
  if (!calibrating && !(args.a > 0.0 && args.b > 0.0))
    throw std::invalid_argument(
        "either give fixed --a and --b or use --calibrate");
  if (!calibrating && args.a > args.b)
    throw std::invalid_argument("requires a <= b");

  const lapsel::BandwidthGrid grid = parse_grid_spec(args.grid_spec);
  const BenchData bench = load_bench_data(args.data);

  lapsel::SelectOptions options;
  options.mode = parse_mode(args.mode);
  options.theory = args.theory;
  options.theory.d = args.data.d;
  options.strict_admissibility = args.strict_admissibility;
  options.threads = args.threads;
  options.theory.validate();

  lapsel::ApplyOptions apply;
  apply.threads = args.threads;
  const lapsel::EstimatorFamily family =
      lapsel::build_family(bench.estimation, bench.f_estimation,
                           bench.validation, bench.f_validation, grid, apply);

  json result;
  if (calibrating) {
    const std::vector<double> a_grid = parse_a_grid_spec(args.a_grid_spec);
    const lapsel::CalibrationResult cal =
        lapsel::calibrate_and_select(family, a_grid, options);
    result = lapsel::to_json(cal.selection);
    result["a0"] = cal.a0;
    if (!args.path_out.empty()) {
      std::ofstream path_out = open_output(args.path_out);
      lapsel::write_path_csv(path_out, cal.path);
      finish_output(path_out, args.path_out);
    }
    std::cout << "a0 " << lapsel::format_g17(cal.a0) << ", selected h "
              << lapsel::format_g17(cal.selection.h_hat) << "\n";
  } else {
    const lapsel::LepskiSelection sel =
        lapsel::select_bandwidth(family, args.a, args.b, options);
    result = lapsel::to_json(sel);
    std::cout << "selected h " << lapsel::format_g17(sel.h_hat) << "\n";
  }

  std::ofstream out = open_output(args.out);
  out << result.dump(2) << "\n";
  finish_output(out, args.out);
  return 0;
}

// ---------------------------------------------------------------------------
// constants

struct ConstantsArgs {
  lapsel::TheoryConfig theory;
  std::vector<double> D_alphas = {4.0, 6.0};
  std::vector<double> D_tilde_alphas = {3.0, 4.0};
  std::vector<int> sigmas = {-1, 0};
  std::vector<double> h_values;
  double a = 0.0;
  long n = 0;
  std::string out;
  std::string config;
};

int run_constants(const CLI::App* cmd, ConstantsArgs& args) {
  ConfigMerge merge(cmd);
  if (!args.config.empty()) merge.load(args.config);
  merge.apply("--d", args.theory.d);
  merge.apply("--m", args.theory.m);
  merge_theory_options(merge, args.theory);
  merge.apply("--alphas", args.D_alphas);
  merge.apply("--tilde-alphas", args.D_tilde_alphas);
  merge.apply("--sigmas", args.sigmas);
  merge.apply("--h-values", args.h_values);
  merge.apply("--a", args.a);
  merge.apply("--n", args.n);
  merge.apply("--out", args.out);
  merge.finish();
  if (args.out.empty()) throw std::invalid_argument("--out is required");

  lapsel::ConstantsRequest request;
  request.cfg = args.theory;
  request.D_alphas = args.D_alphas;
  request.D_tilde_alphas = args.D_tilde_alphas;
  request.kappa_sigmas = args.sigmas;
  request.h_values = args.h_values;
  request.a = args.a;
  request.n = args.n;
  const json report = lapsel::constants_report(request);

  std::ofstream out = open_output(args.out);
  out << report.dump(2) << "\n";
  finish_output(out, args.out);
  std::cout << "constants report -> " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  DataOptions data;
  std::string grid_spec = "0.02:0.8:15";
  int replicates = 5;
  std::string convention = "analytic";
  std::string a_grid_spec = "100:0.1:40";
  std::string mode = "practical";
  int threads = 0;
  std::string out;
  std::string risk_out;
  std::string path_out;
  std::string config;
};

int run_bench(const CLI::App* cmd, BenchArgs& args) {
  ConfigMerge merge(cmd);
  if (!args.config.empty()) merge.load(args.config);
  merge.apply("--n1", args.data.n1);
  merge.apply("--n2", args.data.n2);
  merge.apply("--seed", args.data.seed);
  merge.apply("--grid", args.grid_spec);
  merge.apply("--replicates", args.replicates);
  merge.apply("--convention", args.convention);
  merge.apply("--a-grid", args.a_grid_spec);
  merge.apply("--mode", args.mode);
  merge.apply("--threads", args.threads);
  merge.apply("--out", args.out);
  merge.apply("--risk-out", args.risk_out);
  merge.apply("--path-out", args.path_out);
  merge.finish();
  if (args.out.empty()) throw std::invalid_argument("--out is required");

  lapsel::RiskParams params;
  params.grid = parse_grid_spec(args.grid_spec);
  params.n1 = args.data.n1;
  params.n2 = args.data.n2;
  params.replicates = args.replicates;
  params.seed = args.data.seed;
  params.convention = parse_convention(args.convention);
  params.apply.threads = args.threads;
  const lapsel::RiskTable table = lapsel::monte_carlo_risk(params);
  const double oracle_h = lapsel::oracle_bandwidth(table);
  const double oracle_risk = lapsel::risk_at(table, oracle_h);

  const BenchData bench = load_bench_data(args.data);
  lapsel::ApplyOptions apply;
  apply.threads = args.threads;
  const lapsel::EstimatorFamily family =
      lapsel::build_family(bench.estimation, bench.f_estimation,
                           bench.validation, bench.f_validation, params.grid,
                           apply);
  lapsel::SelectOptions options;
  options.mode = parse_mode(args.mode);
  options.threads = args.threads;
  const lapsel::CalibrationResult cal = lapsel::calibrate_and_select(
      family, parse_a_grid_spec(args.a_grid_spec), options);
  const double h_hat = cal.selection.h_hat;
  const double risk_hat = lapsel::risk_at(table, h_hat);

  json summary;
  summary["n1"] = params.n1;
  summary["n2"] = params.n2;
  summary["replicates"] = params.replicates;
  summary["seed"] = params.seed;
  summary["convention"] = args.convention;
  summary["grid"] = family.grid.values();
  summary["oracle_h"] = oracle_h;
  summary["oracle_risk"] = oracle_risk;
  summary["a0"] = cal.a0;
  summary["h_hat"] = h_hat;
  summary["risk_at_h_hat"] = risk_hat;
  summary["h_ratio"] = h_hat / oracle_h;
  summary["risk_ratio"] = risk_hat / oracle_risk;

  if (!args.risk_out.empty()) {
    std::ofstream risk_out = open_output(args.risk_out);
    lapsel::write_risk_csv(risk_out, table);
    finish_output(risk_out, args.risk_out);
  }
  if (!args.path_out.empty()) {
    std::ofstream path_out = open_output(args.path_out);
    lapsel::write_path_csv(path_out, cal.path);
    finish_output(path_out, args.path_out);
  }
  std::ofstream out = open_output(args.out);
  out << summary.dump(2) << "\n";
  finish_output(out, args.out);

  std::cout << "oracle h " << lapsel::format_g17(oracle_h) << ", selected h "
            << lapsel::format_g17(h_hat) << " (a0 "
            << lapsel::format_g17(cal.a0) << ", risk ratio "
            << lapsel::format_g17(risk_hat / oracle_risk) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "graph-Laplacian estimation of the Laplace-Beltrami operator with "
      "Lepski bandwidth selection"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand(
      "sample", "draw uniform sphere points and write them as CSV");
  sample->add_option("--n", sample_args.n, "number of points");
  sample->add_option("--seed", sample_args.seed, "master seed");
  sample->add_option("--out", sample_args.out, "output CSV path");
  sample->add_flag("--nonpolar", sample_args.nonpolar,
                   "resample points landing within the pole margin");
  sample->add_option("--pole-margin", sample_args.pole_margin,
                     "pole exclusion margin for --nonpolar");
  sample->add_option("--config", sample_args.config, "JSON config file");

  EstimateArgs estimate_args;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "evaluate the graph Laplacian family on query points");
  add_data_options(estimate, estimate_args.data);
  estimate->add_option(
      "--grid", estimate_args.grid_spec,
      "bandwidth grid (lo:hi:N, lo:hi:Nlin, theoretical:n, or list)");
  estimate->add_option("--cutoff-factor", estimate_args.cutoff_factor,
                       "skip pairs farther than this multiple of h (0 = exact)");
  estimate->add_option("--threads", estimate_args.threads,
                       "worker threads (0 = all cores)");
  estimate->add_option("--out", estimate_args.out, "output CSV path");
  estimate->add_option("--config", estimate_args.config, "JSON config file");

  RiskArgs risk_args;
  CLI::App* risk = app.add_subcommand(
      "risk", "Monte-Carlo risk curve of the estimator family on the sphere");
  risk->add_option("--n1", risk_args.data.n1, "estimation sample size");
  risk->add_option("--n2", risk_args.data.n2, "validation sample size");
  risk->add_option("--seed", risk_args.data.seed, "master seed");
  risk->add_option("--grid", risk_args.grid_spec, "bandwidth grid spec");
  risk->add_option("--replicates", risk_args.replicates, "Monte-Carlo replicates");
  risk->add_option("--convention", risk_args.convention,
                   "target convention: analytic or weighted");
  risk->add_option("--threads", risk_args.threads, "worker threads");
  risk->add_option("--out", risk_args.out, "output CSV path");
  risk->add_option("--config", risk_args.config, "JSON config file");

  LepskiArgs lepski_args;
  CLI::App* lepski = app.add_subcommand(
      "lepski", "Lepski bandwidth selection at fixed (a,b) or calibrated");
  add_data_options(lepski, lepski_args.data);
  lepski->add_option("--grid", lepski_args.grid_spec, "bandwidth grid spec");
  lepski->add_option("--a", lepski_args.a, "bias constant a");
  lepski->add_option("--b", lepski_args.b, "variance constant b");
  lepski->add_flag("--calibrate", lepski_args.calibrate,
                   "calibrate (a,b) by the bandwidth-jump heuristic");
  lepski->add_option("--a-grid", lepski_args.a_grid_spec,
                     "a grid for calibration (hi:lo:N or list)");
  lepski->add_option("--mode", lepski_args.mode,
                     "variance mode: practical or theoretical");
  lepski->add_flag("--strict-admissibility", lepski_args.strict_admissibility,
                   "exclude bandwidths violating the admissibility condition");
  add_theory_options(lepski, lepski_args.theory);
  lepski->add_option("--threads", lepski_args.threads, "worker threads");
  lepski->add_option("--out", lepski_args.out, "selection JSON path");
  lepski->add_option("--path-out", lepski_args.path_out,
                     "selection-path CSV path (calibration mode)");
  lepski->add_option("--config", lepski_args.config, "JSON config file");

  LepskiArgs calibrate_args;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "bandwidth-jump calibration and selection of h(a0, 2a0)");
  add_data_options(calibrate, calibrate_args.data);
  calibrate->add_option("--grid", calibrate_args.grid_spec, "bandwidth grid spec");
  calibrate->add_option("--a-grid", calibrate_args.a_grid_spec,
                        "a grid (hi:lo:N or descending list)");
  calibrate->add_option("--mode", calibrate_args.mode,
                        "variance mode: practical or theoretical");
  calibrate->add_flag("--strict-admissibility",
                      calibrate_args.strict_admissibility,
                      "exclude bandwidths violating the admissibility condition");
  add_theory_options(calibrate, calibrate_args.theory);
  calibrate->add_option("--threads", calibrate_args.threads, "worker threads");
  calibrate->add_option("--out", calibrate_args.out, "selection JSON path");
  calibrate->add_option("--path-out", calibrate_args.path_out,
                        "selection-path CSV path");
  calibrate->add_option("--config", calibrate_args.config, "JSON config file");

  ConstantsArgs constants_args;
  CLI::App* constants = app.add_subcommand(
      "constants", "numerical values of the variance/oracle-bound constants");
  constants->add_option("--d", constants_args.theory.d, "intrinsic dimension");
  constants->add_option("--m", constants_args.theory.m, "ambient dimension");
  add_theory_options(constants, constants_args.theory);
  constants->add_option("--alphas", constants_args.D_alphas,
                        "alpha values for D_alpha");
  constants->add_option("--tilde-alphas", constants_args.D_tilde_alphas,
                        "alpha values for D-tilde_alpha");
  constants->add_option("--sigmas", constants_args.sigmas,
                        "sigma offsets for kappa_{d+sigma}");
  constants->add_option("--h-values", constants_args.h_values,
                        "bandwidths at which to tabulate alpha/beta/gamma/delta");
  constants->add_option("--a", constants_args.a, "Lepski a for delta (needs > 4)");
  constants->add_option("--n", constants_args.n, "sample size for delta");
  constants->add_option("--out", constants_args.out, "report JSON path");
  constants->add_option("--config", constants_args.config, "JSON config file");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "full sphere pipeline: risk curve, oracle, calibrated selection");
  bench->add_option("--n1", bench_args.data.n1, "estimation sample size");
  bench->add_option("--n2", bench_args.data.n2, "validation sample size");
  bench->add_option("--seed", bench_args.data.seed, "master seed");
  bench->add_option("--grid", bench_args.grid_spec, "bandwidth grid spec");
  bench->add_option("--replicates", bench_args.replicates,
                    "Monte-Carlo replicates");
  bench->add_option("--convention", bench_args.convention,
                    "target convention: analytic or weighted");
  bench->add_option("--a-grid", bench_args.a_grid_spec, "a grid spec");
  bench->add_option("--mode", bench_args.mode, "variance mode");
  bench->add_option("--threads", bench_args.threads, "worker threads");
  bench->add_option("--out", bench_args.out, "summary JSON path");
  bench->add_option("--risk-out", bench_args.risk_out, "risk table CSV path");
  bench->add_option("--path-out", bench_args.path_out, "selection path CSV path");
  bench->add_option("--config", bench_args.config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sample->parsed()) return run_sample(sample, sample_args);
    if (estimate->parsed()) return run_estimate(estimate, estimate_args);
    if (risk->parsed()) return run_risk(risk, risk_args);
    if (lepski->parsed()) return run_lepski(lepski, lepski_args, false);
    if (calibrate->parsed()) return run_lepski(calibrate, calibrate_args, true);
    if (constants->parsed()) return run_constants(constants, constants_args);
    if (bench->parsed()) return run_bench(bench, bench_args);
  } catch (const lapsel::no_jump_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lapsel::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
