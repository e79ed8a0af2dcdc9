// snl: command-line entry point for instance generation, matrix design,
// solving and the batch experiments.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "snl/admm.hpp"
#include "snl/error.hpp"
#include "snl/experiment.hpp"
#include "snl/instance_io.hpp"
#include "snl/matrix_design.hpp"
#include "snl/metrics.hpp"
#include "snl/splitting.hpp"
#include "snl/trace.hpp"

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Dense output up to this many sensors, triplets beyond.
constexpr int kDenseLimit = 512;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    snl::write_file(path, text);
  }
}

int report_error(const std::string& kind, const std::string& message, int code) {
  json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << '\n';
  return code;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct GenerateArgs {
  snl::InstanceParams params;
  std::uint64_t seed = 0;
  std::string out;
};

struct DesignArgs {
  std::string edges;
  std::string instance;
  int nodes = -1;
  bool decentralized = false;
  double tol = 1e-8;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string method = "splitting";
  std::string mode = "serial";
  std::optional<double> gamma;
  std::optional<double> alpha;
  int max_iter = 3000;
  std::string warm_start;
  std::string early_stop;
  std::uint64_t seed = 0;
  std::string trace;
  std::string estimate;
  std::string estimate_source = "delta";
  bool decentralized_design = false;
};

struct ExperimentArgs {
  std::string config;
  std::optional<int> trials;
  std::optional<int> threads;
};

int cmd_generate(const GenerateArgs& a) {
  const auto instance = snl::generate_instance(a.params, a.seed);
  emit(snl::instance_to_json(instance), a.out);
  return 0;
}

int cmd_design(const DesignArgs& a) {
  snl::require(a.edges.empty() != a.instance.empty(), snl::ErrorKind::InvalidArgument,
               "design needs exactly one of --edges or --instance");
  const snl::Matrix adjacency =
      a.edges.empty() ? snl::build_adjacency(snl::load_instance(a.instance))
                      : snl::adjacency_from_edge_list(snl::read_file(a.edges), a.nodes);
  const auto params = a.decentralized ? snl::two_block_params_decentralized(adjacency)
                                      : snl::two_block_params(adjacency);
  const auto report = snl::validate_params(params, adjacency, a.tol);

  const int n = static_cast<int>(params.block.rows());
  json out;
  out["n"] = n;
  if (n <= kDenseLimit) {
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) row.push_back(params.block(i, j));
      rows.push_back(row);
    }
    out["S_dense"] = rows;
  } else {
    json triplets = json::array();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (params.block(i, j) != 0.0) triplets.push_back({i, j, params.block(i, j)});
    out["S_triplets"] = triplets;
  }
  out["checks"] = json::parse(report.to_json());
  out["ok"] = report.ok();
  emit(out.dump(1), a.out);
  if (!report.ok()) return report_error("Numeric", "matrix parameter checks failed", 3);
  return 0;
}

int cmd_solve(const SolveArgs& a) {
  const auto instance = snl::load_instance(a.instance);
  const auto mode = a.mode == "serial" ? snl::ExecutionMode::Serial
                                       : snl::ExecutionMode::Decentralized;
  const auto source = a.estimate_source == "delta" ? snl::EstimateSource::DeltaBlock
                                                   : snl::EstimateSource::GBlock;
  std::optional<snl::EarlyStop> early_stop;
  if (a.early_stop == "none") {
  } else if (a.early_stop.empty()) {
    early_stop = snl::EarlyStop{};
  } else {
    try {
      early_stop = snl::EarlyStop{std::stoi(a.early_stop)};
    } catch (const std::exception&) {
      snl::fail(snl::ErrorKind::InvalidArgument, "--early-stop expects an integer patience");
    }
  }

  std::optional<snl::Matrix> warm;
  if (!a.warm_start.empty()) {
    const std::string prefix = "perturb:";
    if (a.warm_start.rfind(prefix, 0) == 0) {
      double sd = 0.0;
      try {
        sd = std::stod(a.warm_start.substr(prefix.size()));
      } catch (const std::exception&) {
        snl::fail(snl::ErrorKind::InvalidArgument, "--warm-start perturb:SD needs a number");
      }
      warm = snl::perturb_truth(instance, sd, a.seed);
    } else {
      warm = snl::matrix_from_json(snl::read_file(a.warm_start));
    }
  }

  snl::SolverTrace trace;
  if (a.method == "splitting") {
    snl::SolverOptions o;
    if (a.gamma) o.gamma = *a.gamma;
    if (a.alpha) o.alpha = *a.alpha;
    o.max_iter = a.max_iter;
    o.early_stop = early_stop;
    o.mode = mode;
    o.seed = a.seed;
    o.estimate = source;
    const auto adjacency = snl::build_adjacency(instance);
    const auto params = a.decentralized_design ? snl::two_block_params_decentralized(adjacency)
                                               : snl::two_block_params(adjacency);
    auto state = warm ? snl::warm_start_v(instance, params, *warm)
                      : snl::init_cold(instance, params);
    trace = snl::run(instance, params, o, std::move(state));
  } else {
    snl::require(!a.gamma, snl::ErrorKind::InvalidArgument, "--gamma applies to splitting only");
    snl::AdmmOptions o;
    if (a.alpha) o.alpha = *a.alpha;
    o.max_iter = a.max_iter;
    o.early_stop = early_stop;
    o.mode = mode;
    o.estimate = source;
    auto state = warm ? snl::warm_start_admm(instance, *warm) : snl::init_admm_cold(instance);
    trace = snl::run_admm(instance, o, std::move(state));
  }

  if (!a.trace.empty()) snl::write_file(a.trace, snl::trace_to_csv(trace));
  if (!a.estimate.empty()) snl::write_file(a.estimate, snl::matrix_to_json(trace.best_estimate));

  json out;
  out["method"] = trace.method;
  out["termination"] = snl::to_string(trace.termination);
  out["iterations"] = trace.iterations;
  out["best_iteration"] = trace.best_iteration;
  out["final_objective"] = trace.final_objective;
  out["alpha"] = trace.alpha;
  out["equivalent_alpha"] = finite_or_null(trace.equivalent_alpha);
  out["consensus_residual"] = finite_or_null(trace.consensus_residual);
  out["certificate_residual"] = finite_or_null(trace.certificate_residual);
  out["messages"] = trace.messages;
  out["bytes"] = trace.bytes;
  out["rounds"] = trace.rounds;
  out["inner_iterations"] = trace.inner_iterations;
  out["inner_warnings"] = trace.inner_warnings;
  if (instance.truth) {
    out["relative_error"] = snl::relative_error(trace.best_estimate, *instance.truth);
    out["mean_distance"] = snl::mean_distance(trace.best_estimate, *instance.truth);
  }
  if (instance.m > 0) out["centrality"] = snl::centrality(trace.best_estimate, instance.anchors);
  std::cout << out.dump(1) << '\n';
  return 0;
}

snl::ExperimentConfig load_config(const ExperimentArgs& a) {
  auto config = snl::config_from_json(snl::read_file(a.config));
  if (a.trials) config.trials = *a.trials;
  if (a.threads) config.threads = *a.threads;
  config.validate();
  return config;
}

void print_written(const std::vector<fs::path>& files, json extra) {
  json list = json::array();
  for (const auto& f : files) list.push_back(f.string());
  extra["written"] = list;
  std::cout << extra.dump(1) << '\n';
}

int cmd_comparison(const ExperimentArgs& a) {
  const auto config = load_config(a);
  const auto summary = snl::run_comparison(config);
  const auto dir = snl::output_directory(config) / config.name;
  print_written(snl::write_comparison(summary, dir), {{"failures", summary.failures.size()}});
  return 0;
}

int cmd_early_stop(const ExperimentArgs& a) {
  const auto config = load_config(a);
  const auto summary = snl::run_early_termination_study(config);
  const auto dir = snl::output_directory(config) / config.name;
  print_written(snl::write_early_stop(summary, dir),
                {{"trials", summary.trials.size()},
                 {"wins", summary.wins},
                 {"win_fraction", summary.win_fraction.estimate},
                 {"win_fraction_95", {summary.win_fraction.lower, summary.win_fraction.upper}},
                 {"failures", summary.failures.size()}});
  return 0;
}

int cmd_centrality(const ExperimentArgs& a) {
  const auto config = load_config(a);
  const auto summary = snl::run_centrality_trace(config);
  const auto dir = snl::output_directory(config) / config.name;
  print_written(snl::write_centrality(summary, dir),
                {{"truth_centrality", summary.truth_centrality},
                 {"failures", summary.failures.size()}});
  return 0;
}

int cmd_validate(const std::string& instance_path, const std::string& config_path) {
  snl::require(!instance_path.empty() || !config_path.empty(), snl::ErrorKind::InvalidArgument,
               "validate needs --instance and/or --config");
  json out;
  if (!instance_path.empty()) {
    const auto instance = snl::load_instance(instance_path);
    const auto adjacency = snl::build_adjacency(instance);
    out["instance"] = {{"valid", true},
                       {"n", instance.n},
                       {"m", instance.m},
                       {"d", instance.d},
                       {"edges", snl::edge_count(adjacency)},
                       {"has_truth", instance.truth.has_value()}};
  }
  if (!config_path.empty()) {
    const auto config = snl::config_from_json(snl::read_file(config_path));
    out["config"] = {{"valid", true}, {"name", config.name}, {"trials", config.trials}};
  }
  std::cout << out.dump(1) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized sensor network localization"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a random instance (JSON)");
  generate->add_option("--n", gen.params.n, "Sensors")->capture_default_str();
  generate->add_option("--m", gen.params.m, "Anchors")->capture_default_str();
  generate->add_option("--d", gen.params.d, "Dimension")->capture_default_str();
  generate->add_option("--radius", gen.params.radius, "Neighborhood radius")->capture_default_str();
  generate->add_option("--max-degree", gen.params.max_degree, "Neighbor cap")->capture_default_str();
  generate->add_option("--noise", gen.params.noise_factor, "Noise factor")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  generate->add_option("--out,-o", gen.out, "Output file (default stdout)");

  DesignArgs des;
  auto* design = app.add_subcommand("design", "Build and check 2-Block matrix parameters");
  design->add_option("--edges", des.edges, "Edge list file, one 'i j' per line")
      ->check(CLI::ExistingFile);
  design->add_option("--instance", des.instance, "Instance JSON")->check(CLI::ExistingFile);
  design->add_option("--nodes", des.nodes, "Node count for --edges");
  design->add_flag("--decentralized", des.decentralized, "Use the decentralized Sinkhorn-Knopp");
  design->add_option("--tol", des.tol, "Check tolerance")->capture_default_str();
  design->add_option("--out,-o", des.out, "Output file (default stdout)");

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Run a solver on an instance");
  solve->add_option("--instance", sol.instance, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--method", sol.method)
      ->check(CLI::IsMember({"splitting", "admm"}))
      ->capture_default_str();
  solve->add_option("--mode", sol.mode)
      ->check(CLI::IsMember({"serial", "decentralized"}))
      ->capture_default_str();
  solve->add_option("--gamma", sol.gamma, "Step size (splitting, default 0.999)");
  solve->add_option("--alpha", sol.alpha, "Prox scaling (default 10 splitting, 150 admm)");
  solve->add_option("--max-iter", sol.max_iter)->capture_default_str();
  solve->add_option("--warm-start", sol.warm_start, "X JSON file or perturb:SD");
  solve->add_option("--early-stop", sol.early_stop, "Enable early stopping [patience, default 100]")
      ->expected(0, 1);
  solve->add_option("--seed", sol.seed, "Seed for perturb warm starts")->capture_default_str();
  solve->add_option("--trace", sol.trace, "Per-iteration trace CSV");
  solve->add_option("--estimate", sol.estimate, "Write the location estimate (JSON)");
  solve->add_option("--estimate-source", sol.estimate_source)
      ->check(CLI::IsMember({"delta", "g"}))
      ->capture_default_str();
  solve->add_flag("--decentralized-design", sol.decentralized_design,
                  "Compute matrix parameters with the decentralized Sinkhorn-Knopp");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Batch experiments");
  experiment->require_subcommand(1);
  auto add_experiment = [&](const char* name, const char* help) {
    auto* sub = experiment->add_subcommand(name, help);
    sub->add_option("--config", exp.config, "Experiment config JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--trials", exp.trials, "Override the trial count");
    sub->add_option("--threads", exp.threads, "Override the worker thread count");
    return sub;
  };
  auto* comparison = add_experiment("comparison", "Relative error, splitting vs ADMM");
  auto* early = add_experiment("early-stop", "Early termination study");
  auto* central = add_experiment("centrality", "Mean centrality per iteration");

  std::string validate_instance, validate_config;
  auto* validate = app.add_subcommand("validate", "Validate an instance and/or config");
  validate->add_option("--instance", validate_instance)->check(CLI::ExistingFile);
  validate->add_option("--config", validate_config)->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("Usage", e.what(), e.get_exit_code() != 0 ? e.get_exit_code() : 2);
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*design) return cmd_design(des);
    if (*solve) {
      // A bare --early-stop leaves the value empty.
      if (solve->count("--early-stop") == 0) sol.early_stop = "none";
      return cmd_solve(sol);
    }
    if (*comparison) return cmd_comparison(exp);
    if (*early) return cmd_early_stop(exp);
    if (*central) return cmd_centrality(exp);
    if (*validate) return cmd_validate(validate_instance, validate_config);
  } catch (const snl::Error& e) {
    return report_error(std::string(snl::to_string(e.kind())), e.what(), 1);
  } catch (const std::exception& e) {
    return report_error("Internal", e.what(), 1);
  }
  return 0;
}
