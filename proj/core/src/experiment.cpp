#include "snl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "snl/error.hpp"
#include "snl/instance_io.hpp"
#include "snl/matrix_design.hpp"
#include "snl/metrics.hpp"
#include "snl/rng.hpp"
#include "snl/svg_plot.hpp"

namespace snl {

using json = nlohmann::json;

namespace {

constexpr std::uint64_t kWarmStream = 0x7761726dULL;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ls(line);
  std::string cell;
  while (std::getline(ls, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double to_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

// Data rows of a schema-versioned CSV; repeated headers from appended files
// are skipped.
std::vector<std::vector<std::string>> csv_rows(const std::string& csv, const char* header,
                                               std::size_t columns, const char* what) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == header) {
      seen_header = true;
      continue;
    }
    require(seen_header, ErrorKind::Io, std::string(what) + " CSV: missing header");
    auto cells = split_csv(line);
    require(cells.size() == columns, ErrorKind::Io,
            std::string(what) + " CSV: expected " + std::to_string(columns) + " columns");
    require(std::stoi(cells[0]) == kExperimentSchemaVersion, ErrorKind::Io,
            std::string(what) + " CSV: unsupported schema version " + cells[0]);
    rows.push_back(std::move(cells));
  }
  return rows;
}

// Runs fn(trial) for every trial, possibly on several threads. Results keep
// trial order; trials throwing snl::Error are reported as failures.
template <typename T>
std::vector<std::pair<int, T>> for_each_trial(const ExperimentConfig& config,
                                              const std::function<T(int)>& fn,
                                              std::vector<TrialFailure>& failures) {
  std::vector<std::optional<T>> results(config.trials);
  std::vector<std::optional<TrialFailure>> failed(config.trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < config.trials; t = next++) {
      try {
        results[t] = fn(t);
      } catch (const Error& e) {
        failed[t] = TrialFailure{t, trial_seed(config, t), e.what()};
      }
    }
  };
  const int threads = std::clamp(config.threads, 1, config.trials);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<std::pair<int, T>> out;
  for (int t = 0; t < config.trials; ++t) {
    if (results[t]) out.emplace_back(t, std::move(*results[t]));
    if (failed[t]) failures.push_back(*failed[t]);
  }
  for (const auto& f : failures)
    std::fprintf(stderr, "warning: trial %d (seed %llu) excluded: %s\n", f.trial,
                 static_cast<unsigned long long>(f.seed), f.message.c_str());
  return out;
}

std::vector<double> padded(const SolverTrace& trace, int length,
                           const std::function<double(const MetricRecord&)>& metric) {
  std::vector<double> out;
  out.reserve(length);
  for (const auto& r : trace.records) {
    if (static_cast<int>(out.size()) == length) break;
    out.push_back(metric(r));
  }
  const double last = out.empty() ? kNotAvailable : out.back();
  out.resize(length, last);
  return out;
}

const char* mode_name(ExecutionMode m) {
  return m == ExecutionMode::Serial ? "serial" : "decentralized";
}

ExecutionMode parse_mode(const std::string& s) {
  if (s == "serial") return ExecutionMode::Serial;
  if (s == "decentralized") return ExecutionMode::Decentralized;
  fail(ErrorKind::InvalidArgument, "unknown mode '" + s + "'");
}

const char* estimate_name(EstimateSource e) {
  return e == EstimateSource::DeltaBlock ? "delta" : "g";
}

EstimateSource parse_estimate(const std::string& s) {
  if (s == "delta") return EstimateSource::DeltaBlock;
  if (s == "g") return EstimateSource::GBlock;
  fail(ErrorKind::InvalidArgument, "unknown estimate source '" + s + "'");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  require(j.is_object(), ErrorKind::InvalidArgument, std::string(where) + " must be an object");
  for (const auto& item : j.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&](const char* k) { return item.key() == k; });
    require(ok, ErrorKind::InvalidArgument,
            std::string("unknown key '") + item.key() + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

struct TrialSetup {
  ProblemInstance instance;
  std::optional<MatrixParams> params;
};

TrialSetup setup_trial(const ExperimentConfig& config, int t, bool need_params) {
  TrialSetup s;
  s.instance = generate_instance(config.instance, trial_seed(config, t));
  if (need_params) s.params = two_block_params(build_adjacency(s.instance));
  return s;
}

SolverTrace solve_once(const ExperimentConfig& config, const TrialSetup& s,
                       const std::string& method, const std::optional<Matrix>& warm) {
  if (method == "splitting") {
    SolverOptions o = config.splitting;
    o.early_stop.reset();
    auto state = warm ? warm_start_v(s.instance, *s.params, *warm) : init_cold(s.instance, *s.params);
    return run(s.instance, *s.params, o, std::move(state));
  }
  AdmmOptions o = config.admm;
  o.early_stop.reset();
  auto state = warm ? warm_start_admm(s.instance, *warm) : init_admm_cold(s.instance);
  return run_admm(s.instance, o, std::move(state));
}

int max_iter_of(const ExperimentConfig& config, const std::string& method) {
  return method == "splitting" ? config.splitting.max_iter : config.admm.max_iter;
}

PlotSeries band_series(const std::string& label, const std::vector<Spread>& spreads) {
  PlotSeries s;
  s.label = label;
  for (std::size_t k = 0; k < spreads.size(); ++k) {
    s.x.push_back(static_cast<double>(k + 1));
    s.y.push_back(spreads[k].median);
    s.band_low.push_back(spreads[k].q25);
    s.band_high.push_back(spreads[k].q75);
  }
  return s;
}

}  // namespace

void ExperimentConfig::validate() const {
  require(trials >= 1, ErrorKind::InvalidArgument, "trials must be >= 1");
  require(!methods.empty(), ErrorKind::InvalidArgument, "at least one method is required");
  for (const auto& m : methods)
    require(m == "splitting" || m == "admm", ErrorKind::InvalidArgument,
            "unknown method '" + m + "'");
  require(cold || warm_start_sd.has_value(), ErrorKind::InvalidArgument,
          "nothing to run: cold is false and no warm start is configured");
  require(!warm_start_sd || *warm_start_sd >= 0.0, ErrorKind::InvalidArgument,
          "warm_start_sd must be >= 0");
  require(!patience || *patience >= 1, ErrorKind::InvalidArgument, "patience must be >= 1");
  require(threads >= 1, ErrorKind::InvalidArgument, "threads must be >= 1");
  require(instance.n >= 1 && instance.d >= 1 && instance.m >= 0 && instance.radius > 0.0 &&
              instance.max_degree >= 1 && instance.noise_factor >= 0.0,
          ErrorKind::InvalidArgument, "invalid instance parameters");
  splitting.validate();
  admm.validate();
}

ExperimentConfig config_from_json(const std::string& text) {
  ExperimentConfig c;
  try {
    const json j = json::parse(text);
    check_keys(j,
               {"name", "trials", "base_seed", "instance", "methods", "splitting", "admm", "cold",
                "warm_start_sd", "patience", "output_dir", "threads"},
               "config");
    read(j, "name", c.name);
    read(j, "trials", c.trials);
    read(j, "base_seed", c.base_seed);
    read(j, "methods", c.methods);
    read(j, "cold", c.cold);
    read(j, "output_dir", c.output_dir);
    read(j, "threads", c.threads);
    if (j.contains("warm_start_sd")) {
      if (j["warm_start_sd"].is_null()) c.warm_start_sd.reset();
      else c.warm_start_sd = j["warm_start_sd"].get<double>();
    }
    if (j.contains("patience")) {
      if (j["patience"].is_null()) c.patience.reset();
      else c.patience = j["patience"].get<int>();
    }
    if (j.contains("instance")) {
      const json& p = j["instance"];
      check_keys(p, {"n", "m", "d", "radius", "max_degree", "noise_factor"}, "instance");
      read(p, "n", c.instance.n);
      read(p, "m", c.instance.m);
      read(p, "d", c.instance.d);
      read(p, "radius", c.instance.radius);
      read(p, "max_degree", c.instance.max_degree);
      read(p, "noise_factor", c.instance.noise_factor);
    }
    if (j.contains("splitting")) {
      const json& s = j["splitting"];
      check_keys(s, {"gamma", "alpha", "max_iter", "fixed_point_tol", "mode", "estimate"},
                 "splitting");
      read(s, "gamma", c.splitting.gamma);
      read(s, "alpha", c.splitting.alpha);
      read(s, "max_iter", c.splitting.max_iter);
      read(s, "fixed_point_tol", c.splitting.fixed_point_tol);
      if (s.contains("mode")) c.splitting.mode = parse_mode(s["mode"].get<std::string>());
      if (s.contains("estimate"))
        c.splitting.estimate = parse_estimate(s["estimate"].get<std::string>());
    }
    if (j.contains("admm")) {
      const json& a = j["admm"];
      check_keys(a, {"alpha", "max_iter", "fixed_point_tol", "mode", "estimate"}, "admm");
      read(a, "alpha", c.admm.alpha);
      read(a, "max_iter", c.admm.max_iter);
      read(a, "fixed_point_tol", c.admm.fixed_point_tol);
      if (a.contains("mode")) c.admm.mode = parse_mode(a["mode"].get<std::string>());
      if (a.contains("estimate"))
        c.admm.estimate = parse_estimate(a["estimate"].get<std::string>());
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("config JSON: ") + e.what());
  }
  c.validate();
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["trials"] = c.trials;
  j["base_seed"] = c.base_seed;
  j["instance"] = {{"n", c.instance.n},
                   {"m", c.instance.m},
                   {"d", c.instance.d},
                   {"radius", c.instance.radius},
                   {"max_degree", c.instance.max_degree},
                   {"noise_factor", c.instance.noise_factor}};
  j["methods"] = c.methods;
  j["splitting"] = {{"gamma", c.splitting.gamma},
                    {"alpha", c.splitting.alpha},
                    {"max_iter", c.splitting.max_iter},
                    {"fixed_point_tol", c.splitting.fixed_point_tol},
                    {"mode", mode_name(c.splitting.mode)},
                    {"estimate", estimate_name(c.splitting.estimate)}};
  j["admm"] = {{"alpha", c.admm.alpha},
               {"max_iter", c.admm.max_iter},
               {"fixed_point_tol", c.admm.fixed_point_tol},
               {"mode", mode_name(c.admm.mode)},
               {"estimate", estimate_name(c.admm.estimate)}};
  j["cold"] = c.cold;
  j["warm_start_sd"] = c.warm_start_sd ? json(*c.warm_start_sd) : json(nullptr);
  j["patience"] = c.patience ? json(*c.patience) : json(nullptr);
  j["output_dir"] = c.output_dir;
  j["threads"] = c.threads;
  return j.dump(2);
}

std::filesystem::path output_directory(const ExperimentConfig& config) {
  const char* env = std::getenv("SNL_OUTPUT_DIR");
  if (env != nullptr && *env != '\0') return env;
  return config.output_dir;
}

std::uint64_t trial_seed(const ExperimentConfig& config, int trial) {
  return config.base_seed + static_cast<std::uint64_t>(trial);
}

const CurveSet* ComparisonSummary::find(const std::string& method,
                                        const std::string& start) const {
  for (const auto& s : sets)
    if (s.method == method && s.start == start) return &s;
  return nullptr;
}

ComparisonSummary run_comparison(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& m : config.methods) {
    if (config.cold) keys.emplace_back(m, "cold");
    if (config.warm_start_sd) keys.emplace_back(m, "warm");
  }
  const bool need_params =
      std::find(config.methods.begin(), config.methods.end(), "splitting") != config.methods.end();

  using Curves = std::vector<std::vector<double>>;
  ComparisonSummary summary;
  std::function<Curves(int)> trial = [&](int t) {
    const TrialSetup s = setup_trial(config, t, need_params);
    std::optional<Matrix> warm;
    if (config.warm_start_sd)
      warm = perturb_truth(s.instance, *config.warm_start_sd,
                           derive_seed(trial_seed(config, t), kWarmStream));
    Curves out;
    for (const auto& [method, start] : keys) {
      const auto trace =
          solve_once(config, s, method, start == "warm" ? warm : std::optional<Matrix>{});
      out.push_back(padded(trace, max_iter_of(config, method),
                           [](const MetricRecord& r) { return r.rel_error; }));
    }
    return out;
  };
  const auto results = for_each_trial(config, trial, summary.failures);

  for (std::size_t k = 0; k < keys.size(); ++k) {
    CurveSet set;
    set.method = keys[k].first;
    set.start = keys[k].second;
    for (const auto& [t, curves] : results) {
      set.trials.push_back(t);
      set.curves.push_back(curves[k]);
    }
    const int length = max_iter_of(config, set.method);
    if (!set.curves.empty()) {
      for (int it = 0; it < length; ++it) {
        std::vector<double> column;
        for (const auto& c : set.curves) column.push_back(c[it]);
        set.per_iteration.push_back(spread(column));
      }
    }
    summary.sets.push_back(std::move(set));
  }
  return summary;
}

static const char* const kComparisonHeader =
    "schema_version,method,start,iteration,median,q25,q75,trials";

std::string comparison_to_csv(const ComparisonSummary& summary) {
  std::ostringstream out;
  out << kComparisonHeader << '\n';
  for (const auto& s : summary.sets)
    for (std::size_t k = 0; k < s.per_iteration.size(); ++k) {
      const auto& sp = s.per_iteration[k];
      out << kExperimentSchemaVersion << ',' << s.method << ',' << s.start << ',' << k + 1 << ','
          << num(sp.median) << ',' << num(sp.q25) << ',' << num(sp.q75) << ','
          << s.curves.size() << '\n';
    }
  return out.str();
}

std::vector<ComparisonRow> comparison_from_csv(const std::string& csv) {
  std::vector<ComparisonRow> out;
  for (const auto& c : csv_rows(csv, kComparisonHeader, 8, "comparison")) {
    ComparisonRow r;
    r.method = c[1];
    r.start = c[2];
    r.iteration = std::stoi(c[3]);
    r.median = to_double(c[4]);
    r.q25 = to_double(c[5]);
    r.q75 = to_double(c[6]);
    r.trials = std::stoi(c[7]);
    out.push_back(r);
  }
  return out;
}

EarlyStopSummary run_early_termination_study(const ExperimentConfig& config) {
  config.validate();
  EarlyStopSummary summary;
  std::function<EarlyStopTrial(int)> trial = [&](int t) {
    const TrialSetup s = setup_trial(config, t, true);
    const Matrix& truth = *s.instance.truth;

    SolverOptions early = config.splitting;
    early.early_stop.reset();
    if (config.patience) early.early_stop = EarlyStop{*config.patience};
    const auto early_trace =
        run(s.instance, *s.params, early, init_cold(s.instance, *s.params));

    SolverOptions full = config.splitting;
    full.early_stop.reset();
    const auto full_trace = run(s.instance, *s.params, full, init_cold(s.instance, *s.params));

    EarlyStopTrial r;
    r.trial = t;
    r.seed = trial_seed(config, t);
    r.stop_iteration = early_trace.iterations;
    r.best_iteration = early_trace.best_iteration;
    r.converged_iterations = full_trace.iterations;
    r.converged_termination = to_string(full_trace.termination);
    r.early_mean_distance = mean_distance(early_trace.best_estimate, truth);
    r.converged_mean_distance = mean_distance(full_trace.final_estimate, truth);
    r.early_centrality = centrality(early_trace.best_estimate, s.instance.anchors);
    r.converged_centrality = centrality(full_trace.final_estimate, s.instance.anchors);
    r.truth_centrality = centrality(truth, s.instance.anchors);
    return r;
  };
  for (auto& [t, r] : for_each_trial(config, trial, summary.failures))
    summary.trials.push_back(std::move(r));
  require(!summary.trials.empty(), ErrorKind::NotConverged, "every trial failed");

  std::vector<double> md_e, md_c, ce_e, ce_c, diff;
  for (const auto& r : summary.trials) {
    summary.wins += r.early_wins() ? 1 : 0;
    md_e.push_back(r.early_mean_distance);
    md_c.push_back(r.converged_mean_distance);
    ce_e.push_back(r.early_centrality);
    ce_c.push_back(r.converged_centrality);
    diff.push_back(r.converged_mean_distance - r.early_mean_distance);
  }
  summary.win_fraction = wilson_interval(summary.wins, static_cast<int>(summary.trials.size()));
  summary.median_early_mean_distance = median(md_e);
  summary.median_converged_mean_distance = median(md_c);
  summary.median_early_centrality = median(ce_e);
  summary.median_converged_centrality = median(ce_c);

  constexpr int kBins = 20;
  const auto [lo_it, hi_it] = std::minmax_element(diff.begin(), diff.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi <= lo) hi = lo + 1e-12;
  const double width = (hi - lo) / kBins;
  for (int b = 0; b < kBins; ++b) summary.difference_histogram.push_back({lo + b * width, lo + (b + 1) * width, 0});
  for (double v : diff) {
    int b = static_cast<int>((v - lo) / width);
    summary.difference_histogram[std::clamp(b, 0, kBins - 1)].count += 1;
  }
  return summary;
}

static const char* const kEarlyStopHeader =
    "schema_version,trial,seed,stop_iteration,best_iteration,converged_iterations,"
    "converged_termination,early_mean_distance,converged_mean_distance,difference,"
    "early_centrality,converged_centrality,truth_centrality,early_wins";

std::string early_stop_to_csv(const EarlyStopSummary& summary) {
  std::ostringstream out;
  out << kEarlyStopHeader << '\n';
  for (const auto& r : summary.trials)
    out << kExperimentSchemaVersion << ',' << r.trial << ',' << r.seed << ',' << r.stop_iteration
        << ',' << r.best_iteration << ',' << r.converged_iterations << ','
        << r.converged_termination << ',' << num(r.early_mean_distance) << ','
        << num(r.converged_mean_distance) << ','
        << num(r.converged_mean_distance - r.early_mean_distance) << ','
        << num(r.early_centrality) << ',' << num(r.converged_centrality) << ','
        << num(r.truth_centrality) << ',' << (r.early_wins() ? 1 : 0) << '\n';
  return out.str();
}

std::vector<EarlyStopTrial> early_stop_from_csv(const std::string& csv) {
  std::vector<EarlyStopTrial> out;
  for (const auto& c : csv_rows(csv, kEarlyStopHeader, 14, "early-stop")) {
    EarlyStopTrial r;
    r.trial = std::stoi(c[1]);
    r.seed = std::stoull(c[2]);
    r.stop_iteration = std::stoi(c[3]);
    r.best_iteration = std::stoi(c[4]);
    r.converged_iterations = std::stoi(c[5]);
    r.converged_termination = c[6];
    r.early_mean_distance = to_double(c[7]);
    r.converged_mean_distance = to_double(c[8]);
    r.early_centrality = to_double(c[10]);
    r.converged_centrality = to_double(c[11]);
    r.truth_centrality = to_double(c[12]);
    out.push_back(r);
  }
  return out;
}

std::string early_stop_summary_json(const EarlyStopSummary& s) {
  json j;
  j["schema_version"] = kExperimentSchemaVersion;
  j["trials"] = s.trials.size();
  j["failures"] = s.failures.size();
  j["wins"] = s.wins;
  j["win_fraction"] = {{"estimate", s.win_fraction.estimate},
                       {"lower95", s.win_fraction.lower},
                       {"upper95", s.win_fraction.upper}};
  j["median_mean_distance"] = {{"early", s.median_early_mean_distance},
                               {"converged", s.median_converged_mean_distance}};
  j["median_centrality"] = {{"early", s.median_early_centrality},
                            {"converged", s.median_converged_centrality}};
  json bins = json::array();
  for (const auto& b : s.difference_histogram)
    bins.push_back({{"low", b.low}, {"high", b.high}, {"count", b.count}});
  j["difference_histogram"] = bins;
  return j.dump(2);
}

CentralitySummary run_centrality_trace(const ExperimentConfig& config) {
  config.validate();
  CentralitySummary summary;
  struct Result {
    std::vector<double> trace;
    double truth = 0.0;
  };
  std::function<Result(int)> trial = [&](int t) {
    const TrialSetup s = setup_trial(config, t, true);
    const auto trace = solve_once(config, s, "splitting", std::nullopt);
    return Result{padded(trace, config.splitting.max_iter,
                         [](const MetricRecord& r) { return r.centrality; }),
                  centrality(*s.instance.truth, s.instance.anchors)};
  };
  const auto results = for_each_trial(config, trial, summary.failures);
  require(!results.empty(), ErrorKind::NotConverged, "every trial failed");
  std::vector<double> truths;
  for (const auto& [t, r] : results) {
    summary.trials.push_back(t);
    truths.push_back(r.truth);
  }
  summary.truth_centrality = mean(truths);
  for (int k = 0; k < config.splitting.max_iter; ++k) {
    std::vector<double> column;
    for (const auto& [t, r] : results) column.push_back(r.trace[k]);
    summary.mean_centrality.push_back(mean(column));
  }
  return summary;
}

static const char* const kCentralityHeader =
    "schema_version,iteration,mean_centrality,truth_centrality,trials";

std::string centrality_to_csv(const CentralitySummary& s) {
  std::ostringstream out;
  out << kCentralityHeader << '\n';
  for (std::size_t k = 0; k < s.mean_centrality.size(); ++k)
    out << kExperimentSchemaVersion << ',' << k + 1 << ',' << num(s.mean_centrality[k]) << ','
        << num(s.truth_centrality) << ',' << s.trials.size() << '\n';
  return out.str();
}

std::vector<std::filesystem::path> write_comparison(const ComparisonSummary& summary,
                                                    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  const auto csv = dir / "comparison.csv";
  write_file(csv, comparison_to_csv(summary));
  written.push_back(csv);
  for (const char* start : {"cold", "warm"}) {
    PlotSpec spec;
    spec.title = std::string("Relative error, ") + start + " start (median and IQR)";
    spec.x_label = "iteration";
    spec.y_label = "relative error";
    spec.log_y = true;
    for (const auto& s : summary.sets)
      if (s.start == start) spec.series.push_back(band_series(s.method, s.per_iteration));
    if (spec.series.empty()) continue;
    const auto svg = dir / (std::string("comparison_") + start + ".svg");
    write_file(svg, render_svg(spec));
    written.push_back(svg);
  }
  return written;
}

std::vector<std::filesystem::path> write_early_stop(const EarlyStopSummary& summary,
                                                    const std::filesystem::path& dir) {
  const auto csv = dir / "early_stop.csv";
  const auto js = dir / "early_stop_summary.json";
  write_file(csv, early_stop_to_csv(summary));
  write_file(js, early_stop_summary_json(summary));
  PlotSpec spec;
  spec.title = "Mean distance: converged minus early stop (histogram)";
  spec.x_label = "difference";
  spec.y_label = "trials";
  PlotSeries hist;
  hist.label = "trials per bin";
  for (const auto& b : summary.difference_histogram) {
    hist.x.insert(hist.x.end(), {b.low, b.low, b.high, b.high});
    const double c = b.count;
    hist.y.insert(hist.y.end(), {0.0, c, c, 0.0});
  }
  spec.series.push_back(hist);
  spec.reference_y = 0.0;
  const auto svg = dir / "early_stop_hist.svg";
  write_file(svg, render_svg(spec));
  return {csv, js, svg};
}

std::vector<std::filesystem::path> write_centrality(const CentralitySummary& summary,
                                                    const std::filesystem::path& dir) {
  const auto csv = dir / "centrality.csv";
  write_file(csv, centrality_to_csv(summary));
  PlotSpec spec;
  spec.title = "Mean centrality of the estimates";
  spec.x_label = "iteration";
  spec.y_label = "centrality";
  PlotSeries s;
  s.label = "splitting";
  for (std::size_t k = 0; k < summary.mean_centrality.size(); ++k) {
    s.x.push_back(static_cast<double>(k + 1));
    s.y.push_back(summary.mean_centrality[k]);
  }
  spec.series.push_back(s);
  spec.reference_y = summary.truth_centrality;
  spec.reference_label = "truth";
  const auto svg = dir / "centrality.svg";
  write_file(svg, render_svg(spec));
  return {csv, svg};
}

}  // namespace snl
