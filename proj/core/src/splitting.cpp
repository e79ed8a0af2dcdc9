#include "snl/splitting.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "snl/error.hpp"
#include "snl/network.hpp"
#include "snl/rng.hpp"
#include "splitting_internal.hpp"

namespace snl {

namespace {

using detail::SparseRows;

struct Plan {
  int n = 0;
  SparseRows L;
  SparseRows W;
};

Plan make_plan(const ProblemInstance& instance, const MatrixParams& params) {
  require(params.size() == 2 * instance.n && params.W.rows() == params.size() &&
              params.L.rows() == params.size(),
          ErrorKind::InvalidArgument, "matrix parameters must be 2n x 2n");
  return {instance.n, detail::sparse_rows(params.L), detail::sparse_rows(params.W)};
}

// Per-iteration reductions. Contributions are added in function order
// 0..2n-1 in both execution modes.
struct Reductions {
  LiftedPoint sum_y;
  double wx_sq = 0.0;
  double x_sq = 0.0;
  LiftedPoint sum_x;

  Reductions(int n, int d) : sum_y(LiftedPoint::zero(n, d)), sum_x(LiftedPoint::zero(n, d)) {}

  // `input` = v_i + (L x)_i, `wx` = (W x)_i.
  void add(const LiftedPoint& input, const LiftedPoint& x, const LiftedPoint& wx) {
    sum_y += input;
    sum_y -= x;
    sum_x += x;
    wx_sq += wx.X.squaredNorm() + wx.Y.squaredNorm();
    x_sq += x.X.squaredNorm() + x.Y.squaredNorm();
  }

  void finish(SolverState& state, double gamma, int functions) const {
    state.fixed_point_residual = gamma * std::sqrt(wx_sq) / std::max(1.0, std::sqrt(x_sq));
    const double xbar = sum_x.norm() / functions;
    state.certificate_residual = xbar > 0.0 ? sum_y.norm() / xbar : sum_y.norm();
  }
};

void accumulate(LiftedPoint& target, const SparseRows::value_type& row,
                const std::vector<const LiftedPoint*>& values) {
  for (const auto& [j, coeff] : row) target.axpy(coeff, *values[j]);
}

MetricRecord metrics_for(const ProblemInstance& instance, const std::vector<LiftedPoint>& x,
                         EstimateSource source) {
  const int n = instance.n;
  std::vector<const LiftedPoint*> estimates(n);
  std::vector<const LiftedPoint*> copies(2 * n);
  std::vector<const LiftedPoint*> g_outputs(n);
  for (int i = 0; i < n; ++i) {
    estimates[i] = source == EstimateSource::DeltaBlock ? &x[n + i] : &x[i];
    g_outputs[i] = &x[i];
  }
  for (int i = 0; i < 2 * n; ++i) copies[i] = &x[i];
  return evaluate_metrics(instance, estimates, copies, g_outputs);
}

void note_inner(SolverState& state, const GProxResult& r) {
  state.inner_iterations += r.iterations;
  if (!r.converged) ++state.inner_warnings;
}

template <typename Step>
SolverTrace drive_splitting(const ProblemInstance& instance, const SolverOptions& options,
                            SolverState& state, const char* method, Step&& step) {
  detail::DriveHooks hooks;
  hooks.step = [&] { return step(state); };
  hooks.metrics = [&] { return metrics_for(instance, state.x, options.estimate); };
  hooks.estimate = [&] { return sensor_estimates(state, options.estimate); };
  hooks.iteration = [&] { return state.iteration; };
  hooks.fixed_point_residual = [&] { return state.fixed_point_residual; };
  SolverTrace trace = detail::drive(
      method, {options.max_iter, options.early_stop, options.fixed_point_tol}, hooks,
      state.objective_history);
  trace.alpha = options.alpha;
  trace.certificate_residual = state.certificate_residual;
  trace.inner_iterations = state.inner_iterations;
  trace.inner_warnings = state.inner_warnings;
  return trace;
}

// State a sensor keeps between iterations in the decentralized execution.
struct SplittingWorker {
  LiftedPoint v_g;
  LiftedPoint v_psd;
  LiftedPoint x_g;
  LiftedPoint x_psd;

  auto lifted() { return std::tie(v_g, v_psd, x_g, x_psd); }
};

}  // namespace

void SolverOptions::validate() const {
  require(gamma > 0.0 && gamma < 1.0, ErrorKind::InvalidArgument, "gamma must lie in (0, 1)");
  require(alpha > 0.0, ErrorKind::InvalidArgument, "alpha must be > 0");
  require(max_iter >= 0, ErrorKind::InvalidArgument, "max_iter must be >= 0");
  require(!early_stop || early_stop->patience >= 1, ErrorKind::InvalidArgument,
          "early-stop patience must be >= 1");
  require(inner.tol0 > 0.0 && inner.tol_min > 0.0, ErrorKind::InvalidArgument,
          "inner schedule parameters must be positive");
}

SolverState init_cold(const ProblemInstance& instance, const MatrixParams& params, double rho) {
  require(params.size() == 2 * instance.n, ErrorKind::InvalidArgument,
          "matrix parameters must be 2n x 2n");
  SolverState state;
  const auto zero = LiftedPoint::zero(instance.n, instance.d);
  state.v.assign(2 * instance.n, zero);
  state.x.assign(2 * instance.n, zero);
  state.gprox.reserve(instance.n);
  for (int i = 0; i < instance.n; ++i) state.gprox.push_back(build_g_prox_data(instance, i, rho));
  return state;
}

SolverState warm_start_v(const ProblemInstance& instance, const MatrixParams& params,
                         const Matrix& x_tilde, double rho) {
  require(x_tilde.rows() == instance.n && x_tilde.cols() == instance.d,
          ErrorKind::InvalidArgument, "warm start must be n x d");
  SolverState state = init_cold(instance, params, rho);
  const auto lifted = LiftedPoint::gram(x_tilde);
  for (int i = 0; i < instance.n; ++i) {
    state.v[i] = lifted;
    state.v[instance.n + i] = -1.0 * lifted;
  }
  return state;
}

Matrix perturb_truth(const ProblemInstance& instance, double sd, std::uint64_t seed) {
  require(instance.truth.has_value(), ErrorKind::InvalidArgument,
          "perturb_truth: instance has no ground truth");
  require(sd >= 0.0, ErrorKind::InvalidArgument, "perturb_truth: sd must be >= 0");
  Matrix out = *instance.truth;
  Rng rng(seed);
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index k = 0; k < out.cols(); ++k) out(i, k) += sd * rng.normal();
  return out;
}

void iterate(SolverState& state, const ProblemInstance& instance, const MatrixParams& params,
             const SolverOptions& options) {
  const Plan plan = make_plan(instance, params);
  const int n = plan.n;
  const int p = 2 * n;
  require(static_cast<int>(state.v.size()) == p && static_cast<int>(state.x.size()) == p &&
              state.sensors() == n,
          ErrorKind::InvalidArgument, "solver state does not match the instance");
  const double tol = options.inner.tolerance(state.iteration);

  std::vector<const LiftedPoint*> xs(p);
  for (int i = 0; i < p; ++i) xs[i] = &state.x[i];

  std::vector<LiftedPoint> inputs(p);
  for (int i = 0; i < p; ++i) {
    inputs[i] = state.v[i];
    accumulate(inputs[i], plan.L[i], xs);
    if (i < n) {
      auto r = g_prox(state.gprox[i], inputs[i], options.alpha, tol, options.inner.max_inner);
      note_inner(state, r);
      state.x[i] = std::move(r.point);
    } else {
      state.x[i] = delta_prox(instance, i - n, inputs[i], false).point;
    }
  }

  Reductions red(n, instance.d);
  LiftedPoint wx = LiftedPoint::zero(n, instance.d);
  for (int i = 0; i < p; ++i) {
    wx.set_zero();
    accumulate(wx, plan.W[i], xs);
    red.add(inputs[i], state.x[i], wx);
    state.v[i].axpy(-options.gamma, wx);
  }
  red.finish(state, options.gamma, p);
  ++state.iteration;
}

SolverTrace run(const ProblemInstance& instance, const MatrixParams& params,
                const SolverOptions& options, SolverState initial) {
  options.validate();
  if (options.mode == ExecutionMode::Decentralized)
    return run_decentralized(instance, params, options, std::move(initial));
  make_plan(instance, params);
  return drive_splitting(instance, options, initial, "splitting", [&](SolverState& s) {
    iterate(s, instance, params, options);
    return detail::StepTraffic{};
  });
}

SolverTrace run_decentralized(const ProblemInstance& instance, const MatrixParams& params,
                              const SolverOptions& options, SolverState initial) {
  options.validate();
  const Plan plan = make_plan(instance, params);
  const int n = plan.n;
  for (int i = 0; i < n; ++i)
    require(plan.L[i].empty(), ErrorKind::InvalidArgument,
            "decentralized execution requires 2-Block matrix parameters");

  const auto graph = neighbor_lists(build_adjacency(instance));
  SimulatedNetwork<LiftedPoint> net(graph);
  const std::size_t point_bytes = LiftedPoint::zero(n, instance.d).byte_size();

  std::vector<SplittingWorker> workers(n);
  for (int i = 0; i < n; ++i) {
    workers[i].v_g = initial.v[i];
    workers[i].v_psd = initial.v[n + i];
    workers[i].x_g = initial.x[i];
    workers[i].x_psd = initial.x[n + i];
  }

  // Resolves function j's latest output as seen by worker i.
  auto lookup = [&](int i, int j, const std::map<int, LiftedPoint>& got_g,
                    const std::map<int, LiftedPoint>& got_psd) -> const LiftedPoint& {
    const bool g_block = j < n;
    const int owner = g_block ? j : j - n;
    if (owner == i) return g_block ? workers[i].x_g : workers[i].x_psd;
    const auto& got = g_block ? got_g : got_psd;
    const auto it = got.find(owner);
    if (it == got.end()) {
      fail(ErrorKind::Network, "worker " + std::to_string(i) + " needs output of function " +
                                   std::to_string(j) + " from a non-neighbor");
    }
    return it->second;
  };

  auto step = [&](SolverState& s) {
    const std::size_t bytes_before = net.total_bytes();
    const std::size_t messages_before = net.total_messages();
    const double tol = options.inner.tolerance(s.iteration);
    const double gamma = options.gamma;

    std::vector<LiftedPoint> in_g(n);
    std::vector<LiftedPoint> in_psd(n);

    // Block 1: g proxes, then round A.
    for (int i = 0; i < n; ++i) {
      in_g[i] = workers[i].v_g;
      auto r = g_prox(s.gprox[i], in_g[i], options.alpha, tol, options.inner.max_inner);
      note_inner(s, r);
      workers[i].x_g = std::move(r.point);
      for (int j : graph[i]) net.send(i, j, workers[i].x_g, point_bytes);
    }
    net.deliver();
    std::vector<std::map<int, LiftedPoint>> got_g(n);
    std::vector<std::map<int, LiftedPoint>> got_psd(n);
    for (int i = 0; i < n; ++i)
      for (auto& env : net.receive(i)) got_g[i].emplace(env.from, std::move(env.payload));

    // Block 2: PSD projections on v + L x, then round B.
    for (int i = 0; i < n; ++i) {
      in_psd[i] = workers[i].v_psd;
      for (const auto& [j, coeff] : plan.L[n + i])
        in_psd[i].axpy(coeff, lookup(i, j, got_g[i], got_psd[i]));
      workers[i].x_psd = delta_prox(instance, i, in_psd[i], false).point;
      for (int j : graph[i]) net.send(i, j, workers[i].x_psd, point_bytes);
    }
    net.deliver();
    for (int i = 0; i < n; ++i)
      for (auto& env : net.receive(i)) got_psd[i].emplace(env.from, std::move(env.payload));

    // Local v updates from W x.
    std::vector<LiftedPoint> wx_g(n);
    std::vector<LiftedPoint> wx_psd(n);
    for (int i = 0; i < n; ++i) {
      wx_g[i] = LiftedPoint::zero(n, instance.d);
      wx_psd[i] = LiftedPoint::zero(n, instance.d);
      for (const auto& [j, coeff] : plan.W[i]) wx_g[i].axpy(coeff, lookup(i, j, got_g[i], got_psd[i]));
      for (const auto& [j, coeff] : plan.W[n + i])
        wx_psd[i].axpy(coeff, lookup(i, j, got_g[i], got_psd[i]));
      workers[i].v_g.axpy(-gamma, wx_g[i]);
      workers[i].v_psd.axpy(-gamma, wx_psd[i]);
    }

    // Observer: global view for metrics and residuals only.
    Reductions red(n, instance.d);
    for (int i = 0; i < n; ++i) red.add(in_g[i], workers[i].x_g, wx_g[i]);
    for (int i = 0; i < n; ++i) red.add(in_psd[i], workers[i].x_psd, wx_psd[i]);
    red.finish(s, gamma, 2 * n);
    for (int i = 0; i < n; ++i) {
      s.v[i] = workers[i].v_g;
      s.v[n + i] = workers[i].v_psd;
      s.x[i] = workers[i].x_g;
      s.x[n + i] = workers[i].x_psd;
    }
    ++s.iteration;
    return detail::StepTraffic{net.total_messages() - messages_before,
                               net.total_bytes() - bytes_before};
  };

  SolverTrace trace =
      drive_splitting(instance, options, initial, "splitting-decentralized", step);
  trace.rounds = net.rounds();
  return trace;
}

Matrix sensor_estimates(const SolverState& state, EstimateSource source) {
  const int n = state.sensors();
  require(static_cast<int>(state.x.size()) == 2 * n && n > 0, ErrorKind::InvalidArgument,
          "sensor_estimates: malformed state");
  Matrix out(n, state.x.front().dim());
  for (int i = 0; i < n; ++i) {
    const auto& copy = source == EstimateSource::DeltaBlock ? state.x[n + i] : state.x[i];
    out.row(i) = copy.X.row(i);
  }
  return out;
}

bool EarlyStopMonitor::observe(double value) {
  const int index = count_++;
  if (best_index_ < 0 || value < best_value_) {
    best_value_ = value;
    best_index_ = index;
    since_best_ = 0;
    return false;
  }
  if (value > best_value_) {
    ++since_best_;
  } else {
    since_best_ = 0;
  }
  return patience_ && since_best_ >= *patience_;
}

namespace detail {

SolverTrace drive(const char* method, const DriveLimits& limits, const DriveHooks& hooks,
                  std::vector<double>& objective_history) {
  SolverTrace trace;
  trace.method = method;
  EarlyStopMonitor monitor(limits.early_stop ? std::optional<int>(limits.early_stop->patience)
                                             : std::nullopt);
  Matrix best;
  bool stopped_early = false;
  for (int k = 0; k < limits.max_iter; ++k) {
    const StepTraffic traffic = hooks.step();
    MetricRecord rec = hooks.metrics();
    rec.iteration = hooks.iteration();
    rec.fixed_point_residual = hooks.fixed_point_residual();
    rec.messages = traffic.messages;
    rec.bytes = traffic.bytes;
    trace.messages += traffic.messages;
    trace.bytes += traffic.bytes;
    objective_history.push_back(rec.objective);
    trace.records.push_back(rec);

    const bool stop = monitor.observe(rec.objective);
    if (monitor.best_index() == monitor.observed() - 1) {
      best = hooks.estimate();
      trace.best_iteration = rec.iteration;
    }
    if (stop) {
      stopped_early = true;
      trace.termination = Termination::EarlyStop;
      break;
    }
    if (rec.fixed_point_residual <= limits.fixed_point_tol) {
      trace.termination = Termination::FixedPoint;
      break;
    }
  }
  trace.iterations = hooks.iteration();
  trace.final_estimate = hooks.estimate();
  trace.best_estimate = stopped_early ? best : trace.final_estimate;
  if (!stopped_early) trace.best_iteration = trace.iterations;
  if (!trace.records.empty()) {
    trace.final_objective = trace.records.back().objective;
    trace.consensus_residual = trace.records.back().consensus_residual;
  }
  return trace;
}

}  // namespace detail

int splitting_persistent_lifted_per_sensor() {
  return static_cast<int>(std::tuple_size_v<decltype(std::declval<SplittingWorker&>().lifted())>);
}

}  // namespace snl
