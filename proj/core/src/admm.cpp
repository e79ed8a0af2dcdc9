#include "snl/admm.hpp"

#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "snl/error.hpp"
#include "snl/network.hpp"
#include "splitting_internal.hpp"

namespace snl {

namespace {

// Output of function `index` shipped between sensors.
struct TaggedPoint {
  int index = 0;
  LiftedPoint point;
};

// State sensor i keeps between iterations: V, R, U for both f_i and f_{n+i}.
struct AdmmWorker {
  LiftedPoint V_g, R_g, U_g;
  LiftedPoint V_psd, R_psd, U_psd;

  auto lifted() { return std::tie(V_g, R_g, U_g, V_psd, R_psd, U_psd); }
};

LiftedPoint prox_of(const ProblemInstance& instance, AdmmState& state, int i,
                    const LiftedPoint& input, double scale, double tol, int max_inner) {
  const int n = instance.n;
  if (i >= n) return delta_prox(instance, i - n, input, false).point;
  auto r = g_prox(state.gprox[i], input, scale, tol, max_inner);
  state.inner_iterations += r.iterations;
  if (!r.converged) ++state.inner_warnings;
  return std::move(r.point);
}

MetricRecord admm_metrics(const ProblemInstance& instance, const std::vector<LiftedPoint>& u,
                          EstimateSource source) {
  const int n = instance.n;
  std::vector<const LiftedPoint*> estimates(n);
  std::vector<const LiftedPoint*> copies(2 * n);
  std::vector<const LiftedPoint*> g_outputs(n);
  for (int i = 0; i < n; ++i) {
    estimates[i] = source == EstimateSource::DeltaBlock ? &u[n + i] : &u[i];
    g_outputs[i] = &u[i];
  }
  for (int i = 0; i < 2 * n; ++i) copies[i] = &u[i];
  return evaluate_metrics(instance, estimates, copies, g_outputs);
}

// R_i = mean of U_j over K_i, accumulated in ascending j.
template <typename Lookup>
LiftedPoint neighborhood_mean(const std::vector<int>& k_set, int n, int d, Lookup&& lookup) {
  LiftedPoint r = LiftedPoint::zero(n, d);
  for (int j : k_set) r += lookup(j);
  r *= 1.0 / static_cast<double>(k_set.size());
  return r;
}

// V += R_new - R_old/2 - U_old/2; returns ||V_new - V_old||_F^2.
double update_v(LiftedPoint& v, const LiftedPoint& r_new, const LiftedPoint& r_old,
                const LiftedPoint& u_old) {
  LiftedPoint delta = r_new;
  delta.axpy(-0.5, r_old);
  delta.axpy(-0.5, u_old);
  v += delta;
  return delta.X.squaredNorm() + delta.Y.squaredNorm();
}

void finish_residual(AdmmState& state, double dv_sq) {
  double u_sq = 0.0;
  for (const auto& u : state.U) u_sq += u.X.squaredNorm() + u.Y.squaredNorm();
  state.fixed_point_residual = std::sqrt(dv_sq) / std::max(1.0, std::sqrt(u_sq));
}

void check_state(const ProblemInstance& instance, const AdmmState& state) {
  const auto p = static_cast<std::size_t>(2 * instance.n);
  require(state.U.size() == p && state.R.size() == p && state.V.size() == p &&
              state.K_sets.size() == p && state.sensors() == instance.n,
          ErrorKind::InvalidArgument, "ADMM state does not match the instance");
  for (const auto& k : state.K_sets)
    require(!k.empty(), ErrorKind::InvalidArgument, "ADMM neighbor sets must be nonempty");
}

}  // namespace

void AdmmOptions::validate() const {
  require(alpha > 0.0, ErrorKind::InvalidArgument, "alpha must be > 0");
  require(max_iter >= 0, ErrorKind::InvalidArgument, "max_iter must be >= 0");
  require(!early_stop || early_stop->patience >= 1, ErrorKind::InvalidArgument,
          "early-stop patience must be >= 1");
}

Matrix build_gprime(const Matrix& adjacency) {
  const Eigen::Index n = adjacency.rows();
  require(adjacency.cols() == n && n > 0, ErrorKind::InvalidArgument,
          "adjacency must be square and nonempty");
  const Matrix with_loops = adjacency + Matrix::Identity(n, n);
  Matrix g(2 * n, 2 * n);
  g << adjacency, with_loops, with_loops, adjacency;
  return g;
}

std::vector<std::vector<int>> build_k_sets(const Matrix& gprime) { return neighbor_lists(gprime); }

AdmmState init_admm_cold(const ProblemInstance& instance, double rho) {
  AdmmState state;
  const auto zero = LiftedPoint::zero(instance.n, instance.d);
  const auto p = static_cast<std::size_t>(2 * instance.n);
  state.U.assign(p, zero);
  state.R.assign(p, zero);
  state.V.assign(p, zero);
  state.K_sets = build_k_sets(build_gprime(build_adjacency(instance)));
  state.gprox.reserve(instance.n);
  for (int i = 0; i < instance.n; ++i) state.gprox.push_back(build_g_prox_data(instance, i, rho));
  return state;
}

AdmmState warm_start_admm(const ProblemInstance& instance, const Matrix& x_tilde, double rho) {
  require(x_tilde.rows() == instance.n && x_tilde.cols() == instance.d,
          ErrorKind::InvalidArgument, "warm start must be n x d");
  AdmmState state = init_admm_cold(instance, rho);
  const auto lifted = LiftedPoint::gram(x_tilde);
  for (std::size_t i = 0; i < state.U.size(); ++i) {
    state.U[i] = lifted;
    state.R[i] = lifted;
    state.V[i] = lifted;
  }
  return state;
}

void admm_iterate(AdmmState& state, const ProblemInstance& instance, const AdmmOptions& options) {
  check_state(instance, state);
  const int n = instance.n;
  const int p = 2 * n;
  const double tol = options.inner.tolerance(state.iteration);

  std::vector<LiftedPoint> u_new(p);
  for (int i = 0; i < p; ++i) {
    const double scale = options.alpha / static_cast<double>(state.K_sets[i].size());
    u_new[i] = prox_of(instance, state, i, state.V[i], scale, tol, options.inner.max_inner);
  }
  double dv_sq = 0.0;
  for (int i = 0; i < p; ++i) {
    LiftedPoint r_new = neighborhood_mean(state.K_sets[i], n, instance.d,
                                          [&](int j) -> const LiftedPoint& { return u_new[j]; });
    dv_sq += update_v(state.V[i], r_new, state.R[i], state.U[i]);
    state.R[i] = std::move(r_new);
  }
  state.U = std::move(u_new);
  finish_residual(state, dv_sq);
  ++state.iteration;
}

SolverTrace run_admm(const ProblemInstance& instance, const AdmmOptions& options,
                     AdmmState initial) {
  options.validate();
  check_state(instance, initial);
  const int n = instance.n;
  AdmmState& state = initial;

  detail::DriveHooks hooks;
  hooks.metrics = [&] { return admm_metrics(instance, state.U, options.estimate); };
  hooks.estimate = [&] { return admm_sensor_estimates(state, options.estimate); };
  hooks.iteration = [&] { return state.iteration; };
  hooks.fixed_point_residual = [&] { return state.fixed_point_residual; };

  std::vector<double> history;
  const char* method = "admm";
  std::size_t rounds = 0;

  // Decentralized execution: one worker per sensor running f_i and f_{n+i}
  // in series; a single exchange round ships (U_i, U_{n+i}) to each graph
  // neighbor.
  const auto graph = neighbor_lists(build_adjacency(instance));
  SimulatedNetwork<TaggedPoint> net(graph);
  std::vector<AdmmWorker> workers;

  if (options.mode == ExecutionMode::Serial) {
    hooks.step = [&] {
      admm_iterate(state, instance, options);
      return detail::StepTraffic{};
    };
  } else {
    method = "admm-decentralized";
    workers.resize(n);
    for (int i = 0; i < n; ++i) {
      workers[i].V_g = state.V[i];
      workers[i].R_g = state.R[i];
      workers[i].U_g = state.U[i];
      workers[i].V_psd = state.V[n + i];
      workers[i].R_psd = state.R[n + i];
      workers[i].U_psd = state.U[n + i];
    }
    const std::size_t point_bytes = LiftedPoint::zero(n, instance.d).byte_size();
    hooks.step = [&] {
      const std::size_t bytes_before = net.total_bytes();
      const std::size_t messages_before = net.total_messages();
      const double tol = options.inner.tolerance(state.iteration);
      std::vector<LiftedPoint> u_g(n);
      std::vector<LiftedPoint> u_psd(n);
      for (int i = 0; i < n; ++i) {
        const double s_g = options.alpha / static_cast<double>(state.K_sets[i].size());
        const double s_psd = options.alpha / static_cast<double>(state.K_sets[n + i].size());
        u_g[i] = prox_of(instance, state, i, workers[i].V_g, s_g, tol, options.inner.max_inner);
        u_psd[i] =
            prox_of(instance, state, n + i, workers[i].V_psd, s_psd, tol, options.inner.max_inner);
        for (int j : graph[i]) {
          net.send(i, j, {i, u_g[i]}, point_bytes);
          net.send(i, j, {n + i, u_psd[i]}, point_bytes);
        }
      }
      net.deliver();

      double dv_sq = 0.0;
      std::vector<double> dv_parts(2 * n, 0.0);
      for (int i = 0; i < n; ++i) {
        std::map<int, LiftedPoint> got;
        for (auto& env : net.receive(i)) got.emplace(env.payload.index, std::move(env.payload.point));
        auto lookup = [&](int j) -> const LiftedPoint& {
          if (j == i) return u_g[i];
          if (j == n + i) return u_psd[i];
          const auto it = got.find(j);
          if (it == got.end())
            fail(ErrorKind::Network, "ADMM worker " + std::to_string(i) +
                                         " missing neighbor output " + std::to_string(j));
          return it->second;
        };
        AdmmWorker& w = workers[i];
        LiftedPoint r_g = neighborhood_mean(state.K_sets[i], n, instance.d, lookup);
        LiftedPoint r_psd = neighborhood_mean(state.K_sets[n + i], n, instance.d, lookup);
        dv_parts[i] = update_v(w.V_g, r_g, w.R_g, w.U_g);
        dv_parts[n + i] = update_v(w.V_psd, r_psd, w.R_psd, w.U_psd);
        w.R_g = std::move(r_g);
        w.R_psd = std::move(r_psd);
        w.U_g = u_g[i];
        w.U_psd = u_psd[i];
      }
      for (double part : dv_parts) dv_sq += part;

      for (int i = 0; i < n; ++i) {
        state.U[i] = workers[i].U_g;
        state.R[i] = workers[i].R_g;
        state.V[i] = workers[i].V_g;
        state.U[n + i] = workers[i].U_psd;
        state.R[n + i] = workers[i].R_psd;
        state.V[n + i] = workers[i].V_psd;
      }
      finish_residual(state, dv_sq);
      ++state.iteration;
      return detail::StepTraffic{net.total_messages() - messages_before,
                                 net.total_bytes() - bytes_before};
    };
  }

  SolverTrace trace = detail::drive(
      method, {options.max_iter, options.early_stop, options.fixed_point_tol}, hooks, history);
  trace.rounds = options.mode == ExecutionMode::Serial ? rounds : net.rounds();
  trace.alpha = options.alpha;
  std::size_t k_total = 0;
  for (const auto& k : state.K_sets) k_total += k.size();
  trace.equivalent_alpha = options.alpha * static_cast<double>(2 * n) / static_cast<double>(k_total);
  trace.inner_iterations = state.inner_iterations;
  trace.inner_warnings = state.inner_warnings;
  return trace;
}

Matrix admm_sensor_estimates(const AdmmState& state, EstimateSource source) {
  const int n = state.sensors();
  require(static_cast<int>(state.U.size()) == 2 * n && n > 0, ErrorKind::InvalidArgument,
          "admm_sensor_estimates: malformed state");
  Matrix out(n, state.U.front().dim());
  for (int i = 0; i < n; ++i) {
    const auto& copy = source == EstimateSource::DeltaBlock ? state.U[n + i] : state.U[i];
    out.row(i) = copy.X.row(i);
  }
  return out;
}

int admm_persistent_lifted_per_sensor() {
  return static_cast<int>(std::tuple_size_v<decltype(std::declval<AdmmWorker&>().lifted())>);
}

}  // namespace snl
