#include "snl/trace.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "snl/error.hpp"
#include "snl/metrics.hpp"
#include "snl/prox.hpp"

namespace snl {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::MaxIterations: return "max_iterations";
    case Termination::EarlyStop: return "early_stop";
    case Termination::FixedPoint: return "fixed_point";
  }
  return "unknown";
}

Matrix gather_estimates(const std::vector<const LiftedPoint*>& estimates) {
  require(!estimates.empty(), ErrorKind::InvalidArgument, "no estimates");
  const int n = estimates.front()->sensors();
  const int d = estimates.front()->dim();
  Matrix x(n, d);
  for (int i = 0; i < n; ++i) x.row(i) = estimates[i]->X.row(i);
  return x;
}

MetricRecord evaluate_metrics(const ProblemInstance& instance,
                              const std::vector<const LiftedPoint*>& estimates,
                              const std::vector<const LiftedPoint*>& copies,
                              const std::vector<const LiftedPoint*>& g_outputs) {
  MetricRecord rec;
  const Matrix x_hat = gather_estimates(estimates);
  for (int i = 0; i < instance.n; ++i) rec.objective += g_i(instance, i, *estimates[i]);
  if (instance.truth) {
    rec.rel_error = relative_error(x_hat, *instance.truth);
    rec.mean_distance = mean_distance(x_hat, *instance.truth);
  }
  if (instance.m > 0) rec.centrality = centrality(x_hat, instance.anchors);
  for (int i = 0; i < instance.n; ++i)
    rec.psd_residual = std::max(rec.psd_residual, psd_violation(instance, i, *g_outputs[i]));

  LiftedPoint mean = LiftedPoint::zero(instance.n, instance.d);
  for (const auto* c : copies) mean += *c;
  mean *= 1.0 / static_cast<double>(copies.size());
  double spread = 0.0;
  for (const auto* c : copies) spread = std::max(spread, (*c - mean).norm());
  const double scale = mean.norm();
  rec.consensus_residual = scale > 0.0 ? spread / scale : spread;
  return rec;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr const char* kTraceHeader =
    "iteration,objective,rel_error,mean_distance,centrality,psd_residual,consensus_residual,"
    "messages,bytes";

}  // namespace

std::string trace_to_csv(const SolverTrace& trace) {
  std::ostringstream out;
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.iteration << ',' << num(r.objective) << ',' << num(r.rel_error) << ','
        << num(r.mean_distance) << ',' << num(r.centrality) << ',' << num(r.psd_residual) << ','
        << num(r.consensus_residual) << ',' << r.messages << ',' << r.bytes << '\n';
  }
  return out.str();
}

std::vector<MetricRecord> trace_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line == kTraceHeader, ErrorKind::Io,
          "trace CSV: unexpected header");
  std::vector<MetricRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // Appended traces repeat the header.
    if (line == kTraceHeader) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    require(cells.size() == 9, ErrorKind::Io, "trace CSV: expected 9 columns");
    MetricRecord r;
    r.iteration = std::stoi(cells[0]);
    r.objective = std::strtod(cells[1].c_str(), nullptr);
    r.rel_error = std::strtod(cells[2].c_str(), nullptr);
    r.mean_distance = std::strtod(cells[3].c_str(), nullptr);
    r.centrality = std::strtod(cells[4].c_str(), nullptr);
    r.psd_residual = std::strtod(cells[5].c_str(), nullptr);
    r.consensus_residual = std::strtod(cells[6].c_str(), nullptr);
    r.messages = std::stoull(cells[7]);
    r.bytes = std::stoull(cells[8]);
    out.push_back(r);
  }
  return out;
}

}  // namespace snl
