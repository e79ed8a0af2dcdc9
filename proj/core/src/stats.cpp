#include "snl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "snl/error.hpp"

namespace snl {

double quantile(std::vector<double> values, double q) {
  require(!values.empty(), ErrorKind::InvalidArgument, "quantile of empty sample");
  require(q >= 0.0 && q <= 1.0, ErrorKind::InvalidArgument, "quantile level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double mean(const std::vector<double>& values) {
  require(!values.empty(), ErrorKind::InvalidArgument, "mean of empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

Spread spread(const std::vector<double>& values) {
  return {quantile(values, 0.5), quantile(values, 0.25), quantile(values, 0.75)};
}

Interval wilson_interval(int successes, int trials, double z) {
  require(trials > 0 && successes >= 0 && successes <= trials, ErrorKind::InvalidArgument,
          "wilson_interval: need 0 <= successes <= trials, trials > 0");
  const double nt = trials;
  const double p = successes / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double centre = (p + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {p, std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace snl
