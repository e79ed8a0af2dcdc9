#pragma once

#include <vector>

namespace snl {

// Quantile with linear interpolation between order statistics
// (position q * (n - 1)). Throws on empty input or q outside [0, 1].
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);
double mean(const std::vector<double>& values);

struct Spread {
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double iqr() const { return q75 - q25; }
};
Spread spread(const std::vector<double>& values);

struct Interval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Wilson score interval for a binomial proportion; z = 1.96 gives 95%.
Interval wilson_interval(int successes, int trials, double z = 1.959963984540054);

}  // namespace snl
