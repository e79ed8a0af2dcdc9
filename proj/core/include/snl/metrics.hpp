#pragma once

#include "snl/types.hpp"

namespace snl {

// ||X_hat - X0||_F / ||X0||_F. Throws when ||X0||_F = 0.
double relative_error(const Matrix& x_hat, const Matrix& x0);

// Mean distance of the estimates from the anchor centroid. Throws when there
// are no anchors.
double centrality(const Matrix& x_hat, const Matrix& anchors);

// Mean Euclidean distance of each sensor estimate from its true location.
double mean_distance(const Matrix& x_hat, const Matrix& x0);

}  // namespace snl
