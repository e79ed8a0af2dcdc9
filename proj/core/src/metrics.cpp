#include "snl/metrics.hpp"

#include "snl/error.hpp"

namespace snl {

double relative_error(const Matrix& x_hat, const Matrix& x0) {
  require(x_hat.rows() == x0.rows() && x_hat.cols() == x0.cols(), ErrorKind::InvalidArgument,
          "relative_error: shape mismatch");
  const double denom = x0.norm();
  require(denom > 0.0, ErrorKind::InvalidArgument, "relative_error: reference has zero norm");
  return (x_hat - x0).norm() / denom;
}

double centrality(const Matrix& x_hat, const Matrix& anchors) {
  require(anchors.rows() > 0, ErrorKind::InvalidArgument, "centrality: no anchors");
  require(anchors.cols() == x_hat.cols(), ErrorKind::InvalidArgument,
          "centrality: dimension mismatch");
  const Eigen::RowVectorXd center = anchors.colwise().mean();
  return (x_hat.rowwise() - center).rowwise().norm().mean();
}

double mean_distance(const Matrix& x_hat, const Matrix& x0) {
  require(x_hat.rows() == x0.rows() && x_hat.cols() == x0.cols(), ErrorKind::InvalidArgument,
          "mean_distance: shape mismatch");
  return (x_hat - x0).rowwise().norm().mean();
}

}  // namespace snl
