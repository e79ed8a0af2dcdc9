#pragma once

#include <Eigen/Dense>

namespace snl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// One copy of the decision variable (X, Y) of the lifted SDP
//   S(X, Y) = [ I  X^T ]
//             [ X  Y   ]
// X is n x d (row i is the location estimate of sensor i), Y is n x n
// symmetric.
struct LiftedPoint {
  Matrix X;
  Matrix Y;

  LiftedPoint() = default;
  LiftedPoint(Matrix x, Matrix y) : X(std::move(x)), Y(std::move(y)) {}

  static LiftedPoint zero(int n, int d) {
    return {Matrix::Zero(n, d), Matrix::Zero(n, n)};
  }
  // (X, X X^T): the rank-d lifting of a location matrix.
  static LiftedPoint gram(const Matrix& x) { return {x, x * x.transpose()}; }

  int sensors() const { return static_cast<int>(X.rows()); }
  int dim() const { return static_cast<int>(X.cols()); }

  LiftedPoint& operator+=(const LiftedPoint& o) {
    X += o.X;
    Y += o.Y;
    return *this;
  }
  LiftedPoint& operator-=(const LiftedPoint& o) {
    X -= o.X;
    Y -= o.Y;
    return *this;
  }
  LiftedPoint& operator*=(double s) {
    X *= s;
    Y *= s;
    return *this;
  }
  // this += s * o
  void axpy(double s, const LiftedPoint& o) {
    X.noalias() += s * o.X;
    Y.noalias() += s * o.Y;
  }
  void set_zero() {
    X.setZero();
    Y.setZero();
  }

  // Plain Frobenius norm over all entries of X and Y.
  double norm() const { return std::sqrt(X.squaredNorm() + Y.squaredNorm()); }
  // Norm induced by S(X, Y): off-diagonal X appears twice in S, so
  // ||.||_S^2 = ||Y||_F^2 + 2 ||X||_F^2.
  double weighted_norm() const {
    return std::sqrt(Y.squaredNorm() + 2.0 * X.squaredNorm());
  }

  // Bytes of a dense transmission of this point.
  std::size_t byte_size() const {
    return sizeof(double) * static_cast<std::size_t>(X.size() + Y.size());
  }
};

inline LiftedPoint operator+(LiftedPoint a, const LiftedPoint& b) { return a += b; }
inline LiftedPoint operator-(LiftedPoint a, const LiftedPoint& b) { return a -= b; }
inline LiftedPoint operator*(double s, LiftedPoint a) { return a *= s; }

inline double max_abs_diff(const LiftedPoint& a, const LiftedPoint& b) {
  return std::max((a.X - b.X).cwiseAbs().maxCoeff(), (a.Y - b.Y).cwiseAbs().maxCoeff());
}

}  // namespace snl
