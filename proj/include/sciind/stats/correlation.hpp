#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sciind/stats/special.hpp"

namespace sciind::stats {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Sample Pearson r. Throws "insufficient data" for n < 3, "zero variance"
/// for a constant input.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar pearson(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  if (x.size() != y.size()) throw StatsError("length mismatch");
  if (x.size() < 3) throw StatsError("insufficient data");
  const auto dx = (x.array() - x.mean()).matrix().eval();
  const auto dy = (y.array() - y.mean()).matrix().eval();
  const Scalar sxx = dx.squaredNorm(), syy = dy.squaredNorm();
  if (sxx == 0 || syy == 0) throw StatsError("zero variance");
  const Scalar r = dx.dot(dy) / std::sqrt(sxx * syy);
  return r > 1 ? Scalar(1) : (r < -1 ? Scalar(-1) : r);
}

/// Two-sided p of r with n - 2 degrees of freedom; exactly 0 when |r| = 1.
template <typename Scalar>
Scalar pearson_p(Scalar r, Eigen::Index n) {
  if (n < 3) throw StatsError("insufficient data");
  if (!(std::abs(r) <= 1)) throw StatsError("correlation outside [-1,1]");
  if (std::abs(r) == 1) return 0;
  const Scalar df = static_cast<Scalar>(n - 2);
  const Scalar t = r * std::sqrt(df / (1 - r * r));
  return student_t_two_sided(t, df);
}

/// (x - mean) / sd with divisor n - 1.
template <typename Derived>
Vector<typename Derived::Scalar> zscore(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() < 2) throw StatsError("insufficient data");
  Vector<Scalar> d = x.array() - x.mean();
  const Scalar sd = std::sqrt(d.squaredNorm() / static_cast<Scalar>(x.size() - 1));
  if (sd == 0) throw StatsError("zero variance");
  return d / sd;
}

template <typename Derived>
Matrix<typename Derived::Scalar> zscore_columns(const Eigen::MatrixBase<Derived>& X) {
  Matrix<typename Derived::Scalar> Z(X.rows(), X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) Z.col(j) = zscore(X.col(j));
  return Z;
}

template <typename Scalar>
struct CorrelationCell {
  Scalar r;
  Scalar p;
  Eigen::Index n;
};

/// Symmetric k x k matrix of pairwise-complete correlations. A cell is empty
/// when fewer than 3 rows are shared or one side is constant on them.
template <typename Scalar>
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(Eigen::Index k) : k_(k), cells_(static_cast<std::size_t>(k * k)) {}

  Eigen::Index size() const { return k_; }
  const std::optional<CorrelationCell<Scalar>>& operator()(Eigen::Index i, Eigen::Index j) const {
    return cells_[static_cast<std::size_t>(i * k_ + j)];
  }
  std::optional<CorrelationCell<Scalar>>& operator()(Eigen::Index i, Eigen::Index j) {
    return cells_[static_cast<std::size_t>(i * k_ + j)];
  }

 private:
  Eigen::Index k_;
  std::vector<std::optional<CorrelationCell<Scalar>>> cells_;
};

/// Pairwise deletion over a rows x variables table; NaN marks a missing value.
template <typename Derived>
CorrelationMatrix<typename Derived::Scalar> correlation_matrix(const Eigen::MatrixBase<Derived>& table) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = table.cols();
  if (k < 2) throw StatsError("correlation matrix needs at least two variables");
  CorrelationMatrix<Scalar> out(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      std::vector<Eigen::Index> rows;
      for (Eigen::Index r = 0; r < table.rows(); ++r)
        if (!std::isnan(table(r, i)) && !std::isnan(table(r, j))) rows.push_back(r);
      const auto n = static_cast<Eigen::Index>(rows.size());
      if (n < 3) continue;
      Vector<Scalar> x(n), y(n);
      for (Eigen::Index r = 0; r < n; ++r) {
        x(r) = table(rows[static_cast<std::size_t>(r)], i);
        y(r) = table(rows[static_cast<std::size_t>(r)], j);
      }
      if ((x.array() == x(0)).all() || (y.array() == y(0)).all()) continue;  // constant on shared rows
      const Scalar r = i == j ? Scalar(1) : pearson(x, y);
      out(i, j) = out(j, i) = CorrelationCell<Scalar>{r, pearson_p(r, n), n};
    }
  }
  return out;
}

/// Row indices with no NaN in any column.
template <typename Derived>
std::vector<Eigen::Index> complete_rows(const Eigen::MatrixBase<Derived>& X) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index r = 0; r < X.rows(); ++r)
    if (!X.row(r).array().isNaN().any()) rows.push_back(r);
  return rows;
}

template <typename Derived>
Matrix<typename Derived::Scalar> take_rows(const Eigen::MatrixBase<Derived>& X, const std::vector<Eigen::Index>& rows) {
  Matrix<typename Derived::Scalar> out(static_cast<Eigen::Index>(rows.size()), X.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = X.row(rows[i]);
  return out;
}

}  // namespace sciind::stats
