#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sciind/stats/correlation.hpp"

namespace sciind::stats {

template <typename Scalar>
struct EigenPairs {
  Vector<Scalar> values;   // descending
  Matrix<Scalar> vectors;  // column i pairs with values(i)
  int sweeps = 0;
};

/// Cyclic Jacobi for a symmetric matrix. Stops when the off-diagonal
/// Frobenius norm drops below `tol`; throws after `max_sweeps`.
template <typename Derived>
EigenPairs<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input,
                                                  typename Derived::Scalar tol = 1e-12, int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw StatsError("matrix must be square");
  const Eigen::Index k = input.rows();
  Matrix<Scalar> A = input;
  Matrix<Scalar> V = Matrix<Scalar>::Identity(k, k);

  auto off = [&] {
    Scalar s = 0;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        if (i != j) s += A(i, j) * A(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off() >= tol) {
    if (sweep == max_sweeps)
      throw StatsError("Jacobi eigensolver did not converge after " + std::to_string(sweep) + " sweeps");
    ++sweep;
    for (Eigen::Index p = 0; p < k - 1; ++p) {
      for (Eigen::Index q = p + 1; q < k; ++q) {
        if (A(p, q) == 0) continue;
        Eigen::JacobiRotation<Scalar> J;
        J.makeJacobi(A, p, q);
        A.applyOnTheLeft(p, q, J.adjoint());
        A.applyOnTheRight(p, q, J);
        V.applyOnTheRight(p, q, J);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return A(a, a) > A(b, b); });
  EigenPairs<Scalar> out{Vector<Scalar>(k), Matrix<Scalar>(k, k), sweep};
  for (Eigen::Index i = 0; i < k; ++i) {
    out.values(i) = A(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = V.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

template <typename Scalar>
struct PcaResult {
  Scalar eigenvalue = 0;
  Scalar variance_share = 0;
  Vector<Scalar> loadings;
  Vector<Scalar> scores;           // one per row in `rows`
  std::vector<Eigen::Index> rows;  // listwise-complete input rows
  Vector<Scalar> eigenvalues;      // all, descending
};

/// First principal component of the correlation matrix. NaN marks a missing
/// value; rows with any NaN are dropped. Scores are z-scored rows times the
/// loadings, so their variance equals the eigenvalue.
template <typename Derived>
PcaResult<typename Derived::Scalar> pca_first(const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = X.cols();
  if (k < 1) throw StatsError("no variables");
  PcaResult<Scalar> out;
  out.rows = complete_rows(X);
  const auto n = static_cast<Eigen::Index>(out.rows.size());
  if (n < std::max<Eigen::Index>(k, 2)) throw StatsError("insufficient data");

  const Matrix<Scalar> Z = zscore_columns(take_rows(X, out.rows));
  const Matrix<Scalar> R = (Z.transpose() * Z) / static_cast<Scalar>(n - 1);
  auto eig = jacobi_eigen(R);
  out.eigenvalues = eig.values;
  out.eigenvalue = eig.values(0);
  out.variance_share = out.eigenvalue / static_cast<Scalar>(k);
  out.loadings = eig.vectors.col(0).normalized();
  if (out.loadings.sum() < 0) out.loadings = -out.loadings;
  out.scores = Z * out.loadings;
  return out;
}

}  // namespace sciind::stats
