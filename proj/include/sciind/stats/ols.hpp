#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "sciind/stats/correlation.hpp"

namespace sciind::stats {

template <typename Scalar>
struct Coefficient {
  Scalar estimate = 0;
  Scalar se = 0;
  Scalar t = 0;
  Scalar p = 1;
  Scalar standardized = 0;
  Scalar vif = std::numeric_limits<Scalar>::quiet_NaN();  // NaN for the intercept
};

template <typename Scalar>
struct OlsResult {
  Coefficient<Scalar> intercept;
  std::vector<Coefficient<Scalar>> coefficients;  // regressor order
  Scalar r2 = 0;
  Scalar adj_r2 = 0;
  Scalar sigma = 0;  // residual standard error
  Eigen::Index n = 0;
  Eigen::Index df = 0;
  Vector<Scalar> residuals;
  std::vector<Eigen::Index> rows;  // listwise-complete input rows
};

namespace detail {

template <typename Scalar>
Matrix<Scalar> with_intercept(const Matrix<Scalar>& X) {
  Matrix<Scalar> D(X.rows(), X.cols() + 1);
  D.col(0).setOnes();
  D.rightCols(X.cols()) = X;
  return D;
}

// Rank of the design after scaling each column to unit norm.
template <typename Scalar>
Eigen::Index design_rank(const Matrix<Scalar>& D) {
  Matrix<Scalar> S = D;
  for (Eigen::Index j = 0; j < S.cols(); ++j) {
    const Scalar norm = S.col(j).norm();
    if (norm > 0) S.col(j) /= norm;
  }
  Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(S);
  qr.setThreshold(Scalar(1e-10));
  return qr.rank();
}

// R^2 of y on D (D carries the intercept column); least squares via QR so a
// rank-deficient D is tolerated.
template <typename Scalar>
Scalar r_squared(const Matrix<Scalar>& D, const Vector<Scalar>& y) {
  const Vector<Scalar> b = D.colPivHouseholderQr().solve(y);
  const Scalar rss = (y - D * b).squaredNorm();
  const Scalar tss = (y.array() - y.mean()).matrix().squaredNorm();
  return 1 - rss / tss;
}

}  // namespace detail

/// VIF_j = 1 / (1 - R_j^2), R_j^2 from regressing column j on the others with an
/// intercept. Rows with NaN are dropped; perfect collinearity gives +infinity.
template <typename Derived>
Vector<typename Derived::Scalar> vif(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> X = take_rows(input, complete_rows(input));
  const Eigen::Index p = X.cols();
  Vector<Scalar> out = Vector<Scalar>::Ones(p);
  if (p < 2) return out;
  if (X.rows() <= p) throw StatsError("insufficient data");
  for (Eigen::Index j = 0; j < p; ++j) {
    Matrix<Scalar> others(X.rows(), p - 1);
    for (Eigen::Index c = 0, o = 0; c < p; ++c)
      if (c != j) others.col(o++) = X.col(c);
    const Vector<Scalar> xj = X.col(j);
    if ((xj.array() == xj(0)).all()) throw StatsError("zero variance");
    const Scalar r2 = detail::r_squared<Scalar>(detail::with_intercept<Scalar>(others), xj);
    out(j) = r2 >= 1 - Scalar(1e-12) ? std::numeric_limits<Scalar>::infinity() : 1 / (1 - r2);
  }
  return out;
}

/// OLS of y on X with an intercept; NaN in y or X drops the row. Normal
/// equations are solved with Cholesky, falling back to partial-pivot LU.
template <typename DerivedY, typename DerivedX>
OlsResult<typename DerivedY::Scalar> ols(const Eigen::MatrixBase<DerivedY>& y_in, const Eigen::MatrixBase<DerivedX>& X_in) {
  using Scalar = typename DerivedY::Scalar;
  if (y_in.rows() != X_in.rows()) throw StatsError("length mismatch");
  Matrix<Scalar> all(X_in.rows(), X_in.cols() + 1);
  all.col(0) = y_in;
  all.rightCols(X_in.cols()) = X_in;

  OlsResult<Scalar> res;
  res.rows = complete_rows(all);
  const Matrix<Scalar> data = take_rows(all, res.rows);
  const Eigen::Index n = data.rows(), p = X_in.cols();
  if (n <= p + 1) throw StatsError("insufficient data");
  const Vector<Scalar> y = data.col(0);
  const Matrix<Scalar> X = data.rightCols(p);
  const Matrix<Scalar> D = detail::with_intercept<Scalar>(X);
  if (detail::design_rank(D) < p + 1) throw StatsError("collinear design");

  const Matrix<Scalar> XtX = D.transpose() * D;
  const Vector<Scalar> Xty = D.transpose() * y;
  Vector<Scalar> beta;
  Matrix<Scalar> inv;
  Eigen::LLT<Matrix<Scalar>> llt(XtX);
  if (llt.info() == Eigen::Success) {
    beta = llt.solve(Xty);
    inv = llt.solve(Matrix<Scalar>::Identity(p + 1, p + 1));
  } else {
    Eigen::PartialPivLU<Matrix<Scalar>> lu(XtX);
    beta = lu.solve(Xty);
    inv = lu.inverse();
  }

  res.n = n;
  res.df = n - p - 1;
  res.residuals = y - D * beta;
  const Scalar rss = res.residuals.squaredNorm();
  const Scalar tss = (y.array() - y.mean()).matrix().squaredNorm();
  if (tss == 0) throw StatsError("zero variance");
  const Scalar sigma2 = rss / static_cast<Scalar>(res.df);
  res.sigma = std::sqrt(sigma2);
  res.r2 = 1 - rss / tss;
  res.adj_r2 = 1 - (1 - res.r2) * static_cast<Scalar>(n - 1) / static_cast<Scalar>(res.df);

  const Scalar sd_y = std::sqrt(tss / static_cast<Scalar>(n - 1));
  const Vector<Scalar> vifs = vif(X);
  auto coef = [&](Eigen::Index i) {
    Coefficient<Scalar> c;
    c.estimate = beta(i);
    c.se = std::sqrt(sigma2 * inv(i, i));
    c.t = c.se > 0 ? c.estimate / c.se : std::copysign(std::numeric_limits<Scalar>::infinity(), c.estimate);
    c.p = student_t_two_sided(c.t, static_cast<Scalar>(res.df));
    return c;
  };
  res.intercept = coef(0);
  for (Eigen::Index j = 0; j < p; ++j) {
    auto c = coef(j + 1);
    const auto xj = X.col(j);
    const Scalar sd_x = std::sqrt((xj.array() - xj.mean()).square().sum() / static_cast<Scalar>(n - 1));
    c.standardized = c.estimate * sd_x / sd_y;
    c.vif = vifs(j);
    res.coefficients.push_back(c);
  }
  return res;
}

}  // namespace sciind::stats
