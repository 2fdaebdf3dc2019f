#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sciind::stats {

class StatsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Continued fraction for I_x(a,b), modified Lentz.
template <typename Scalar>
Scalar beta_cf(Scalar a, Scalar b, Scalar x) {
  constexpr Scalar tiny = Scalar(1e-300);
  constexpr Scalar eps = Scalar(1e-12);
  constexpr int max_iter = 300;

  const Scalar qab = a + b, qap = a + 1, qam = a - 1;
  Scalar c = 1;
  Scalar d = 1 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1 / d;
  Scalar h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const Scalar m2 = 2 * m;
    Scalar aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1 / d;
    const Scalar del = d * c;
    h *= del;
    if (std::abs(del - 1) < eps) return h;
  }
  throw StatsError("incomplete beta did not converge in " + std::to_string(max_iter) + " iterations");
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
template <typename Scalar>
Scalar incomplete_beta(Scalar a, Scalar b, Scalar x) {
  if (!(a > 0 && b > 0)) throw StatsError("incomplete beta needs positive shape parameters");
  if (!(x >= 0 && x <= 1)) throw StatsError("incomplete beta argument outside [0,1]");
  if (x == 0 || x == 1) return x;
  using std::exp, std::lgamma, std::log;
  const Scalar front = exp(lgamma(a + b) - lgamma(a) - lgamma(b) + a * log(x) + b * std::log1p(-x));
  if (x < (a + 1) / (a + b + 2)) return front * detail::beta_cf(a, b, x) / a;
  return 1 - front * detail::beta_cf(b, a, 1 - x) / b;
}

/// Two-sided p for Student's t with `df` degrees of freedom.
template <typename Scalar>
Scalar student_t_two_sided(Scalar t, Scalar df) {
  if (!(df > 0)) throw StatsError("degrees of freedom must be positive");
  if (std::isinf(t)) return 0;
  const Scalar p = incomplete_beta(df / 2, Scalar(0.5), df / (df + t * t));
  return p < 0 ? Scalar(0) : (p > 1 ? Scalar(1) : p);
}

}  // namespace sciind::stats
