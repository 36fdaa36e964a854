#pragma once

// The normalized kernel j_v(x, q^2) = sum_n (-1)^n q^{n(n+1)} x^{2n} / ((q^2;q^2)_n (q^{2v+2};q^2)_n),
// i.e. the Hahn-Exton series in base q^2 evaluated at z = q^2 x^2.

#include <cmath>
#include <limits>

#include "qharm/params.hpp"
#include "qharm/qseries.hpp"

namespace qharm {

/// j_v(x, q^2) for arbitrary x >= 0.
inline JvResult bessel_kernel(double x, const QParams& p) {
  const double Q = p.base();
  return hahn_exton_jv(Q * x * x, Q, p.v(), p.control());
}

/// j_v(q^m, q^2) on the lattice.
///
/// Here z = (q^2)^{m+1}. For m >= -1 the power series converges without
/// cancellation. For m < -1, z = Q^{-K} with K = -(m+1) >= 1 makes the first K+1
/// terms of the transformed representation vanish exactly, leaving
///
///   j = ((Q;Q)_inf / (b;Q)_inf) sum_{p>=0} (-1)^{K+1+p} Q^{(K+1+p)(K+p)/2} b^{K+1+p}
///                                          / ((Q;Q)_{K+1+p} (Q;Q)_p),
///
/// with b = Q^{v+1}. Its terms fall off like Q^{p^2/2}, so the value is
/// accurate to rounding even where it is far below the double range.
inline double lattice_bessel(int m, const QParams& p) {
  const double Q = p.base();
  if (m >= -1) {
    return hahn_exton_jv(std::pow(p.q(), 2.0 * m + 2.0), Q, p.v(), p.control()).value;
  }
  const int K = -(m + 1);
  const double logQ = std::log(Q);
  const double b = std::pow(Q, p.v() + 1.0);
  const double logb = std::log(b);
  const SeriesControl& ctl = p.control();

  double log_qfact_n = log_q_pochhammer_finite_positive(Q, Q, K + 1);  // log (Q;Q)_{K+1+p}
  double log_qfact_p = 0.0;                                            // log (Q;Q)_p
  double lead = 0.0;
  CompensatedSum<double> s;
  for (int k = 0;; ++k) {
    if (k >= ctl.max_terms) throw TruncationError("lattice_bessel: max_terms exceeded");
    const double n = K + 1 + k;
    const double logt = 0.5 * n * (n - 1.0) * logQ + n * logb - log_qfact_n - log_qfact_p;
    if (k == 0) lead = logt;
    const double rel = std::exp(logt - lead);
    s += (k % 2 == 0) ? rel : -rel;
    if (rel < ctl.trunc_tol) break;
    log_qfact_n += std::log1p(-std::pow(Q, n + 1.0));
    log_qfact_p += std::log1p(-std::pow(Q, k + 1.0));
  }
  const double log_pref = std::log(q_pochhammer_infinite(Q, Q, ctl)) -
                          std::log(q_pochhammer_infinite(b, Q, ctl));
  const double sign = ((K + 1) % 2 == 0) ? 1.0 : -1.0;
  return sign * s.value() * std::exp(lead + log_pref);
}

/// Upper bound on |j_v(q^n, q^2)|: the uniform constant for n >= 0, times
/// q^{n^2 + (2v+1) n} for n < 0.
inline double bessel_bound(int n, const QParams& p) {
  const double c = p.bessel_bound_constant();
  if (n >= 0) return c;
  const double e = static_cast<double>(n) * n + (2.0 * p.v() + 1.0) * n;
  return c * std::pow(p.q(), e);
}

/// True when |value| <= bound(n) (1 + slack). Both sides may underflow to
/// zero deep in the large-argument tail; the comparison is then done in logs.
inline bool satisfies_bessel_bound(int n, double value, const QParams& p, double slack = 1e-9) {
  const double bound = bessel_bound(n, p);
  if (bound > std::numeric_limits<double>::min()) {
    return std::abs(value) <= bound * (1.0 + slack);
  }
  if (value == 0.0) return true;
  const double log_bound = std::log(p.bessel_bound_constant()) +
                           (static_cast<double>(n) * n + (2.0 * p.v() + 1.0) * n) * std::log(p.q());
  return std::log(std::abs(value)) <= log_bound + std::log1p(slack);
}

}  // namespace qharm
