#pragma once

// q-shifted factorials, the q-exponential and the Hahn-Exton q-Bessel series.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "qharm/errors.hpp"
#include "qharm/summation.hpp"

namespace qharm {

using cplx = std::complex<double>;

/// Truncation policy shared by every infinite product and series.
struct SeriesControl {
  /// Products stop at the first factor with |a| q^i below this; series stop
  /// once the tail bound drops below it.
  double trunc_tol = 1e-18;
  int max_terms = 10000;
};

/// Values whose largest summand exceeds the result by more than this factor
/// have lost at least half of the double mantissa.
inline constexpr double kCancellationLimit = 1e8;

namespace detail {

inline void check_base(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw ArgumentError("q must lie in (0,1), got " + std::to_string(q));
  }
}

inline void check_control(const SeriesControl& ctl) {
  if (!(ctl.trunc_tol > 0.0) || ctl.max_terms < 1) {
    throw ArgumentError("trunc_tol must be > 0 and max_terms >= 1");
  }
}

}  // namespace detail

/// (a;q)_n = prod_{i<n} (1 - a q^i); (a;q)_0 = 1.
template <class T>
T q_pochhammer_finite(T a, double q, int n) {
  detail::check_base(q);
  if (n < 0) throw ArgumentError("q_pochhammer_finite: n must be >= 0");
  T p{1};
  T aq = a;
  for (int i = 0; i < n; ++i) {
    p *= T{1} - aq;
    aq *= q;
  }
  return p;
}

/// (a;q)_inf, truncated at the first i with |a| q^i < trunc_tol.
template <class T>
T q_pochhammer_infinite(T a, double q, const SeriesControl& ctl = {}) {
  detail::check_base(q);
  detail::check_control(ctl);
  T p{1};
  T aq = a;
  for (int i = 0; std::abs(aq) >= ctl.trunc_tol; ++i) {
    if (i >= ctl.max_terms) {
      throw TruncationError("q_pochhammer_infinite: max_terms exceeded");
    }
    p *= T{1} - aq;
    aq *= q;
  }
  return p;
}

/// log (-s;q)_inf for s >= 0. Every factor is >= 1, so this never overflows.
inline double log_q_pochhammer_negative(double s, double q, const SeriesControl& ctl = {}) {
  detail::check_base(q);
  if (s < 0.0) throw ArgumentError("log_q_pochhammer_negative: s must be >= 0");
  double acc = 0.0;
  double sq = s;
  for (int i = 0; sq >= ctl.trunc_tol; ++i) {
    if (i >= ctl.max_terms) {
      throw TruncationError("log_q_pochhammer_negative: max_terms exceeded");
    }
    acc += std::log1p(sq);
    sq *= q;
  }
  return acc;
}

/// log (a;q)_n for real a with a q^i < 1 for all i (all factors positive).
inline double log_q_pochhammer_finite_positive(double a, double q, int n) {
  double acc = 0.0;
  double aq = a;
  for (int i = 0; i < n; ++i) {
    acc += std::log1p(-aq);
    aq *= q;
  }
  return acc;
}

/// e(z,q) = 1/(z;q)_inf, the product continuation of sum z^n/(q;q)_n.
template <class T>
T q_exponential(T z, double q, const SeriesControl& ctl = {}) {
  detail::check_base(q);
  detail::check_control(ctl);
  constexpr double pole_tol = 1e-12;
  T zq = z;
  for (int i = 0; std::abs(zq) >= ctl.trunc_tol; ++i) {
    if (i >= ctl.max_terms) throw TruncationError("q_exponential: max_terms exceeded");
    if (std::abs(T{1} - zq) < pole_tol) {
      throw SingularityError("q_exponential: argument within " + std::to_string(pole_tol) +
                             " of the pole q^-" + std::to_string(i));
    }
    zq *= q;
  }
  if constexpr (std::is_same_v<T, double>) {
    if (z <= 0.0) return std::exp(-log_q_pochhammer_negative(-z, q, ctl));
  } else {
    if (z.imag() == 0.0 && z.real() <= 0.0) {
      return T{std::exp(-log_q_pochhammer_negative(-z.real(), q, ctl))};
    }
  }
  return T{1} / q_pochhammer_infinite(z, q, ctl);
}

enum class JvRoute { Series, Transformed };

struct JvResult {
  double value = 0.0;
  int terms = 0;
  /// max |summand| / |value|; 1 when no cancellation occurred.
  double cancellation_ratio = 1.0;
  /// Set when cancellation_ratio exceeds kCancellationLimit.
  bool precision_loss = false;
  JvRoute route = JvRoute::Series;
};

namespace detail {

// Scaled sum of sign * exp(logmag) terms.
struct LogTerm {
  double sign;
  double logmag;
};

inline JvResult finish_log_sum(const std::vector<LogTerm>& terms, double log_prefactor,
                               JvRoute route) {
  JvResult r;
  r.route = route;
  r.terms = static_cast<int>(terms.size());
  double lmax = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.sign != 0.0) lmax = std::max(lmax, t.logmag);
  }
  if (!std::isfinite(lmax)) {
    r.value = 0.0;
    return r;
  }
  CompensatedSum<double> s;
  for (const auto& t : terms) {
    if (t.sign != 0.0) s += t.sign * std::exp(t.logmag - lmax);
  }
  const double scaled = s.value();
  if (scaled == 0.0) {
    r.value = 0.0;
    r.cancellation_ratio = std::numeric_limits<double>::infinity();
    r.precision_loss = true;
    return r;
  }
  const double logv = lmax + std::log(std::abs(scaled)) + log_prefactor;
  if (logv > std::log(std::numeric_limits<double>::max())) {
    throw ArgumentError("hahn_exton_jv: value overflows double range");
  }
  r.value = std::copysign(std::exp(logv), scaled);
  r.cancellation_ratio = 1.0 / std::abs(scaled);
  r.precision_loss = r.cancellation_ratio > kCancellationLimit;
  return r;
}

// Power series in z with compensated accumulation.
inline JvResult jv_series(double z, double qb, double v, const SeriesControl& ctl) {
  const double b = std::pow(qb, v + 1.0);
  const double log_inv_den =
      -(std::log(std::abs(q_pochhammer_infinite(qb, qb, ctl))) +
        std::log(std::abs(q_pochhammer_infinite(b, qb, ctl))));
  const double logz = std::log(z);
  const double logqb = std::log(qb);

  CompensatedSum<double> sum;
  double term = 1.0;
  double max_term = 1.0;
  double log_bound = log_inv_den;
  const double log_tol = std::log(ctl.trunc_tol);
  JvResult r;
  int n = 0;
  for (;; ++n) {
    if (n >= ctl.max_terms) throw TruncationError("hahn_exton_jv: max_terms exceeded");
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    // Crude tail bound qb^{n(n-1)/2} z^n / ((qb;qb)_inf (b;qb)_inf), past its peak.
    const bool past_peak = n > 0 && std::pow(qb, n) * z < 1.0;
    if (past_peak) {
      const double s = std::abs(sum.value());
      if (log_bound < log_tol || (s > 0.0 && log_bound < log_tol + std::log(s))) break;
    }
    log_bound += n * logqb + logz;
    term *= -std::pow(qb, n) * z / ((1.0 - std::pow(qb, n + 1)) * (1.0 - b * std::pow(qb, n)));
    if (!std::isfinite(term)) throw ArgumentError("hahn_exton_jv: series overflows double range");
  }
  r.value = sum.value();
  r.terms = n + 1;
  r.route = JvRoute::Series;
  r.cancellation_ratio = r.value == 0.0 ? std::numeric_limits<double>::infinity()
                                        : max_term / std::abs(r.value);
  r.precision_loss = r.cancellation_ratio > kCancellationLimit;
  return r;
}

// j = (1/(b;qb)_inf) sum_n (-1)^n qb^{n(n-1)/2} b^n (z qb^n; qb)_inf / (qb;qb)_n,
// the large-argument form obtained by swapping the roles of z and b.
inline JvResult jv_transformed(double z, double qb, double v, const SeriesControl& ctl) {
  const double b = std::pow(qb, v + 1.0);
  const double logqb = std::log(qb);
  const double logb = std::log(b);
  std::vector<LogTerm> terms;
  double log_qfact = 0.0;  // log (qb;qb)_n
  for (int n = 0;; ++n) {
    if (n >= ctl.max_terms) throw TruncationError("hahn_exton_jv: max_terms exceeded");
    if (n > 0) log_qfact += std::log1p(-std::pow(qb, n));
    // (z qb^n; qb)_inf in sign/log form.
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    double logp = 0.0;
    double a = z * std::pow(qb, n);
    for (int i = 0; std::abs(a) >= ctl.trunc_tol; ++i) {
      if (i >= ctl.max_terms) throw TruncationError("hahn_exton_jv: max_terms exceeded");
      const double f = 1.0 - a;
      if (f == 0.0) {
        sign = 0.0;
        break;
      }
      if (f < 0.0) sign = -sign;
      logp += std::log(std::abs(f));
      a *= qb;
    }
    const double logmag = 0.5 * n * (n - 1) * logqb + n * logb - log_qfact + logp;
    terms.push_back({sign, logmag});
    if (z * std::pow(qb, n) < 1.0 && sign != 0.0) {
      double lmax = -std::numeric_limits<double>::infinity();
      for (const auto& t : terms) {
        if (t.sign != 0.0) lmax = std::max(lmax, t.logmag);
      }
      if (logmag < lmax + std::log(ctl.trunc_tol)) break;
    }
  }
  const double log_pref = -std::log(q_pochhammer_infinite(b, qb, ctl));
  return finish_log_sum(terms, log_pref, JvRoute::Transformed);
}

}  // namespace detail

/// Hahn-Exton series sum_n (-1)^n qb^{n(n-1)/2} z^n / ((qb;qb)_n (qb^{v+1};qb)_n).
///
/// For z <= 1 the power series is summed directly. For z > 1 the transformed
/// representation is evaluated as well and the route with the smaller
/// cancellation ratio wins; the result carries the ratio and a precision-loss
/// flag instead of failing.
inline JvResult hahn_exton_jv(double z, double qb, double v, const SeriesControl& ctl = {}) {
  detail::check_base(qb);
  detail::check_control(ctl);
  if (!(v > -1.0)) throw ArgumentError("hahn_exton_jv: v must be > -1");
  if (!(z >= 0.0) || !std::isfinite(z)) throw ArgumentError("hahn_exton_jv: z must be >= 0");
  if (z == 0.0) return JvResult{1.0, 1, 1.0, false, JvRoute::Series};
  if (z <= 1.0) return detail::jv_series(z, qb, v, ctl);

  JvResult best = detail::jv_transformed(z, qb, v, ctl);
  try {
    JvResult s = detail::jv_series(z, qb, v, ctl);
    if (s.cancellation_ratio < best.cancellation_ratio) best = s;
  } catch (const ArgumentError&) {
    // Series intermediates overflow; the transformed route stands.
  }
  return best;
}

}  // namespace qharm
