#pragma once

#include <cmath>
#include <string>

#include "qharm/errors.hpp"
#include "qharm/qseries.hpp"

namespace qharm {

/// The pair (q, v) together with its derived normalization constants.
///
/// Immutable after construction. c_qv() normalizes the transform so that it is
/// its own inverse; B_qv() bounds the transform's sup norm by the weighted L1 norm.
class QParams {
 public:
  explicit QParams(double q = 0.5, double v = 0.0, SeriesControl ctl = {})
      : q_(q), v_(v), ctl_(ctl) {
    if (!(q > 0.0 && q < 1.0)) throw ArgumentError("QParams: q must lie in (0,1)");
    if (!(v > -1.0)) throw ArgumentError("QParams: v must be > -1");
    detail::check_control(ctl);
    const double Q = q * q;
    const double b = std::pow(q, 2.0 * v + 2.0);
    const double qq = q_pochhammer_infinite(Q, Q, ctl_);
    c_qv_ = q_pochhammer_infinite(b, Q, ctl_) / qq / (1.0 - q);
    B_qv_ = q_pochhammer_infinite(-Q, Q, ctl_) * q_pochhammer_infinite(-b, Q, ctl_) / qq / (1.0 - q);
    bessel_bound_ = q_pochhammer_infinite(-Q, Q, ctl_) * q_pochhammer_infinite(-b, Q, ctl_) /
                    q_pochhammer_infinite(b, Q, ctl_);
  }

  double q() const { return q_; }
  double v() const { return v_; }
  /// Base of the kernel series, q^2.
  double base() const { return q_ * q_; }
  const SeriesControl& control() const { return ctl_; }
  double trunc_tol() const { return ctl_.trunc_tol; }
  int max_terms() const { return ctl_.max_terms; }

  /// (1/(1-q)) (q^{2v+2};q^2)_inf / (q^2;q^2)_inf
  double c_qv() const { return c_qv_; }
  /// (1/(1-q)) (-q^2;q^2)_inf (-q^{2v+2};q^2)_inf / (q^2;q^2)_inf
  double B_qv() const { return B_qv_; }
  /// (-q^2;q^2)_inf (-q^{2v+2};q^2)_inf / (q^{2v+2};q^2)_inf, the uniform bound on |j_v|.
  double bessel_bound_constant() const { return bessel_bound_; }

  /// Exponent 2v+2 of the merged Jackson/measure weight x^{2v+1} dx.
  double weight_exponent() const { return 2.0 * v_ + 2.0; }

  friend bool operator==(const QParams& a, const QParams& b) {
    return a.q_ == b.q_ && a.v_ == b.v_;
  }

 private:
  double q_;
  double v_;
  SeriesControl ctl_;
  double c_qv_ = 0.0;
  double B_qv_ = 0.0;
  double bessel_bound_ = 0.0;
};

}  // namespace qharm
