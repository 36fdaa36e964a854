#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qharm/errors.hpp"
#include "qharm/params.hpp"
#include "qharm/summation.hpp"

namespace qharm {

/// Finite window {q^n : n_min <= n <= n_max} of the q-lattice.
///
/// Index i runs over n = n_min + i, so points decrease with i (q < 1): index 0
/// is the largest point, the x -> infinity end.
class QLattice {
 public:
  QLattice(double q, int n_min, int n_max) : q_(q), n_min_(n_min), n_max_(n_max) {
    if (!(q > 0.0 && q < 1.0)) throw ArgumentError("QLattice: q must lie in (0,1)");
    if (n_min > n_max) throw ArgumentError("QLattice: n_min must be <= n_max");
  }

  double q() const { return q_; }
  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  std::size_t size() const { return static_cast<std::size_t>(n_max_ - n_min_ + 1); }
  bool contains(int n) const { return n >= n_min_ && n <= n_max_; }
  /// Transform operations need the window to straddle x = 1.
  bool straddles_one() const { return n_min_ < 0 && n_max_ > 0; }

  int exponent(std::size_t i) const { return n_min_ + static_cast<int>(i); }
  std::size_t index(int n) const {
    if (!contains(n)) {
      throw ArgumentError("lattice exponent " + std::to_string(n) + " outside window [" +
                          std::to_string(n_min_) + "," + std::to_string(n_max_) + "]");
    }
    return static_cast<std::size_t>(n - n_min_);
  }
  /// q^n
  double point(int n) const { return std::pow(q_, n); }
  double point_at(std::size_t i) const { return point(exponent(i)); }
  std::vector<double> points() const {
    std::vector<double> x(size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = point_at(i);
    return x;
  }

  friend bool operator==(const QLattice& a, const QLattice& b) {
    return a.q_ == b.q_ && a.n_min_ == b.n_min_ && a.n_max_ == b.n_max_;
  }

 private:
  double q_;
  int n_min_;
  int n_max_;
};

/// Samples f(q^n) on a lattice window plus the limit f(0) when known.
class LatticeFunction {
 public:
  explicit LatticeFunction(QLattice lattice)
      : lattice_(std::move(lattice)), values_(lattice_.size(), cplx{0.0, 0.0}) {}

  LatticeFunction(QLattice lattice, std::vector<cplx> values,
                  std::optional<cplx> value_at_zero = std::nullopt)
      : lattice_(std::move(lattice)), values_(std::move(values)), zero_(value_at_zero) {
    if (values_.size() != lattice_.size()) {
      throw ArgumentError("LatticeFunction: expected " + std::to_string(lattice_.size()) +
                          " values, got " + std::to_string(values_.size()));
    }
    for (const auto& z : values_) check_finite(z);
    if (zero_) check_finite(*zero_);
  }

  /// Samples a callable x -> f(x) at every lattice point.
  template <class F>
  static LatticeFunction sample(const QLattice& lattice, F&& f,
                                std::optional<cplx> value_at_zero = std::nullopt) {
    std::vector<cplx> v(lattice.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(f(lattice.point_at(i)));
    return LatticeFunction(lattice, std::move(v), value_at_zero);
  }

  /// Samples a callable n -> f(q^n) by lattice exponent.
  template <class F>
  static LatticeFunction from_exponents(const QLattice& lattice, F&& f,
                                        std::optional<cplx> value_at_zero = std::nullopt) {
    std::vector<cplx> v(lattice.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(f(lattice.exponent(i)));
    return LatticeFunction(lattice, std::move(v), value_at_zero);
  }

  const QLattice& lattice() const { return lattice_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<cplx>& values() const { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx at_exponent(int n) const { return values_[lattice_.index(n)]; }
  const std::optional<cplx>& value_at_zero() const { return zero_; }

  void set(std::size_t i, cplx z) {
    check_finite(z);
    values_[i] = z;
  }
  void set_value_at_zero(std::optional<cplx> z) {
    if (z) check_finite(*z);
    zero_ = z;
  }

  bool is_real(double tol = 0.0) const {
    for (const auto& z : values_) {
      if (std::abs(z.imag()) > tol) return false;
    }
    return true;
  }
  double sup_abs() const {
    double m = 0.0;
    for (const auto& z : values_) m = std::max(m, std::abs(z));
    return m;
  }

  LatticeFunction& operator*=(cplx s) {
    for (auto& z : values_) z *= s;
    if (zero_) *zero_ *= s;
    return *this;
  }

 private:
  static void check_finite(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ArgumentError("LatticeFunction: non-finite value");
    }
  }

  QLattice lattice_;
  std::vector<cplx> values_;
  std::optional<cplx> zero_;
};

inline void require_same_lattice(const LatticeFunction& f, const LatticeFunction& g) {
  if (!(f.lattice() == g.lattice())) throw ArgumentError("functions live on different lattices");
}

/// alpha f + beta g; value_at_zero is kept when both operands carry one.
inline LatticeFunction linear_combination(cplx alpha, const LatticeFunction& f, cplx beta,
                                          const LatticeFunction& g) {
  require_same_lattice(f, g);
  std::vector<cplx> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * f[i] + beta * g[i];
  std::optional<cplx> z;
  if (f.value_at_zero() && g.value_at_zero()) {
    z = alpha * *f.value_at_zero() + beta * *g.value_at_zero();
  }
  return LatticeFunction(f.lattice(), std::move(v), z);
}

/// Pointwise product.
inline LatticeFunction pointwise_product(const LatticeFunction& f, const LatticeFunction& g) {
  require_same_lattice(f, g);
  std::vector<cplx> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] * g[i];
  std::optional<cplx> z;
  if (f.value_at_zero() && g.value_at_zero()) z = *f.value_at_zero() * *g.value_at_zero();
  return LatticeFunction(f.lattice(), std::move(v), z);
}

struct JacksonResult {
  cplx value;
  /// |(1-q) q^n f(q^n)| at the n_min (large x) and n_max (small x) ends.
  double tail_large_x = 0.0;
  double tail_small_x = 0.0;
};

/// (1-q) sum_{n=n_min}^{n_max} q^n f(q^n): the window truncation of the
/// doubly infinite Jackson sum. Summation runs n ascending.
inline JacksonResult jackson_integral(const LatticeFunction& f) {
  const QLattice& L = f.lattice();
  const double q = L.q();
  CompensatedSum<cplx> s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (1.0 - q) * L.point_at(i) * f[i];
  JacksonResult r;
  r.value = s.value();
  r.tail_large_x = (1.0 - q) * L.point_at(0) * std::abs(f[0]);
  r.tail_small_x = (1.0 - q) * L.point_at(f.size() - 1) * std::abs(f[f.size() - 1]);
  return r;
}

/// Measure weight (1-q) q^{n(2v+2)} of the lattice point q^n: the Jackson
/// weight times x^{2v+1}.
inline double measure_weight(int n, const QParams& p) {
  return (1.0 - p.q()) * std::pow(p.q(), n * p.weight_exponent());
}

inline std::vector<double> measure_weights(const QLattice& L, const QParams& p) {
  std::vector<double> w(L.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = measure_weight(L.exponent(i), p);
  return w;
}

/// ||f||_{q,p,v} = [(1-q) sum q^{n(2v+2)} |f(q^n)|^p]^{1/p} over the window.
inline double lp_norm(const LatticeFunction& f, double p, const QParams& params) {
  if (!(p >= 1.0)) throw ArgumentError("lp_norm: p must be >= 1");
  if (f.lattice().q() != params.q()) throw ArgumentError("lp_norm: lattice q differs from params");
  const QLattice& L = f.lattice();
  CompensatedSum<double> s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    s += measure_weight(L.exponent(i), params) * std::pow(std::abs(f[i]), p);
  }
  return std::pow(s.value(), 1.0 / p);
}

/// Window-level heuristics for membership in C_{q,b} and C_{q,0}.
struct DecayDiagnostics {
  double sup_abs = 0.0;
  bool bounded = true;
  /// |f| at the five largest points (n_min, n_min+1, ...), x -> infinity end.
  std::vector<double> large_x_magnitudes;
  bool plausibly_vanishing = false;
};

/// Bounded is always true for finite samples; the vanishing flag needs the
/// last five magnitudes toward x -> infinity to be non-increasing and the
/// outermost one below tol (relative to sup|f|, absolute when f is zero).
inline DecayDiagnostics vanishing_and_bounded_diagnostics(const LatticeFunction& f,
                                                          double tol = 1e-8) {
  DecayDiagnostics d;
  d.sup_abs = f.sup_abs();
  d.bounded = std::isfinite(d.sup_abs);
  const std::size_t k = std::min<std::size_t>(5, f.size());
  for (std::size_t i = 0; i < k; ++i) d.large_x_magnitudes.push_back(std::abs(f[i]));
  bool monotone = true;
  // Moving outward (decreasing i) the magnitude must not grow.
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (d.large_x_magnitudes[i] > d.large_x_magnitudes[i + 1]) monotone = false;
  }
  const double scale = d.sup_abs > 0.0 ? d.sup_abs : 1.0;
  d.plausibly_vanishing = monotone && d.large_x_magnitudes.front() <= tol * scale;
  return d;
}

}  // namespace qharm
