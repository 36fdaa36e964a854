#pragma once

// The q-Bessel Fourier transform on a lattice window.
//
//   F f(q^k) = c_{q,v} (1-q) sum_n q^{n(2v+2)} f(q^n) j_v(q^{k+n}, q^2)
//
// The kernel depends only on k+n, so one table of j_v(q^m, q^2) for
// m in [2 n_min, 2 n_max] serves the transform, translation and convolution.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qharm/bessel.hpp"
#include "qharm/errors.hpp"
#include "qharm/lattice.hpp"
#include "qharm/params.hpp"
#include "qharm/summation.hpp"

namespace qharm {

class TransformTable {
 public:
  TransformTable(QParams params, QLattice lattice)
      : params_(std::move(params)), lattice_(std::move(lattice)) {
    if (lattice_.q() != params_.q()) throw ArgumentError("TransformTable: lattice q differs from params");
    const int lo = 2 * lattice_.n_min();
    const int hi = 2 * lattice_.n_max();
    kernel_.resize(static_cast<std::size_t>(hi - lo + 1));
    for (int m = lo; m <= hi; ++m) {
      const double j = lattice_bessel(m, params_);
      if (!satisfies_bessel_bound(m, j, params_)) {
        throw NumericalError("TransformTable: j_v(q^" + std::to_string(m) +
                             ", q^2) violates the kernel bound");
      }
      kernel_[static_cast<std::size_t>(m - lo)] = j;
    }
    weights_ = measure_weights(lattice_, params_);
  }

  const QParams& params() const { return params_; }
  const QLattice& lattice() const { return lattice_; }
  std::size_t size() const { return lattice_.size(); }
  double c_qv() const { return params_.c_qv(); }
  double boundedness_constant() const { return params_.bessel_bound_constant(); }

  int kernel_min() const { return 2 * lattice_.n_min(); }
  int kernel_max() const { return 2 * lattice_.n_max(); }
  bool has_kernel(int m) const { return m >= kernel_min() && m <= kernel_max(); }
  /// j_v(q^m, q^2)
  double kernel(int m) const {
    if (!has_kernel(m)) throw ArgumentError("kernel index " + std::to_string(m) + " outside table");
    return kernel_[static_cast<std::size_t>(m - kernel_min())];
  }
  /// j_v(q^{k+n}, q^2) for window indices k and n.
  double kernel_at(std::size_t k, std::size_t n) const { return kernel_[k + n]; }
  const std::vector<double>& kernel_values() const { return kernel_; }
  /// (1-q) q^{n(2v+2)} per window index.
  const std::vector<double>& weights() const { return weights_; }

 private:
  QParams params_;
  QLattice lattice_;
  std::vector<double> kernel_;
  std::vector<double> weights_;
};

inline TransformTable build_transform_table(const QParams& params, const QLattice& lattice) {
  return TransformTable(params, lattice);
}

struct TransformResult {
  LatticeFunction function;
  /// max over outputs of the summand magnitude at the n_min / n_max edge.
  double edge_large_x = 0.0;
  double edge_small_x = 0.0;
  std::vector<std::string> warnings;
};

namespace detail {

inline void require_table_lattice(const LatticeFunction& f, const TransformTable& t) {
  if (!(f.lattice() == t.lattice())) throw ArgumentError("function lattice differs from table lattice");
}

}  // namespace detail

/// F f on the same window, with the edge-summand diagnostics. value_at_zero is
/// c_{q,v} (1-q) sum_n q^{n(2v+2)} f(q^n), the j_v(0) = 1 limit.
inline TransformResult fourier_transform_checked(const LatticeFunction& f, const TransformTable& t) {
  detail::require_table_lattice(f, t);
  if (!t.lattice().straddles_one()) {
    throw ArgumentError("fourier_transform: window must satisfy n_min < 0 < n_max");
  }
  const std::size_t N = t.size();
  const double c = t.c_qv();
  const auto& w = t.weights();
  std::vector<cplx> wf(N);
  for (std::size_t n = 0; n < N; ++n) wf[n] = w[n] * f[n];

  std::vector<cplx> out(N);
  double edge_lo = 0.0;
  double edge_hi = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    CompensatedSum<cplx> s;
    for (std::size_t n = 0; n < N; ++n) s += wf[n] * t.kernel_at(k, n);
    out[k] = c * s.value();
    edge_lo = std::max(edge_lo, c * std::abs(wf[0] * t.kernel_at(k, 0)));
    edge_hi = std::max(edge_hi, c * std::abs(wf[N - 1] * t.kernel_at(k, N - 1)));
  }
  CompensatedSum<cplx> z;
  for (std::size_t n = 0; n < N; ++n) z += wf[n];

  TransformResult r{LatticeFunction(t.lattice(), std::move(out), c * z.value()), edge_lo, edge_hi, {}};
  const double scale = std::max(1.0, r.function.sup_abs());
  const double tol = t.params().trunc_tol();
  if (edge_lo > tol * scale) {
    r.warnings.push_back("window truncation at the large-x edge: summand " + std::to_string(edge_lo));
  }
  if (edge_hi > tol * scale) {
    r.warnings.push_back("window truncation at the small-x edge: summand " + std::to_string(edge_hi));
  }
  return r;
}

inline LatticeFunction fourier_transform(const LatticeFunction& f, const TransformTable& t) {
  return fourier_transform_checked(f, t).function;
}

/// Lattice delta: 1/((1-q) x^{2v+2}) on the diagonal, zero elsewhere.
/// Points are given by their lattice exponents.
inline double delta_qv(int x_exponent, int y_exponent, const QParams& p) {
  if (x_exponent != y_exponent) return 0.0;
  return 1.0 / ((1.0 - p.q()) * std::pow(p.q(), x_exponent * p.weight_exponent()));
}

/// Half-open index range [begin, end) of the central part of a window.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Middle `fraction` of the indices (default 60%), dropping equal shares at both edges.
inline IndexRange interior_range(std::size_t n, double fraction = 0.6) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ArgumentError("interior fraction must lie in (0,1]");
  const auto drop = static_cast<std::size_t>(std::floor(0.5 * (1.0 - fraction) * static_cast<double>(n)));
  IndexRange r{drop, n - drop};
  if (r.begin >= r.end) r = {0, n};
  return r;
}

struct InversionReport {
  /// max over the interior of |F^2 f - f|, divided by sup|f| (absolute for f = 0).
  double max_error = 0.0;
  double max_abs_error = 0.0;
  IndexRange interior;
  std::vector<std::string> warnings;
};

namespace detail {

inline void warn_if_not_decaying(const LatticeFunction& f, std::vector<std::string>& warnings,
                                 double rel_tol = 1e-8) {
  const double s = f.sup_abs();
  if (s == 0.0) return;
  if (std::abs(f[0]) > rel_tol * s) warnings.push_back("input does not decay at the large-x edge");
  if (std::abs(f[f.size() - 1]) > rel_tol * s && f.lattice().n_max() < 0) {
    warnings.push_back("input window does not reach the small-x region");
  }
}

}  // namespace detail

/// Compares F(F f) with f on the interior sub-window.
inline InversionReport verify_inversion(const LatticeFunction& f, const TransformTable& t,
                                        double interior_fraction = 0.6) {
  InversionReport r;
  detail::warn_if_not_decaying(f, r.warnings);
  auto first = fourier_transform_checked(f, t);
  auto second = fourier_transform_checked(first.function, t);
  for (auto& w : first.warnings) r.warnings.push_back("first pass: " + w);
  for (auto& w : second.warnings) r.warnings.push_back("second pass: " + w);
  r.interior = interior_range(f.size(), interior_fraction);
  for (std::size_t i = r.interior.begin; i < r.interior.end; ++i) {
    r.max_abs_error = std::max(r.max_abs_error, std::abs(second.function[i] - f[i]));
  }
  const double s = f.sup_abs();
  r.max_error = s > 0.0 ? r.max_abs_error / s : r.max_abs_error;
  return r;
}

struct PlancherelReport {
  double norm_f = 0.0;
  double norm_transform = 0.0;
  /// |‖Ff‖ - ‖f‖| / ‖f‖, or the absolute difference when ‖f‖ = 0.
  double error = 0.0;
};

inline PlancherelReport verify_plancherel(const LatticeFunction& f, const TransformTable& t) {
  PlancherelReport r;
  r.norm_f = lp_norm(f, 2.0, t.params());
  r.norm_transform = lp_norm(fourier_transform(f, t), 2.0, t.params());
  const double d = std::abs(r.norm_transform - r.norm_f);
  r.error = r.norm_f > 0.0 ? d / r.norm_f : d;
  return r;
}

struct OrthogonalityReport {
  int n = 0;
  int m = 0;
  double value = 0.0;
  /// q^{-2n(v+1)}/(1-q) on the diagonal, 0 off it.
  double target = 0.0;
  /// sqrt(diag(n) diag(m)), the scale off-diagonal values are measured against.
  double scale = 0.0;
  double error = 0.0;
};

/// c^2 (1-q) sum_k q^{k(2v+2)} j_v(q^{n+k}, q^2) j_v(q^{m+k}, q^2) over the window.
inline OrthogonalityReport verify_orthogonality(int n, int m, const TransformTable& t) {
  const QLattice& L = t.lattice();
  if (!L.contains(n) || !L.contains(m)) throw ArgumentError("verify_orthogonality: n, m must lie in the window");
  const QParams& p = t.params();
  const double c = t.c_qv();
  CompensatedSum<double> s;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const int e = L.exponent(k);
    s += t.weights()[k] * t.kernel(n + e) * t.kernel(m + e);
  }
  auto diag = [&](int i) { return std::pow(p.q(), -2.0 * i * (p.v() + 1.0)) / (1.0 - p.q()); };
  OrthogonalityReport r;
  r.n = n;
  r.m = m;
  r.value = c * c * s.value();
  r.target = n == m ? diag(n) : 0.0;
  r.scale = std::sqrt(diag(n) * diag(m));
  r.error = std::abs(r.value - r.target) / r.scale;
  return r;
}

struct L1BoundReport {
  double sup_transform = 0.0;
  double bound = 0.0;  // B_{q,v} ‖f‖_1
  bool holds = true;
};

inline L1BoundReport verify_l1_bound(const LatticeFunction& f, const TransformTable& t,
                                     double slack = 1e-9) {
  L1BoundReport r;
  r.sup_transform = fourier_transform(f, t).sup_abs();
  r.bound = t.params().B_qv() * lp_norm(f, 1.0, t.params());
  r.holds = r.sup_transform <= r.bound * (1.0 + slack);
  return r;
}

}  // namespace qharm
