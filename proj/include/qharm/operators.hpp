#pragma once

// Translation, its kernel D_v, convolution, the q-Gauss kernel and the
// translation-positivity probe.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "qharm/errors.hpp"
#include "qharm/lattice.hpp"
#include "qharm/parallel.hpp"
#include "qharm/qseries.hpp"
#include "qharm/summation.hpp"
#include "qharm/transform.hpp"

namespace qharm {

/// T_{q,x} f evaluated spectrally: y -> c sum_t w_t F f(t) j_v(xt) j_v(yt), i.e.
/// the transform of t -> F f(t) j_v(xt). x = q^{x_exponent} must lie in the window.
inline LatticeFunction translation(const LatticeFunction& f, int x_exponent, const TransformTable& t) {
  const QLattice& L = t.lattice();
  L.index(x_exponent);
  LatticeFunction spectrum = fourier_transform(f, t);
  std::vector<cplx> g(t.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = spectrum[i] * t.kernel(x_exponent + L.exponent(i));
  return fourier_transform(LatticeFunction(L, std::move(g)), t);
}

/// D_v(x,y,z) = c^2 (1-q) sum_t q^{t(2v+2)} j_v(xt) j_v(yt) j_v(zt) over the window.
inline double translation_kernel(int x_exponent, int y_exponent, int z_exponent, const TransformTable& t) {
  const QLattice& L = t.lattice();
  const double c = t.c_qv();
  CompensatedSum<double> s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const int e = L.exponent(i);
    s += t.weights()[i] * t.kernel(x_exponent + e) * t.kernel(y_exponent + e) * t.kernel(z_exponent + e);
  }
  return c * c * s.value();
}

/// T_{q,x} f through the kernel: y -> (1-q) sum_z q^{z(2v+2)} f(z) D_v(x,y,z).
inline LatticeFunction translation_via_kernel(const LatticeFunction& f, int x_exponent,
                                              const TransformTable& t) {
  detail::require_table_lattice(f, t);
  const QLattice& L = t.lattice();
  L.index(x_exponent);
  std::vector<cplx> out(t.size());
  for (std::size_t y = 0; y < t.size(); ++y) {
    CompensatedSum<cplx> s;
    for (std::size_t z = 0; z < t.size(); ++z) {
      if (f[z] == cplx{}) continue;
      s += t.weights()[z] * f[z] * translation_kernel(x_exponent, L.exponent(y), L.exponent(z), t);
    }
    out[y] = s.value();
  }
  return LatticeFunction(L, std::move(out));
}

enum class ConvolutionRoute { Direct, Spectral };

/// f *_q g.
///
/// Direct: x -> c (1-q) sum_y q^{y(2v+2)} T_x f(y) g(y).
/// Spectral: F(F f . F g), using that F is its own inverse.
inline LatticeFunction convolution(const LatticeFunction& f, const LatticeFunction& g, const TransformTable& t,
                                   ConvolutionRoute route = ConvolutionRoute::Spectral) {
  detail::require_table_lattice(f, t);
  detail::require_table_lattice(g, t);
  if (route == ConvolutionRoute::Spectral) {
    return fourier_transform(pointwise_product(fourier_transform(f, t), fourier_transform(g, t)), t);
  }
  const QLattice& L = t.lattice();
  const double c = t.c_qv();
  std::vector<cplx> out(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    LatticeFunction tf = translation(f, L.exponent(x), t);
    CompensatedSum<cplx> s;
    for (std::size_t y = 0; y < t.size(); ++y) s += t.weights()[y] * tf[y] * g[y];
    out[x] = c * s.value();
  }
  CompensatedSum<cplx> z;
  for (std::size_t y = 0; y < t.size(); ++y) z += t.weights()[y] * f[y] * g[y];
  return LatticeFunction(L, std::move(out), c * z.value());
}

struct YoungReport {
  double p = 0.0;
  double p_prime = 0.0;
  double r = 0.0;
  double norm_f = 0.0;        // ‖f‖_p
  double norm_g = 0.0;        // ‖g‖_p'
  double norm_conv = 0.0;     // ‖f*g‖_r
  bool finite = false;
};

/// Exponent r from 1/p + 1/p' - 1 = 1/r; requires 1 < p, p', r <= 2.
inline double young_exponent(double p, double p_prime) {
  auto in_range = [](double e) { return e > 1.0 && e <= 2.0; };
  if (!in_range(p) || !in_range(p_prime)) throw ArgumentError("young: p and p' must lie in (1,2]");
  const double inv_r = 1.0 / p + 1.0 / p_prime - 1.0;
  if (!(inv_r > 0.0)) throw ArgumentError("young: 1/p + 1/p' - 1 must be positive");
  const double r = 1.0 / inv_r;
  if (!in_range(r)) throw ArgumentError("young: r = " + std::to_string(r) + " must lie in (1,2]");
  return r;
}

/// Reports the norms only; no constant is asserted.
inline YoungReport young_inequality_check(const LatticeFunction& f, const LatticeFunction& g, double p,
                                          double p_prime, const TransformTable& t) {
  YoungReport rep;
  rep.p = p;
  rep.p_prime = p_prime;
  rep.r = young_exponent(p, p_prime);
  rep.norm_f = lp_norm(f, p, t.params());
  rep.norm_g = lp_norm(g, p_prime, t.params());
  rep.norm_conv = lp_norm(convolution(f, g, t), rep.r, t.params());
  rep.finite = std::isfinite(rep.norm_f) && std::isfinite(rep.norm_g) && std::isfinite(rep.norm_conv);
  return rep;
}

/// G^v(x,t,q^2) = (-q^{2v+2}t, -q^{-2v}/t; q^2)_inf / (-t, -q^2/t; q^2)_inf * e(-q^{-2v} x^2 / t, q^2).
///
/// Every q-shifted factorial has a negative argument, so the whole expression
/// is evaluated as a sum of logs and never hits a pole for t > 0.
inline double gauss_kernel(double x, double t, const QParams& p) {
  if (!(t > 0.0)) throw ArgumentError("gauss_kernel: t must be > 0");
  if (!(x >= 0.0)) throw ArgumentError("gauss_kernel: x must be >= 0");
  const double Q = p.base();
  const double s = std::pow(p.q(), -2.0 * p.v()) / t;
  const auto& ctl = p.control();
  const double log_value = log_q_pochhammer_negative(std::pow(p.q(), 2.0 * p.v() + 2.0) * t, Q, ctl) +
                           log_q_pochhammer_negative(s, Q, ctl) - log_q_pochhammer_negative(t, Q, ctl) -
                           log_q_pochhammer_negative(Q / t, Q, ctl) -
                           log_q_pochhammer_negative(s * x * x, Q, ctl);
  return std::exp(log_value);
}

/// G^v(., t, q^2) sampled on a lattice, with its value at x = 0.
inline LatticeFunction gauss_kernel_function(const QLattice& L, double t, const QParams& p) {
  return LatticeFunction::sample(L, [&](double x) { return gauss_kernel(x, t, p); }, gauss_kernel(0.0, t, p));
}

/// e(-t y^2, q^2) sampled on a lattice; equals 1 at y = 0.
inline LatticeFunction q_gaussian(const QLattice& L, double t, const QParams& p) {
  return LatticeFunction::sample(L, [&](double y) { return q_exponential(-t * y * y, p.base(), p.control()); },
                                 cplx{1.0});
}

struct GaussLimitReport {
  std::vector<double> a_values;
  std::vector<cplx> integrals;
  std::vector<double> deviations;
  double final_deviation = 0.0;
  /// Deviations non-increasing along the sequence, up to `monotone_slack`.
  bool monotone = true;
};

/// a = q^j, j = 1..10.
inline std::vector<double> default_gauss_sequence(const QParams& p) {
  std::vector<double> a;
  for (int j = 1; j <= 10; ++j) a.push_back(std::pow(p.q(), j));
  return a;
}

/// c (1-q) sum_n q^{n(2v+2)} f(q^n) G^v(q^n, a^2, q^2) for each a, compared with f(0).
inline GaussLimitReport gauss_delta_limit_check(const LatticeFunction& f, const std::vector<double>& a_sequence,
                                                const QParams& p, double monotone_slack = 1e-9) {
  if (!f.value_at_zero()) throw ArgumentError("gauss_delta_limit_check: f needs a value at zero");
  if (f.lattice().q() != p.q()) throw ArgumentError("gauss_delta_limit_check: lattice q differs from params");
  const QLattice& L = f.lattice();
  const cplx f0 = *f.value_at_zero();
  GaussLimitReport r;
  for (double a : a_sequence) {
    if (!(a > 0.0)) throw ArgumentError("gauss_delta_limit_check: a must be > 0");
    CompensatedSum<cplx> s;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] == cplx{}) continue;
      s += measure_weight(L.exponent(i), p) * f[i] * gauss_kernel(L.point_at(i), a * a, p);
    }
    const cplx integral = p.c_qv() * s.value();
    const double dev = std::abs(integral - f0);
    if (!r.deviations.empty() && dev > r.deviations.back() + monotone_slack) r.monotone = false;
    r.a_values.push_back(a);
    r.integrals.push_back(integral);
    r.deviations.push_back(dev);
  }
  r.final_deviation = r.deviations.empty() ? 0.0 : r.deviations.back();
  return r;
}

struct ProbeOptions {
  /// Values below -negativity_threshold count as negativity.
  double negativity_threshold = 1e-10;
  /// Worker threads; 0 = hardware concurrency.
  unsigned threads = 1;
};

struct ProbeReport {
  double q = 0.0;
  double v = 0.0;
  int n_min = 0;
  int n_max = 0;
  /// Lattice the t-sum of D_v runs over.
  int integration_n_min = 0;
  int integration_n_max = 0;
  double min_value = 0.0;
  /// Exponents (a,b,c) of the minimizing triple (q^a, q^b, q^c).
  std::array<int, 3> argmin{};
  bool negativity_detected = false;
  std::string verdict;
};

/// Window over which D_v(x,y,z) is summed for points in [n_min, n_max]:
/// wide enough that j_v(x t) has decayed past 1e-40 at the large-t end and the
/// weight q^{t(2v+2)} is below 1e-20 at the small-t end.
inline QLattice probe_integration_lattice(const QParams& p, int n_min, int n_max) {
  const double lq = -std::log(p.q());
  const int gauss_pad = static_cast<int>(std::ceil(std::sqrt(40.0 * std::log(10.0) / lq))) + 2;
  const int weight_pad = static_cast<int>(std::ceil(20.0 * std::log(10.0) / (p.weight_exponent() * lq))) + 2;
  const int lo = std::min(n_min, -n_max) - gauss_pad;
  const int hi = std::max(n_max, -n_min) + weight_pad;
  return QLattice(p.q(), std::min(lo, -1), std::max(hi, 1));
}

/// Exhaustive scan of D_v over all triples of window points.
///
/// A finite-window heuristic: it can exhibit a negative kernel value, but a
/// clean scan is no proof that translation is positive for this q.
inline ProbeReport qv_membership_probe(const QParams& p, const QLattice& window, const ProbeOptions& opt = {}) {
  if (window.q() != p.q()) throw ArgumentError("qv_membership_probe: lattice q differs from params");
  const QLattice integ = probe_integration_lattice(p, window.n_min(), window.n_max());
  const TransformTable table(p, integ);
  const std::size_t N = window.size();

  struct SlabMin {
    double value = std::numeric_limits<double>::infinity();
    std::array<int, 3> arg{};
  };
  std::vector<SlabMin> slabs(N);
  parallel_for(N, opt.threads, [&](std::size_t i) {
    SlabMin m;
    const int a = window.exponent(i);
    for (std::size_t j = 0; j < N; ++j) {
      for (std::size_t k = 0; k < N; ++k) {
        const int b = window.exponent(j);
        const int c = window.exponent(k);
        const double d = translation_kernel(a, b, c, table);
        if (d < m.value) m = {d, {a, b, c}};
      }
    }
    slabs[i] = m;
  });

  ProbeReport r;
  r.q = p.q();
  r.v = p.v();
  r.n_min = window.n_min();
  r.n_max = window.n_max();
  r.integration_n_min = integ.n_min();
  r.integration_n_max = integ.n_max();
  SlabMin best;
  for (const auto& s : slabs) {
    if (s.value < best.value) best = s;
  }
  r.min_value = best.value;
  r.argmin = best.arg;
  r.negativity_detected = best.value < -opt.negativity_threshold;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0e", -opt.negativity_threshold);
  r.verdict = r.negativity_detected ? std::string("negativity detected below ") + buf
                                    : std::string("no negativity detected at tolerance ") + buf +
                                          " (finite-window heuristic, not a proof of membership)";
  return r;
}

}  // namespace qharm
