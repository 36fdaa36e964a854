#pragma once

// Functions of q-positive type: translation Gram matrices and the
// consequences checked on them.
//
// phi is of q-positive type when every Gram matrix G[r][l] = T_{q,x_r} phi(x_l)
// over finitely many lattice points is positive semidefinite, i.e.
// sum_{r,l} z_r conj(z_l) G[r][l] >= 0 for all complex z. Checkers sample
// point sets, so POSITIVE means "no violation on the tested grids" while
// NEGATIVE comes with a witness z.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "qharm/errors.hpp"
#include "qharm/lattice.hpp"
#include "qharm/operators.hpp"
#include "qharm/transform.hpp"

namespace qharm {

struct GramMatrix {
  /// Lattice exponents of x_1..x_n.
  std::vector<int> points;
  Eigen::MatrixXcd entries;
  /// Smallest eigenvalue of the Hermitian part; filled by the PSD check.
  double min_eigenvalue = 0.0;
  /// max |G - G^H|, zero up to rounding for real phi.
  double hermitian_defect = 0.0;
};

/// q^1..q^8 plus 1, q^-1, q^-2.
inline std::vector<int> default_point_set() { return {-2, -1, 0, 1, 2, 3, 4, 5, 6, 7, 8}; }

/// Deterministic grids used by the sampled checks: the default set, the
/// eleven points around x = 1, and every other point of the central third of
/// the window. Sets are clipped to the window.
inline std::vector<std::vector<int>> standard_point_sets(const QLattice& L) {
  auto clip = [&](std::vector<int> s) {
    std::vector<int> out;
    for (int n : s) {
      if (L.contains(n)) out.push_back(n);
    }
    return out;
  };
  std::vector<int> around;
  for (int n = -5; n <= 5; ++n) around.push_back(n);
  std::vector<int> sparse;
  const int span = L.n_max() - L.n_min();
  for (int n = L.n_min() + span / 3; n <= L.n_max() - span / 3; n += 2) sparse.push_back(n);
  std::vector<std::vector<int>> sets;
  for (auto& s : {clip(default_point_set()), clip(around), clip(sparse)}) {
    if (!s.empty()) sets.push_back(s);
  }
  return sets;
}

inline GramMatrix gram_matrix(const LatticeFunction& phi, const std::vector<int>& points, const TransformTable& t) {
  detail::require_table_lattice(phi, t);
  if (points.empty()) throw ArgumentError("gram_matrix: empty point list");
  if (std::set<int>(points.begin(), points.end()).size() != points.size()) {
    throw ArgumentError("gram_matrix: duplicate points");
  }
  const QLattice& L = t.lattice();
  const auto n = static_cast<Eigen::Index>(points.size());
  GramMatrix g;
  g.points = points;
  g.entries.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const LatticeFunction tr = translation(phi, points[static_cast<std::size_t>(r)], t);
    for (Eigen::Index l = 0; l < n; ++l) g.entries(r, l) = tr[L.index(points[static_cast<std::size_t>(l)])];
  }
  g.hermitian_defect = (g.entries - g.entries.adjoint()).cwiseAbs().maxCoeff();
  return g;
}

/// Induced infinity norm (max absolute row sum).
inline double matrix_inf_norm(const Eigen::MatrixXcd& m) {
  return m.rows() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

struct PositivityVerdict {
  bool positive = true;
  double min_eigenvalue = 0.0;
  double gram_norm = 0.0;  // ‖G‖_inf
  /// lambda_min must be >= -threshold for POSITIVE.
  double threshold = 0.0;
  /// On NEGATIVE: coefficients z_1..z_n with sum z_r conj(z_l) G[r][l] = lambda_min < 0.
  std::vector<cplx> witness;
  GramMatrix gram;
  std::vector<std::string> warnings;
};

/// PSD test of the Gram matrix on `points`: POSITIVE when
/// lambda_min >= -tol * max(1, ‖G‖_inf).
inline PositivityVerdict is_q_positive_type(const LatticeFunction& phi, const std::vector<int>& points,
                                            const TransformTable& t, double tol = 1e-9) {
  PositivityVerdict v;
  const auto diag = vanishing_and_bounded_diagnostics(phi);
  if (!diag.bounded) v.warnings.push_back("phi is not bounded on the window");
  if (!std::isfinite(lp_norm(phi, 1.0, t.params()))) v.warnings.push_back("phi has no finite L1 norm on the window");

  v.gram = gram_matrix(phi, points, t);
  const Eigen::MatrixXcd h = 0.5 * (v.gram.entries + v.gram.entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("is_q_positive_type: eigensolver failed");
  v.min_eigenvalue = es.eigenvalues()(0);
  v.gram.min_eigenvalue = v.min_eigenvalue;
  v.gram_norm = matrix_inf_norm(v.gram.entries);
  v.threshold = tol * std::max(1.0, v.gram_norm);
  v.positive = v.min_eigenvalue >= -v.threshold;
  if (!v.positive) {
    // w^H G w = lambda for the eigenvector w; the form in z uses z = conj(w).
    const Eigen::VectorXcd w = es.eigenvectors().col(0);
    for (Eigen::Index i = 0; i < w.size(); ++i) v.witness.push_back(std::conj(w(i)));
  }
  return v;
}

/// sum_{r,l} z_r conj(z_l) G[r][l]
inline cplx quadratic_form(const GramMatrix& g, const std::vector<cplx>& z) {
  cplx s{};
  for (std::size_t r = 0; r < z.size(); ++r) {
    for (std::size_t l = 0; l < z.size(); ++l) {
      s += z[r] * std::conj(z[l]) * g.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l));
    }
  }
  return s;
}

struct SampledPositivityReport {
  std::vector<PositivityVerdict> verdicts;
  bool all_positive = true;
  /// Most negative lambda_min / max(1, ‖G‖_inf) over the sets.
  double worst_relative_eigenvalue = 0.0;
};

inline SampledPositivityReport check_positive_type_on_sets(const LatticeFunction& phi,
                                                           const std::vector<std::vector<int>>& sets,
                                                           const TransformTable& t, double tol = 1e-9) {
  SampledPositivityReport r;
  for (const auto& s : sets) {
    auto v = is_q_positive_type(phi, s, t, tol);
    r.all_positive = r.all_positive && v.positive;
    r.worst_relative_eigenvalue =
        std::min(r.worst_relative_eigenvalue, v.min_eigenvalue / std::max(1.0, v.gram_norm));
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

/// Runs the sampled PSD test on F phi.
inline SampledPositivityReport verify_transform_positive_type(const LatticeFunction& phi, const TransformTable& t,
                                                              double tol = 1e-9) {
  return check_positive_type_on_sets(fourier_transform(phi, t), standard_point_sets(t.lattice()), t, tol);
}

/// <u, w> = (1-q) sum_n q^{n(2v+2)} u(q^n) conj(w(q^n)), the L2 pairing that F preserves.
inline cplx inner_product(const LatticeFunction& u, const LatticeFunction& w, const TransformTable& t) {
  detail::require_table_lattice(u, t);
  detail::require_table_lattice(w, t);
  CompensatedSum<cplx> s;
  for (std::size_t i = 0; i < u.size(); ++i) s += t.weights()[i] * u[i] * std::conj(w[i]);
  return s.value();
}

struct QuadraticFormReport {
  cplx value;
  /// ‖phi * f‖_2 ‖f‖_2, the Cauchy-Schwarz scale of value.
  double scale = 0.0;
  bool nonnegative = true;
  bool imaginary_negligible = true;
};

/// <phi *_q f, f> >= 0 for phi of positive type.
inline QuadraticFormReport verify_quadratic_form_positivity(const LatticeFunction& phi, const LatticeFunction& f,
                                                            const TransformTable& t, double tol = 1e-9) {
  const LatticeFunction conv = convolution(phi, f, t);
  QuadraticFormReport r;
  r.value = inner_product(conv, f, t);
  r.scale = lp_norm(conv, 2.0, t.params()) * lp_norm(f, 2.0, t.params());
  r.nonnegative = r.value.real() >= -tol * r.scale;
  r.imaginary_negligible = !(phi.is_real() && f.is_real()) || std::abs(r.value.imag()) <= tol * r.scale;
  return r;
}

struct SpectrumReport {
  double min_value = 0.0;  // min Re F phi
  double sup_abs = 0.0;    // sup |F phi|
  bool nonnegative = true;
};

/// F phi >= 0 pointwise, up to -tol sup|F phi|.
inline SpectrumReport verify_nonneg_spectrum(const LatticeFunction& phi, const TransformTable& t, double tol = 1e-9) {
  const LatticeFunction s = fourier_transform(phi, t);
  SpectrumReport r;
  r.sup_abs = s.sup_abs();
  r.min_value = s.size() ? s[0].real() : 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) r.min_value = std::min(r.min_value, s[i].real());
  r.nonnegative = r.min_value >= -tol * r.sup_abs;
  return r;
}

struct SpectrumMassReport {
  double phi0 = 0.0;
  /// c (1-q) sum q^{n(2v+2)} |F phi| and the same without the modulus.
  double abs_mass = 0.0;
  double signed_mass = 0.0;
  double abs_error = 0.0;     // relative to |phi(0)|
  double signed_error = 0.0;  // relative to |phi(0)|
  bool holds = true;
};

/// c_{q,v} times the Jackson integral of F phi against x^{2v+1}, compared with phi(0).
/// The c_{q,v} factor makes the identity the j_v(0) = 1 evaluation of F(F phi) at 0.
inline SpectrumMassReport verify_l1_spectrum_mass(const LatticeFunction& phi, const TransformTable& t,
                                                  double tol = 1e-7) {
  if (!phi.value_at_zero()) throw ArgumentError("verify_l1_spectrum_mass: phi needs a value at zero");
  const LatticeFunction s = fourier_transform(phi, t);
  CompensatedSum<double> a;
  CompensatedSum<double> m;
  for (std::size_t i = 0; i < s.size(); ++i) {
    a += t.weights()[i] * std::abs(s[i]);
    m += t.weights()[i] * s[i].real();
  }
  SpectrumMassReport r;
  r.phi0 = phi.value_at_zero()->real();
  r.abs_mass = t.c_qv() * a.value();
  r.signed_mass = t.c_qv() * m.value();
  const double scale = std::abs(r.phi0) > 0.0 ? std::abs(r.phi0) : 1.0;
  r.abs_error = std::abs(r.abs_mass - r.phi0) / scale;
  r.signed_error = std::abs(r.signed_mass - r.phi0) / scale;
  r.holds = r.abs_error <= tol && r.signed_error <= tol;
  return r;
}

struct WienerReport {
  double norm_f = 0.0;          // ‖f‖_1
  double norm_transform = 0.0;  // ‖F f‖_1
  /// Largest weighted edge summand relative to the norm, per function.
  double edge_ratio_f = 0.0;
  double edge_ratio_transform = 0.0;
  bool tails_decay = true;
  bool member = true;
  std::vector<std::string> warnings;
};

/// Window evidence for f and F f both lying in L1: finite norms with negligible
/// weighted summands at both window edges.
inline WienerReport wiener_membership(const LatticeFunction& f, const TransformTable& t, double edge_tol = 1e-8) {
  WienerReport r;
  const LatticeFunction s = fourier_transform(f, t);
  r.norm_f = lp_norm(f, 1.0, t.params());
  r.norm_transform = lp_norm(s, 1.0, t.params());
  auto edge_ratio = [&](const LatticeFunction& g, double norm) {
    if (norm == 0.0) return 0.0;
    const auto& w = t.weights();
    const std::size_t last = g.size() - 1;
    return std::max(w[0] * std::abs(g[0]), w[last] * std::abs(g[last])) / norm;
  };
  r.edge_ratio_f = edge_ratio(f, r.norm_f);
  r.edge_ratio_transform = edge_ratio(s, r.norm_transform);
  if (r.edge_ratio_f > edge_tol) r.warnings.push_back("f does not decay at a window edge");
  if (r.edge_ratio_transform > edge_tol) r.warnings.push_back("F f does not decay at a window edge");
  r.tails_decay = r.warnings.empty();
  r.member = std::isfinite(r.norm_f) && std::isfinite(r.norm_transform) && r.tails_decay;
  return r;
}

/// phi times F f for nonnegative f, checked on the standard point sets. With
/// f = F phi2 this is the product phi * phi2 of two positive-type functions.
inline SampledPositivityReport product_positive_type_check(const LatticeFunction& phi,
                                                           const LatticeFunction& f_nonneg,
                                                           const TransformTable& t, double tol = 1e-9) {
  const double scale = f_nonneg.sup_abs();
  for (std::size_t i = 0; i < f_nonneg.size(); ++i) {
    if (f_nonneg[i].real() < -tol * scale || std::abs(f_nonneg[i].imag()) > tol * scale) {
      throw ArgumentError("product_positive_type_check: f must be nonnegative");
    }
  }
  const LatticeFunction product = pointwise_product(phi, fourier_transform(f_nonneg, t));
  return check_positive_type_on_sets(product, standard_point_sets(t.lattice()), t, tol);
}

}  // namespace qharm
