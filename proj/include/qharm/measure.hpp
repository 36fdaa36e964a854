#pragma once

// Positive measures on the lattice window and the reconstruction of a
// positive-type function as the transform of a measure.
//
// A measure is stored by its density rho against the weighted Jackson measure,
// so that integral h dxi = (1-q) sum_n q^{n(2v+2)} rho(q^n) h(q^n).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qharm/errors.hpp"
#include "qharm/lattice.hpp"
#include "qharm/operators.hpp"
#include "qharm/positivity.hpp"
#include "qharm/summation.hpp"
#include "qharm/transform.hpp"

namespace qharm {

class QMeasure {
 public:
  QMeasure(QLattice lattice, std::vector<double> density, const QParams& p)
      : lattice_(std::move(lattice)), density_(std::move(density)) {
    if (density_.size() != lattice_.size()) throw ArgumentError("QMeasure: density size differs from lattice");
    if (lattice_.q() != p.q()) throw ArgumentError("QMeasure: lattice q differs from params");
    CompensatedSum<double> s;
    for (std::size_t i = 0; i < density_.size(); ++i) {
      if (!(density_[i] >= 0.0) || !std::isfinite(density_[i])) {
        throw ArgumentError("QMeasure: density must be finite and nonnegative");
      }
      s += measure_weight(lattice_.exponent(i), p) * density_[i];
    }
    mass_ = s.value();
  }

  const QLattice& lattice() const { return lattice_; }
  const std::vector<double>& density() const { return density_; }
  /// Point mass carried by q^n: weight times density.
  double atom(std::size_t i, const QParams& p) const { return measure_weight(lattice_.exponent(i), p) * density_[i]; }
  double total_mass_v() const { return mass_; }

 private:
  QLattice lattice_;
  std::vector<double> density_;
  double mass_ = 0.0;
};

/// F xi(lambda) = integral j_v(lambda x) dxi(x), with F xi(0) the total mass.
inline LatticeFunction measure_fourier_transform(const QMeasure& xi, const TransformTable& t) {
  if (!(xi.lattice() == t.lattice())) throw ArgumentError("measure lattice differs from table lattice");
  const std::size_t N = t.size();
  std::vector<cplx> out(N);
  for (std::size_t k = 0; k < N; ++k) {
    CompensatedSum<double> s;
    for (std::size_t n = 0; n < N; ++n) s += t.weights()[n] * xi.density()[n] * t.kernel_at(k, n);
    out[k] = s.value();
  }
  return LatticeFunction(t.lattice(), std::move(out), xi.total_mass_v());
}

/// (xi * rho)(f) = double integral of T_x f(t) against dxi(x) drho(t).
inline cplx measure_convolution(const QMeasure& xi, const QMeasure& rho, const LatticeFunction& f,
                                const TransformTable& t) {
  detail::require_table_lattice(f, t);
  if (!(xi.lattice() == t.lattice()) || !(rho.lattice() == t.lattice())) {
    throw ArgumentError("measure lattice differs from table lattice");
  }
  const QLattice& L = t.lattice();
  CompensatedSum<cplx> s;
  for (std::size_t x = 0; x < t.size(); ++x) {
    const double ax = t.weights()[x] * xi.density()[x];
    if (ax == 0.0) continue;
    const LatticeFunction tf = translation(f, L.exponent(x), t);
    for (std::size_t y = 0; y < t.size(); ++y) s += ax * t.weights()[y] * rho.density()[y] * tf[y];
  }
  return s.value();
}

struct MeasureProductReport {
  std::vector<int> lambdas;
  std::vector<cplx> lhs;  // (xi * rho)(j_v(lambda .))
  std::vector<double> rhs;  // F xi(lambda) F rho(lambda)
  /// max |lhs - rhs| / max(1, max |rhs|)
  double max_error = 0.0;
};

/// (xi * rho)(j_v(lambda .)) against F xi(lambda) F rho(lambda) for lambda = q^k, k in lambdas.
inline MeasureProductReport measure_product_identity(const QMeasure& xi, const QMeasure& rho,
                                                     const std::vector<int>& lambdas, const TransformTable& t) {
  MeasureProductReport r;
  r.lambdas = lambdas;
  const LatticeFunction fx = measure_fourier_transform(xi, t);
  const LatticeFunction fr = measure_fourier_transform(rho, t);
  double scale = 1.0;
  double err = 0.0;
  for (int k : lambdas) {
    const LatticeFunction j = LatticeFunction::from_exponents(t.lattice(), [&](int n) { return t.kernel(k + n); }, 1.0);
    r.lhs.push_back(measure_convolution(xi, rho, j, t));
    r.rhs.push_back((fx.at_exponent(k) * fr.at_exponent(k)).real());
    scale = std::max(scale, std::abs(r.rhs.back()));
    err = std::max(err, std::abs(r.lhs.back() - r.rhs.back()));
  }
  r.max_error = err / scale;
  return r;
}

/// phi_n(x) = phi(x) psi(q^n x) with the cutoff psi(y) = (1 - y) for y < 1, 0
/// otherwise. On the lattice that keeps exponents m with n + m >= 1.
inline LatticeFunction bochner_cutoff(const LatticeFunction& phi, int n) {
  const QLattice& L = phi.lattice();
  std::vector<cplx> v(phi.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int m = L.exponent(i);
    v[i] = n + m >= 1 ? phi[i] * (1.0 - std::pow(L.q(), n + m)) : cplx{};
  }
  return LatticeFunction(L, std::move(v), phi.value_at_zero());
}

struct BochnerLevel {
  int n = 0;
  bool positive_type = true;
  double min_eigenvalue = 0.0;
  /// Smallest density value relative to the largest.
  double min_density = 0.0;
  double mass = 0.0;
  /// |mass - phi(0)| / |phi(0)|
  double mass_error = 0.0;
  /// Interior sup |F xi_n - phi| / sup |phi|.
  double transform_error = 0.0;
};

struct BochnerReport {
  bool accepted = false;
  std::string failure;
  /// Witness coefficients when a cutoff level fails the PSD test.
  std::vector<cplx> witness;
  /// phi(0): the reconstruction runs on phi / phi(0) and rescales.
  double normalization = 0.0;
  /// The density of xi_n is this factor times F phi_n.
  double density_factor = 0.0;
  std::vector<BochnerLevel> levels;
  /// Limit estimate from the last two levels, see bochner_reconstruct.
  std::optional<QMeasure> measure;
  bool extrapolated = false;
  /// Interior sup |F xi - phi| / sup |phi| for the limit measure.
  double reconstruction_error = 0.0;
  /// Same quantity for the last raw level.
  double last_level_error = 0.0;
  std::vector<std::string> warnings;
};

namespace detail {

inline double interior_relative_error(const LatticeFunction& a, const LatticeFunction& b) {
  const IndexRange r = interior_range(a.size());
  double e = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) e = std::max(e, std::abs(a[i] - b[i]));
  const double s = b.sup_abs();
  return s > 0.0 ? e / s : e;
}

}  // namespace detail

/// Recovers the measure xi with F xi = phi for a continuous positive-type phi.
///
/// Each level n forms the cutoff phi_n, checks its Gram matrices on `points`,
/// and takes xi_n with density c_{q,v} F phi_n, which must be nonnegative and
/// carry mass phi(0). Because psi(q^n x) is linear in q^n wherever it is
/// nonzero, the density error is q^n times a fixed function away from the
/// cutoff edge, and the two-level combination (rho_a q^b - rho_b q^a)/(q^b - q^a)
/// removes it. The combination is exact on the lattice when a = b + 1.
/// Densities are computed on the window extended toward large x and returned
/// restricted to the window.
inline BochnerReport bochner_reconstruct(const LatticeFunction& phi, const std::vector<int>& levels,
                                         const TransformTable& t, double tol = 1e-9,
                                         std::vector<int> points = default_point_set()) {
  detail::require_table_lattice(phi, t);
  if (levels.empty()) throw ArgumentError("bochner_reconstruct: no cutoff levels");
  if (!phi.value_at_zero()) throw ArgumentError("bochner_reconstruct: phi needs a value at zero");
  const QLattice& L = t.lattice();
  const QParams& p = t.params();
  BochnerReport r;
  r.density_factor = t.c_qv();

  const cplx phi0c = *phi.value_at_zero();
  if (std::abs(phi0c.imag()) > tol * std::abs(phi0c)) throw ArgumentError("bochner_reconstruct: phi(0) must be real");
  const double phi0 = phi0c.real();
  r.normalization = phi0;
  if (phi0 == 0.0) {
    if (phi.sup_abs() == 0.0) {
      r.accepted = true;
      r.measure = QMeasure(L, std::vector<double>(L.size(), 0.0), p);
      return r;
    }
    throw ArgumentError("bochner_reconstruct: phi(0) = 0 for a nonzero phi cannot be of positive type");
  }
  if (phi0 < 0.0) {
    r.failure = "phi(0) < 0";
    return r;
  }
  LatticeFunction unit = phi;
  unit *= 1.0 / phi0;
  std::vector<int> pts;
  for (int n : points) {
    if (L.contains(n)) pts.push_back(n);
  }

  // phi_n vanishes for exponents below 1 - n, so its transform can be taken on
  // a lattice extended toward large x; the density tail there carries mass
  // of order q^n that the window alone would miss. At q^k the sum is carried
  // by exponents near -k, so the extension stops where the small-x edge
  // truncation, of order q^{2(n_max + k)}, reaches rounding level.
  const double digits = 16.0 * std::log(10.0) / -std::log(L.q());
  const int ext_min = std::min(L.n_min(), std::max(L.n_min() - static_cast<int>(std::ceil(digits)),
                                                   -L.n_max() + static_cast<int>(std::ceil(0.5 * digits))));
  const TransformTable ext(p, QLattice(L.q(), ext_min, L.n_max()));
  const auto offset = static_cast<std::size_t>(L.n_min() - ext_min);
  auto restrict_to_window = [&](const std::vector<double>& d) {
    return std::vector<double>(d.begin() + static_cast<std::ptrdiff_t>(offset), d.end());
  };
  if (levels.back() > 1 - L.n_min()) r.warnings.push_back("cutoff levels reach past the window's large-x end");

  std::vector<std::vector<double>> densities;
  for (int n : levels) {
    BochnerLevel lv;
    lv.n = n;
    const LatticeFunction cut = bochner_cutoff(unit, n);
    const PositivityVerdict pv = is_q_positive_type(cut, pts, t, tol);
    lv.positive_type = pv.positive;
    lv.min_eigenvalue = pv.min_eigenvalue;
    if (!pv.positive) {
      r.levels.push_back(lv);
      r.failure = "cutoff level " + std::to_string(n) + " is not of positive type";
      r.witness = pv.witness;
      return r;
    }
    std::vector<cplx> padded(ext.size());
    for (std::size_t i = 0; i < cut.size(); ++i) padded[i + offset] = cut[i];
    const LatticeFunction s = fourier_transform(LatticeFunction(ext.lattice(), std::move(padded)), ext);
    std::vector<double> dens(s.size());
    double top = 0.0;
    double low = 0.0;
    for (std::size_t i = 0; i < dens.size(); ++i) {
      dens[i] = r.density_factor * s[i].real();
      top = std::max(top, std::abs(dens[i]));
      low = std::min(low, dens[i]);
    }
    lv.min_density = top > 0.0 ? low / top : 0.0;
    if (lv.min_density < -tol) {
      r.levels.push_back(lv);
      r.failure = "cutoff level " + std::to_string(n) + " has a negative density";
      return r;
    }
    for (auto& d : dens) d = std::max(d, 0.0);
    const QMeasure m(ext.lattice(), dens, p);
    lv.mass = m.total_mass_v() * phi0;
    lv.mass_error = std::abs(m.total_mass_v() - 1.0);
    const LatticeFunction fm = measure_fourier_transform(m, ext);
    std::vector<cplx> on_window(fm.values().begin() + static_cast<std::ptrdiff_t>(offset), fm.values().end());
    lv.transform_error = detail::interior_relative_error(LatticeFunction(L, std::move(on_window)), unit);
    r.levels.push_back(lv);
    densities.push_back(restrict_to_window(dens));
  }

  std::vector<double> limit = densities.back();
  r.last_level_error = r.levels.back().transform_error;
  if (levels.size() >= 2) {
    const double qa = std::pow(L.q(), levels.back());
    const double qb = std::pow(L.q(), levels[levels.size() - 2]);
    if (qa != qb) {
      const auto& ra = densities.back();
      const auto& rb = densities[densities.size() - 2];
      for (std::size_t i = 0; i < limit.size(); ++i) limit[i] = (ra[i] * qb - rb[i] * qa) / (qb - qa);
      r.extrapolated = true;
    }
  }
  double top = 0.0;
  double low = 0.0;
  for (double d : limit) {
    top = std::max(top, d);
    low = std::min(low, d);
  }
  if (top > 0.0 && low < -tol * top) r.warnings.push_back("limit density has negative entries; clipped to zero");
  for (auto& d : limit) d = std::max(d, 0.0) * phi0;
  QMeasure xi(L, std::move(limit), p);
  r.reconstruction_error = detail::interior_relative_error(measure_fourier_transform(xi, t), phi);
  r.measure = std::move(xi);

  double worst_mass = 0.0;
  for (const auto& lv : r.levels) worst_mass = std::max(worst_mass, lv.mass_error);
  if (worst_mass > 1e-8) r.warnings.push_back("cutoff masses drift from phi(0)");
  r.accepted = true;
  return r;
}

}  // namespace qharm
