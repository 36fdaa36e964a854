#pragma once

// Registry of numerical identity checks run by `qharm verify`.
//
// Every check reduces to one number compared against a tolerance: passing
// means measured_error <= tolerance. Sign conditions (PSD, nonnegativity) are
// measured as the relative size of the violation, zero when there is none.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qharm/errors.hpp"
#include "qharm/lattice.hpp"
#include "qharm/measure.hpp"
#include "qharm/operators.hpp"
#include "qharm/positivity.hpp"
#include "qharm/transform.hpp"

namespace qharm {

enum class CheckStatus { Pass, Fail, Skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "?";
}

struct VerificationEntry {
  std::string id;
  CheckStatus status = CheckStatus::Pass;
  double measured_error = 0.0;
  double tolerance = 0.0;
  long long runtime_ms = 0;
  /// Command line that reruns just this check; set on failures.
  std::string reproduce;
  std::string note;
};

struct VerificationSuiteResult {
  std::vector<VerificationEntry> entries;
  bool ok() const {
    return std::none_of(entries.begin(), entries.end(),
                        [](const VerificationEntry& e) { return e.status == CheckStatus::Fail; });
  }
};

// ---- test function generators ------------------------------------------------

/// Exponent band used for random compact supports: [-4, 12] clipped to the window.
inline std::pair<int, int> default_support(const QLattice& L) {
  return {std::max(L.n_min(), -4), std::min(L.n_max(), 12)};
}

/// Uniform values on a compact band of exponents, zero elsewhere; f(0) = 0.
inline LatticeFunction random_compact_function(const QLattice& L, std::mt19937_64& rng, bool nonnegative = false,
                                               std::optional<std::pair<int, int>> band = std::nullopt) {
  const auto [lo, hi] = band.value_or(default_support(L));
  std::uniform_real_distribution<double> u(nonnegative ? 0.0 : -1.0, 1.0);
  return LatticeFunction::from_exponents(L, [&](int n) { return n >= lo && n <= hi ? u(rng) : 0.0; }, 0.0);
}

/// F xi for a random nonnegative compact xi: a function of positive type.
inline LatticeFunction random_positive_type(const TransformTable& t, std::mt19937_64& rng) {
  return fourier_transform(random_compact_function(t.lattice(), rng, true), t);
}

// ---- registry -----------------------------------------------------------------

struct CheckOutcome {
  CheckOutcome(double m = 0.0, bool s = false, std::string n = {}) : measured(m), skip(s), note(std::move(n)) {}
  double measured;
  bool skip;
  std::string note;
};

struct VerifyContext {
  const TransformTable& table;
  std::uint64_t seed;
  std::mt19937_64 rng(int salt) const { return std::mt19937_64(seed + static_cast<std::uint64_t>(salt)); }
  const QLattice& lattice() const { return table.lattice(); }
  const QParams& params() const { return table.params(); }
};

struct VerificationCheck {
  std::string id;
  std::string summary;
  double tolerance;
  std::function<CheckOutcome(const VerifyContext&)> run;
};

namespace detail {

inline double negative_part(double value, double scale) {
  return value >= 0.0 ? 0.0 : -value / std::max(scale, std::numeric_limits<double>::min());
}

inline double worst_violation(const SampledPositivityReport& r) { return std::max(0.0, -r.worst_relative_eigenvalue); }

inline double max_abs_diff(const LatticeFunction& a, const LatticeFunction& b, IndexRange r) {
  double e = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

inline double relative_to(double err, double scale) { return scale > 0.0 ? err / scale : err; }

inline CheckOutcome skip(std::string why) { return {0.0, true, std::move(why)}; }

/// Nonnegative test densities with transforms that decay fast enough for the
/// two-level cutoff extrapolation to be exact in double precision.
inline std::vector<std::pair<std::string, LatticeFunction>> bochner_test_densities(const TransformTable& t) {
  const QLattice& L = t.lattice();
  const QParams& p = t.params();
  std::vector<std::pair<std::string, LatticeFunction>> out;
  out.emplace_back("q-gaussian", q_gaussian(L, 1.0, p));
  out.emplace_back("indicator x<=1", LatticeFunction::from_exponents(L, [](int n) { return n >= 0 ? 1.0 : 0.0; }));
  if (L.contains(3)) {
    out.emplace_back("point mass at q^3", LatticeFunction::from_exponents(L, [&](int n) {
                       return n == 3 ? 1.0 / measure_weight(3, p) : 0.0;
                     }));
  }
  return out;
}

}  // namespace detail

inline std::vector<VerificationCheck> verification_registry() {
  using detail::skip;
  std::vector<VerificationCheck> reg;

  reg.push_back({"orthogonality", "c^2 sum of kernel products equals the lattice delta, n,m in [-5,5]", 1e-8,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   if (!ctx.lattice().contains(-5) || !ctx.lattice().contains(5)) return skip("window lacks [-5,5]");
                   double e = 0.0;
                   for (int n = -5; n <= 5; ++n) {
                     for (int m = -5; m <= 5; ++m) e = std::max(e, verify_orthogonality(n, m, ctx.table).error);
                   }
                   return {e};
                 }});

  reg.push_back({"bessel-bound", "tabulated kernel values respect the uniform and Gaussian-tail bound", 1e-9,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   double e = 0.0;
                   for (int n = ctx.lattice().n_min(); n <= ctx.lattice().n_max(); ++n) {
                     const double j = ctx.table.kernel(n);
                     const double b = bessel_bound(n, ctx.params());
                     if (b > std::numeric_limits<double>::min()) {
                       e = std::max(e, std::abs(j) / b - 1.0);
                     } else if (!satisfies_bessel_bound(n, j, ctx.params(), 0.0)) {
                       e = std::numeric_limits<double>::infinity();
                     }
                   }
                   return {std::max(e, 0.0)};
                 }});

  reg.push_back({"l1-sup-bound", "sup |F f| <= B ‖f‖_1 on 20 random compact f", 1e-9,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(3);
                   double e = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const auto r = verify_l1_bound(random_compact_function(ctx.lattice(), rng), ctx.table, 0.0);
                     e = std::max(e, r.sup_transform / r.bound - 1.0);
                   }
                   return {std::max(e, 0.0)};
                 }});

  reg.push_back({"inversion", "F(F f) = f on the interior, 20 random compact f", 1e-8,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(4);
                   double e = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     e = std::max(e, verify_inversion(random_compact_function(ctx.lattice(), rng), ctx.table).max_error);
                   }
                   return {e};
                 }});

  reg.push_back({"plancherel", "‖F f‖_2 = ‖f‖_2, 20 random compact f", 1e-8,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(5);
                   double e = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     e = std::max(e, verify_plancherel(random_compact_function(ctx.lattice(), rng), ctx.table).error);
                   }
                   return {e};
                 }});

  reg.push_back({"kernel-route", "spectral translation equals the triple-product kernel sum", 1e-8,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(6);
                   const IndexRange all{0, ctx.table.size()};
                   double e = 0.0;
                   for (int i = 0; i < 3; ++i) {
                     const auto f = random_compact_function(ctx.lattice(), rng);
                     for (int x : {-2, 0, 3}) {
                       if (!ctx.lattice().contains(x)) continue;
                       const auto a = translation(f, x, ctx.table);
                       const auto b = translation_via_kernel(f, x, ctx.table);
                       e = std::max(e, detail::relative_to(detail::max_abs_diff(a, b, all), std::max(1.0, a.sup_abs())));
                     }
                   }
                   return {e};
                 }});

  reg.push_back({"convolution-theorem", "F(f * g) = F f . F g on the interior, direct convolution route", 1e-8,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(7);
                   double e = 0.0;
                   for (int i = 0; i < 5; ++i) {
                     const auto f = random_compact_function(ctx.lattice(), rng);
                     const auto g = random_compact_function(ctx.lattice(), rng);
                     const auto lhs = fourier_transform(convolution(f, g, ctx.table, ConvolutionRoute::Direct), ctx.table);
                     const auto rhs = pointwise_product(fourier_transform(f, ctx.table), fourier_transform(g, ctx.table));
                     e = std::max(e, detail::relative_to(detail::max_abs_diff(lhs, rhs, interior_range(lhs.size())),
                                                         std::max(1.0, rhs.sup_abs())));
                   }
                   return {e};
                 }});

  reg.push_back({"measure-product", "(xi * rho)(j_v(lambda .)) = F xi(lambda) F rho(lambda)", 1e-8,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(8);
                   std::vector<int> lambdas;
                   for (int k = -3; k <= 6; ++k) {
                     if (ctx.lattice().contains(k)) lambdas.push_back(k);
                   }
                   double e = 0.0;
                   for (int i = 0; i < 3; ++i) {
                     auto dens = [&] {
                       const auto f = random_compact_function(ctx.lattice(), rng, true, std::pair{-2, 8});
                       std::vector<double> d(f.size());
                       for (std::size_t k = 0; k < d.size(); ++k) d[k] = f[k].real();
                       return QMeasure(ctx.lattice(), d, ctx.params());
                     };
                     const QMeasure xi = dens();
                     const QMeasure rho = dens();
                     e = std::max(e, measure_product_identity(xi, rho, lambdas, ctx.table).max_error);
                   }
                   return {e};
                 }});

  reg.push_back({"gauss-transform", "F e(-y^2, q^2) equals the Gauss kernel G(., 1) on the window", 1e-8,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   const auto lhs = fourier_transform(q_gaussian(ctx.lattice(), 1.0, ctx.params()), ctx.table);
                   const auto rhs = gauss_kernel_function(ctx.lattice(), 1.0, ctx.params());
                   return {detail::relative_to(detail::max_abs_diff(lhs, rhs, {0, lhs.size()}), rhs.sup_abs())};
                 }});

  reg.push_back({"gauss-delta-limit", "c ∫ f G(., a^2) x^{2v+1} d_qx -> f(0) at a = q^10, five test functions", 1e-6,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   const QLattice& L = ctx.lattice();
                   const QParams& p = ctx.params();
                   std::vector<LatticeFunction> fs;
                   fs.push_back(LatticeFunction::from_exponents(L, [](int n) { return n >= 0 ? 1.0 : 0.0; }, 1.0));
                   fs.push_back(LatticeFunction::from_exponents(L, [](int n) { return n >= -3 ? 1.0 : 0.0; }, 1.0));
                   fs.push_back(LatticeFunction::sample(L, [](double x) { return std::exp(-std::pow(x, 4)); }, 1.0));
                   fs.push_back(LatticeFunction::sample(L, [](double x) { return 1.0 / (1.0 + std::pow(x, 6)); }, 1.0));
                   fs.push_back(LatticeFunction::sample(L, [](double x) { return std::cos(x * x); }, 1.0));
                   double e = 0.0;
                   for (const auto& f : fs) e = std::max(e, gauss_delta_limit_check(f, default_gauss_sequence(p), p).final_deviation);
                   return {e};
                 }});

  reg.push_back({"young-membership", "f * g has finite L^r norm for 1/p + 1/p' - 1 = 1/r", 0.0,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(11);
                   for (int i = 0; i < 5; ++i) {
                     const auto f = random_compact_function(ctx.lattice(), rng);
                     const auto g = random_compact_function(ctx.lattice(), rng);
                     const auto r = young_inequality_check(f, g, 1.2, 1.2, ctx.table);
                     if (!r.finite) return {std::numeric_limits<double>::infinity(), false, "non-finite norm"};
                   }
                   return {0.0};
                 }});

  reg.push_back({"gram-psd", "translation Gram matrices of F(nonnegative) are PSD on the default grid", 1e-9,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(12);
                   std::vector<int> pts;
                   for (int n : default_point_set()) {
                     if (ctx.lattice().contains(n)) pts.push_back(n);
                   }
                   double e = 0.0;
                   for (int i = 0; i < 10; ++i) {
                     const auto v = is_q_positive_type(random_positive_type(ctx.table, rng), pts, ctx.table);
                     e = std::max(e, detail::negative_part(v.min_eigenvalue, std::max(1.0, v.gram_norm)));
                   }
                   return {e};
                 }});

  reg.push_back({"transform-positive-type", "F phi is of positive type for Gauss kernels phi", 1e-9,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   double e = 0.0;
                   for (double t : {0.25, 1.0, 4.0}) {
                     const auto phi = gauss_kernel_function(ctx.lattice(), t, ctx.params());
                     e = std::max(e, detail::worst_violation(verify_transform_positive_type(phi, ctx.table)));
                   }
                   return {e};
                 }});

  reg.push_back({"quadratic-form", "<phi * f, f> >= 0, 20 random real f", 1e-9,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(14);
                   double e = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const auto phi = random_positive_type(ctx.table, rng);
                     const auto f = random_compact_function(ctx.lattice(), rng);
                     const auto r = verify_quadratic_form_positivity(phi, f, ctx.table);
                     e = std::max({e, detail::negative_part(r.value.real(), r.scale),
                                   detail::relative_to(std::abs(r.value.imag()), r.scale)});
                   }
                   return {e};
                 }});

  reg.push_back({"nonneg-spectrum", "F phi >= 0 for phi of positive type", 1e-9,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(15);
                   double e = 0.0;
                   for (int i = 0; i < 10; ++i) {
                     const auto r = verify_nonneg_spectrum(random_positive_type(ctx.table, rng), ctx.table);
                     e = std::max(e, detail::negative_part(r.min_value, r.sup_abs));
                   }
                   const auto g = verify_nonneg_spectrum(gauss_kernel_function(ctx.lattice(), 1.0, ctx.params()), ctx.table);
                   return {std::max(e, detail::negative_part(g.min_value, g.sup_abs))};
                 }});

  reg.push_back({"spectrum-mass", "c ∫ F phi x^{2v+1} d_qx = phi(0), signed and absolute", 1e-7,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(16);
                   double e = 0.0;
                   for (int i = 0; i < 10; ++i) {
                     const auto r = verify_l1_spectrum_mass(random_positive_type(ctx.table, rng), ctx.table);
                     e = std::max({e, r.abs_error, r.signed_error});
                   }
                   const auto g = verify_l1_spectrum_mass(gauss_kernel_function(ctx.lattice(), 1.0, ctx.params()), ctx.table);
                   return {std::max({e, g.abs_error, g.signed_error})};
                 }});

  reg.push_back({"positive-density", "phi = F rho with rho = F phi >= 0 recovered on the interior", 1e-8,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(17);
                   double e = 0.0;
                   for (int i = 0; i < 10; ++i) {
                     const auto phi = random_positive_type(ctx.table, rng);
                     const auto rho = fourier_transform(phi, ctx.table);
                     const auto back = fourier_transform(rho, ctx.table);
                     double low = 0.0;
                     for (std::size_t k = 0; k < rho.size(); ++k) low = std::min(low, rho[k].real());
                     e = std::max({e, detail::negative_part(low, rho.sup_abs()),
                                   detail::relative_to(detail::max_abs_diff(back, phi, interior_range(phi.size())),
                                                       phi.sup_abs())});
                   }
                   return {e};
                 }});

  reg.push_back({"product-positive-type", "phi . F f is of positive type for nonnegative f", 1e-9,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(18);
                   const auto phi = gauss_kernel_function(ctx.lattice(), 1.0, ctx.params());
                   const auto ind = LatticeFunction::from_exponents(ctx.lattice(), [](int n) { return n >= 0 ? 1.0 : 0.0; });
                   double e = detail::worst_violation(product_positive_type_check(phi, ind, ctx.table));
                   for (int i = 0; i < 3; ++i) {
                     const auto f = random_compact_function(ctx.lattice(), rng, true);
                     e = std::max(e, detail::worst_violation(
                                         product_positive_type_check(random_positive_type(ctx.table, rng), f, ctx.table)));
                   }
                   return {e};
                 }});

  reg.push_back({"product-closure", "phi1 . phi2 is of positive type for positive-type phi1, phi2", 1e-9,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   auto rng = ctx.rng(19);
                   double e = 0.0;
                   for (int i = 0; i < 5; ++i) {
                     const auto prod = pointwise_product(random_positive_type(ctx.table, rng), random_positive_type(ctx.table, rng));
                     e = std::max(e, detail::worst_violation(
                                         check_positive_type_on_sets(prod, standard_point_sets(ctx.lattice()), ctx.table)));
                   }
                   return {e};
                 }});

  reg.push_back({"bochner-roundtrip", "cutoff levels 1..10 recover known densities on the interior", 1e-6,
                 [](const VerifyContext& ctx) -> CheckOutcome {
                   std::vector<int> levels;
                   for (int n = 1; n <= 10; ++n) levels.push_back(n);
                   double e = 0.0;
                   std::string note;
                   for (const auto& [name, dens] : detail::bochner_test_densities(ctx.table)) {
                     std::vector<double> d(dens.size());
                     for (std::size_t k = 0; k < d.size(); ++k) d[k] = dens[k].real();
                     const QMeasure xi0(ctx.lattice(), d, ctx.params());
                     const auto phi = measure_fourier_transform(xi0, ctx.table);
                     const auto rep = bochner_reconstruct(phi, levels, ctx.table);
                     if (!rep.accepted) return {std::numeric_limits<double>::infinity(), false, name + ": " + rep.failure};
                     const auto range = interior_range(d.size());
                     double err = 0.0;
                     double top = 0.0;
                     for (std::size_t k = 0; k < d.size(); ++k) top = std::max(top, d[k]);
                     for (std::size_t k = range.begin; k < range.end; ++k) {
                       err = std::max(err, std::abs(rep.measure->density()[k] - d[k]));
                     }
                     double mass = 0.0;
                     for (const auto& lv : rep.levels) mass = std::max(mass, lv.mass_error);
                     e = std::max({e, err / top, mass});
                   }
                   return {e, false, note};
                 }});

  return reg;
}

struct VerifyOptions {
  std::optional<double> tolerance_override;
  /// Restrict to these ids; empty runs all.
  std::vector<std::string> only;
  std::uint64_t seed = 20240917;
  /// Prefix of the reproduction command.
  std::string program = "qharm";
};

namespace detail {

/// Shortest decimal that reads back to the same double.
inline std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace detail

inline std::string reproduction_command(const VerifyOptions& opt, const TransformTable& t, const std::string& id) {
  std::string cmd = opt.program + " verify --q " + detail::shortest(t.params().q()) + " --v " +
                    detail::shortest(t.params().v()) + " --nmin " + std::to_string(t.lattice().n_min()) +
                    " --nmax " + std::to_string(t.lattice().n_max()) + " --only " + id;
  if (opt.tolerance_override) cmd += " --tol " + detail::shortest(*opt.tolerance_override);
  return cmd;
}

inline VerificationSuiteResult run_verification(const TransformTable& t, const VerifyOptions& opt = {}) {
  const auto reg = verification_registry();
  for (const auto& id : opt.only) {
    if (std::none_of(reg.begin(), reg.end(), [&](const VerificationCheck& c) { return c.id == id; })) {
      throw ArgumentError("unknown verification id '" + id + "'");
    }
  }
  VerificationSuiteResult res;
  const VerifyContext ctx{t, opt.seed};
  for (const auto& check : reg) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), check.id) == opt.only.end()) continue;
    VerificationEntry e;
    e.id = check.id;
    e.tolerance = opt.tolerance_override.value_or(check.tolerance);
    const auto start = std::chrono::steady_clock::now();
    try {
      const CheckOutcome out = check.run(ctx);
      e.measured_error = out.measured;
      e.note = out.note;
      if (out.skip) {
        e.status = CheckStatus::Skip;
      } else {
        e.status = out.measured <= e.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
      }
    } catch (const Error& ex) {
      e.status = CheckStatus::Fail;
      e.measured_error = std::numeric_limits<double>::infinity();
      e.note = ex.what();
    }
    e.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (e.status == CheckStatus::Fail) e.reproduce = reproduction_command(opt, t, e.id);
    res.entries.push_back(std::move(e));
  }
  return res;
}

}  // namespace qharm
