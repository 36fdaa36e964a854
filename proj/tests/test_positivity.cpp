#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qharm/positivity.hpp"
#include "qharm/verify.hpp"

namespace {

using namespace qharm;

struct PositivityTest : ::testing::Test {
  QParams p{0.5, 0.0};
  TransformTable t{p, QLattice(0.5, -20, 60)};
};

TEST_F(PositivityTest, SinglePointGram) {
  const auto phi = gauss_kernel_function(t.lattice(), 1.0, p);
  const auto g = gram_matrix(phi, {2}, t);
  ASSERT_EQ(g.entries.rows(), 1);
  EXPECT_NEAR(std::abs(g.entries(0, 0) - translation(phi, 2, t).at_exponent(2)), 0.0, 1e-15);
}

TEST_F(PositivityTest, DuplicatePointsRejected) {
  const auto phi = gauss_kernel_function(t.lattice(), 1.0, p);
  EXPECT_THROW(gram_matrix(phi, {1, 2, 1}, t), ArgumentError);
  EXPECT_THROW(gram_matrix(phi, {}, t), ArgumentError);
}

TEST_F(PositivityTest, GramOfPositiveTypeIsHermitianAndMatchesKernelRoute) {
  std::mt19937_64 rng(31);
  const auto phi = random_positive_type(t, rng);
  const std::vector<int> pts{-1, 0, 2, 5};
  const auto g = gram_matrix(phi, pts, t);
  EXPECT_LT(g.hermitian_defect, 1e-12);
  for (std::size_t r = 0; r < pts.size(); ++r) {
    const auto via = translation_via_kernel(phi, pts[r], t);
    for (std::size_t l = 0; l < pts.size(); ++l) {
      EXPECT_NEAR(std::abs(g.entries(Eigen::Index(r), Eigen::Index(l)) - via.at_exponent(pts[l])), 0.0, 1e-8);
    }
  }
}

TEST_F(PositivityTest, ZeroIsPositive) {
  const auto v = is_q_positive_type(LatticeFunction(t.lattice()), default_point_set(), t);
  EXPECT_TRUE(v.positive);
  EXPECT_EQ(v.min_eigenvalue, 0.0);
}

TEST_F(PositivityTest, TransformOfGaussianIsPositiveOnRandomPoints) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> u(-5, 15);
  const auto phi = fourier_transform(q_gaussian(t.lattice(), 1.0, p), t);
  for (int trial = 0; trial < 10; ++trial) {
    std::set<int> s;
    while (s.size() < 8) s.insert(u(rng));
    EXPECT_TRUE(is_q_positive_type(phi, std::vector<int>(s.begin(), s.end()), t).positive);
  }
}

TEST_F(PositivityTest, NegativeSpectrumGivesWitness) {
  // phi = F rho with rho < 0 at one point: Gram matrices see the negative atom.
  const auto rho = LatticeFunction::from_exponents(t.lattice(), [](int n) {
    if (n == 2) return -1.0;
    return n >= 0 && n <= 6 ? 0.2 : 0.0;
  });
  const auto phi = fourier_transform(rho, t);
  std::vector<int> pts;
  for (int n = -3; n <= 10; ++n) pts.push_back(n);
  const auto v = is_q_positive_type(phi, pts, t);
  ASSERT_FALSE(v.positive);
  ASSERT_EQ(v.witness.size(), pts.size());
  const cplx form = quadratic_form(v.gram, v.witness);
  EXPECT_LT(form.real(), -v.threshold);
  EXPECT_NEAR(form.real(), v.min_eigenvalue, 1e-9 * v.gram_norm);
}

TEST_F(PositivityTest, RandomPositiveTypeBattery) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 20; ++i) {
    const auto phi = random_positive_type(t, rng);
    EXPECT_TRUE(is_q_positive_type(phi, default_point_set(), t).positive);
    EXPECT_TRUE(verify_nonneg_spectrum(phi, t).nonnegative);
    EXPECT_TRUE(verify_l1_spectrum_mass(phi, t).holds);
  }
}

TEST_F(PositivityTest, TransformPositiveTypeForGaussKernel) {
  const auto phi = gauss_kernel_function(t.lattice(), 1.0, p);
  EXPECT_TRUE(verify_transform_positive_type(phi, t).all_positive);
  EXPECT_TRUE(verify_transform_positive_type(LatticeFunction(t.lattice()), t).all_positive);
}

TEST_F(PositivityTest, QuadraticFormOnKernelProbeRecoversSpectrum) {
  std::mt19937_64 rng(34);
  const auto phi = random_positive_type(t, rng);
  const auto spec = fourier_transform(phi, t);
  for (int x0 : {-1, 0, 3}) {
    const auto f = LatticeFunction::from_exponents(t.lattice(), [&](int n) { return t.c_qv() * t.kernel(x0 + n); });
    const auto r = verify_quadratic_form_positivity(phi, f, t);
    const double want = spec.at_exponent(x0).real() / ((1.0 - p.q()) * std::pow(p.q(), x0 * p.weight_exponent()));
    EXPECT_NEAR(r.value.real(), want, 1e-8 * std::max(1.0, std::abs(want)));
    EXPECT_TRUE(r.nonnegative);
  }
}

TEST_F(PositivityTest, QuadraticFormRandomDraws) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 100; ++i) {
    const auto phi = random_positive_type(t, rng);
    const auto f = random_compact_function(t.lattice(), rng);
    const auto r = verify_quadratic_form_positivity(phi, f, t);
    EXPECT_TRUE(r.nonnegative);
    EXPECT_TRUE(r.imaginary_negligible);
  }
  const auto zero = verify_quadratic_form_positivity(random_positive_type(t, rng), LatticeFunction(t.lattice()), t);
  EXPECT_EQ(zero.value, cplx(0.0));
}

TEST_F(PositivityTest, SpectrumOfGaussKernelIsGaussian) {
  const auto r = verify_nonneg_spectrum(gauss_kernel_function(t.lattice(), 1.0, p), t);
  EXPECT_TRUE(r.nonnegative);
  const auto m = verify_l1_spectrum_mass(gauss_kernel_function(t.lattice(), 1.0, p), t);
  EXPECT_LT(m.signed_error, 1e-7);
}

TEST_F(PositivityTest, SpectrumMassIndicator) {
  const auto ind = LatticeFunction::from_exponents(t.lattice(), [](int n) { return n >= 0 ? 1.0 : 0.0; });
  const auto phi = fourier_transform(ind, t);
  EXPECT_TRUE(verify_l1_spectrum_mass(phi, t).holds);
  EXPECT_THROW(verify_l1_spectrum_mass(LatticeFunction(t.lattice()), t), ArgumentError);
  const auto zero = verify_l1_spectrum_mass(LatticeFunction(t.lattice(), std::vector<cplx>(t.size()), 0.0), t);
  EXPECT_EQ(zero.abs_mass, 0.0);
}

TEST_F(PositivityTest, WienerMembership) {
  EXPECT_TRUE(wiener_membership(LatticeFunction(t.lattice()), t).member);
  EXPECT_TRUE(wiener_membership(q_gaussian(t.lattice(), 1.0, p), t).member);
  const auto one = LatticeFunction::sample(t.lattice(), [](double) { return 1.0; });
  const auto r = wiener_membership(one, t);
  EXPECT_FALSE(r.tails_decay);
  EXPECT_FALSE(r.member);
}

TEST_F(PositivityTest, ProductsStayPositive) {
  const auto phi = gauss_kernel_function(t.lattice(), 1.0, p);
  const auto ind = LatticeFunction::from_exponents(t.lattice(), [](int n) { return n >= 0 ? 1.0 : 0.0; });
  EXPECT_TRUE(product_positive_type_check(phi, ind, t).all_positive);
  EXPECT_TRUE(product_positive_type_check(phi, LatticeFunction(t.lattice()), t).all_positive);
  std::mt19937_64 rng(36);
  const auto a = random_positive_type(t, rng);
  const auto b = random_positive_type(t, rng);
  EXPECT_TRUE(check_positive_type_on_sets(pointwise_product(a, b), standard_point_sets(t.lattice()), t).all_positive);
  const auto neg = LatticeFunction::from_exponents(t.lattice(), [](int n) { return n == 0 ? -1.0 : 0.0; });
  EXPECT_THROW(product_positive_type_check(phi, neg, t), ArgumentError);
}

}  // namespace
