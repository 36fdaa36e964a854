#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qharm/transform.hpp"
#include "qharm/verify.hpp"

namespace {

using namespace qharm;

class TransformTest : public ::testing::TestWithParam<double> {
 protected:
  QParams p{0.5, GetParam()};
  TransformTable t{p, QLattice(0.5, -20, 60)};
};

TEST_P(TransformTest, KernelDependsOnExponentSum) {
  for (std::size_t k = 0; k < 10; ++k) {
    for (std::size_t n = 0; n < 10; ++n) EXPECT_EQ(t.kernel_at(k, n), t.kernel_at(n, k));
  }
  EXPECT_EQ(t.kernel_at(3, 5), t.kernel(t.lattice().exponent(3) + t.lattice().exponent(5)));
}

TEST_P(TransformTest, ZeroMapsToZero) {
  const LatticeFunction z(t.lattice());
  const auto r = fourier_transform_checked(z, t);
  EXPECT_EQ(r.function.sup_abs(), 0.0);
  EXPECT_TRUE(r.warnings.empty());
}

TEST_P(TransformTest, DeltaAtOneGivesScaledKernel) {
  // F(1_{x=1})(x) = c (1-q) j_v(x, q^2).
  const auto d = LatticeFunction::from_exponents(t.lattice(), [](int n) { return n == 0 ? 1.0 : 0.0; });
  const auto f = fourier_transform(d, t);
  for (int k = -20; k <= 60; ++k) {
    EXPECT_NEAR(f.at_exponent(k).real(), t.c_qv() * 0.5 * t.kernel(k), 1e-15);
  }
}

TEST_P(TransformTest, OrthogonalityTable) {
  for (int n = -5; n <= 5; ++n) {
    for (int m = -5; m <= 5; ++m) EXPECT_LT(verify_orthogonality(n, m, t).error, 1e-8) << n << "," << m;
  }
  const auto d = verify_orthogonality(0, 0, t);
  EXPECT_NEAR(d.value, 1.0 / (1.0 - 0.5), 1e-8 * 2.0);
}

TEST_P(TransformTest, InversionPlancherelAndBoundOnRandomDraws) {
  std::mt19937_64 rng(100 + static_cast<int>(GetParam() * 10));
  for (int i = 0; i < 25; ++i) {
    const auto f = random_compact_function(t.lattice(), rng);
    EXPECT_LT(verify_inversion(f, t).max_error, 1e-8);
    EXPECT_LT(verify_plancherel(f, t).error, 1e-8);
    EXPECT_TRUE(verify_l1_bound(f, t).holds);
  }
}

TEST_P(TransformTest, LinearityProperty) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_compact_function(t.lattice(), rng);
    const auto g = random_compact_function(t.lattice(), rng);
    const cplx a(u(rng), u(rng)), b(u(rng), 0.0);
    const auto lhs = fourier_transform(linear_combination(a, f, b, g), t);
    const auto rhs = linear_combination(a, fourier_transform(f, t), b, fourier_transform(g, t));
    const double scale = std::max(1.0, rhs.sup_abs());
    for (std::size_t k = 0; k < lhs.size(); ++k) EXPECT_LE(std::abs(lhs[k] - rhs[k]), 1e-13 * scale);
  }
}

TEST_P(TransformTest, TransformOfKernelProbeIsDelta) {
  // F(c j_v(q^k .)) = delta_{q,v}(q^k, .) at interior points.
  for (int k : {-3, 0, 4}) {
    const auto probe = LatticeFunction::from_exponents(t.lattice(), [&](int n) { return t.c_qv() * t.kernel(k + n); });
    const auto d = fourier_transform(probe, t);
    for (int n = -3; n <= 10; ++n) {
      const double want = delta_qv(k, n, p);
      EXPECT_NEAR(d.at_exponent(n).real(), want, 1e-9 * std::max(1.0, delta_qv(k, k, p)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, TransformTest, ::testing::Values(0.0, 1.5));

TEST(Transform, RequiresWindowAroundOne) {
  const QParams p(0.5, 0.0);
  const TransformTable t(p, QLattice(0.5, 1, 30));
  EXPECT_THROW(fourier_transform(LatticeFunction(t.lattice()), t), ArgumentError);
}

TEST(Transform, RejectsForeignLattice) {
  const QParams p(0.5, 0.0);
  const TransformTable t(p, QLattice(0.5, -20, 60));
  EXPECT_THROW(fourier_transform(LatticeFunction(QLattice(0.5, -20, 59)), t), ArgumentError);
  EXPECT_THROW(TransformTable(p, QLattice(0.4, -5, 5)), ArgumentError);
}

TEST(Transform, EdgeWarningForNonDecayingInput) {
  const QParams p(0.5, 0.0);
  const TransformTable t(p, QLattice(0.5, -20, 60));
  const auto one = LatticeFunction::sample(t.lattice(), [](double) { return 1.0; });
  const auto r = fourier_transform_checked(one, t);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_FALSE(verify_inversion(one, t).warnings.empty());
}

TEST(Transform, FineBaseNeedsWiderWindow) {
  // At q = 0.9 the kernel decays slowly in the exponent; the wider window
  // restores inversion to near rounding.
  const QParams p(0.9, 0.0);
  const TransformTable wide(p, QLattice(0.9, -40, 220));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    const auto f = random_compact_function(wide.lattice(), rng);
    EXPECT_LT(verify_inversion(f, wide).max_error, 1e-8);
  }
}

TEST(InteriorRange, DropsEqualShares) {
  const auto r = interior_range(81);
  EXPECT_EQ(r.begin, 16u);
  EXPECT_EQ(r.end, 65u);
  EXPECT_THROW(interior_range(10, 0.0), ArgumentError);
}

}  // namespace
