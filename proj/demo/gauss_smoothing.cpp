// Smooths the indicator of [0,1] with the q-Gauss kernel at shrinking widths
// and prints how the smoothed value at x = 1 and the mass at 0 behave.

#include <cmath>
#include <cstdio>

#include "qharm/qharm.hpp"

int main() {
  const qharm::QParams p(0.5, 0.0);
  const qharm::TransformTable t(p, qharm::QLattice(0.5, -20, 60));
  const auto ind = qharm::LatticeFunction::from_exponents(t.lattice(), [](int n) { return n >= 0 ? 1.0 : 0.0; }, 1.0);

  std::printf("%6s %14s %14s %14s\n", "j", "a=q^j", "(f*G_a)(1)", "|I_a - f(0)|");
  const auto limit = qharm::gauss_delta_limit_check(ind, qharm::default_gauss_sequence(p), p);
  for (std::size_t j = 0; j < limit.a_values.size(); ++j) {
    const double a = limit.a_values[j];
    const auto g = qharm::gauss_kernel_function(t.lattice(), a * a, p);
    const auto smooth = qharm::convolution(ind, g, t);
    std::printf("%6zu %14.6e %14.6e %14.6e\n", j + 1, a, smooth.at_exponent(0).real(), limit.deviations[j]);
  }

  const auto phi = qharm::fourier_transform(qharm::q_gaussian(t.lattice(), 1.0, p), t);
  const auto v = qharm::is_q_positive_type(phi, qharm::default_point_set(), t);
  std::printf("\nF e(-x^2) on the default grid: %s, lambda_min = %.3e\n", v.positive ? "POSITIVE" : "NEGATIVE",
              v.min_eigenvalue);
  return 0;
}
