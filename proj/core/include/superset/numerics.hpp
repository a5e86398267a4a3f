#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace superset {

/// Distinct real roots of a cubic, ascending, with |p(r)| at each.
struct CubicRoots {
  std::vector<double> roots;
  std::vector<double> residuals;
};

/// Real roots of a1 x^3 + a2 x^2 + a3 x + a4.
///
/// Leading zeros degrade the problem to a quadratic or linear equation. Roots
/// are seeded in closed form on a rescaled monic cubic, then Newton-polished
/// against the original coefficients; repeated roots are reported once.
/// Throws InvalidPolynomial when every coefficient is zero.
CubicRoots solve_cubic(double a1, double a2, double a3, double a4);

/// Scale used by the residual bound: max(|a1 r^3|, |a2 r^2|, |a3 r|, |a4|, 1).
double cubic_residual_scale(double a1, double a2, double a3, double a4, double r);

/// log(sum(exp(values))); -inf when every value is -inf. Throws on empty input.
double log_sum_exp(std::span<const double> values);

/// Log Bayes factor of a k-covariate linear model against the intercept-only
/// model under the hyper-g prior with hyperparameter a:
///
///   log  int_0^inf ((a-2)/2) (1+g)^((n-1-k-a)/2) [1 + g(1-R2)]^(-(n-1)/2) dg
///
/// evaluated by adaptive Gauss-Kronrod quadrature after mapping g onto [0,1).
/// k = 0 returns 0 for any R2.
double log_g_integral(std::size_t n, std::size_t k, double r2, double a);

}  // namespace superset
