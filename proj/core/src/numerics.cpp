#include "superset/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "superset/errors.hpp"

namespace superset {

namespace {

double eval_cubic(double a1, double a2, double a3, double a4, double x) {
  return ((a1 * x + a2) * x + a3) * x + a4;
}

// Newton iterations on the original polynomial, keeping the best iterate.
double polish(double a1, double a2, double a3, double a4, double x) {
  double best = x;
  double best_res = std::abs(eval_cubic(a1, a2, a3, a4, x));
  int stalls = 0;
  for (int it = 0; it < 60 && best_res > 0.0 && stalls < 3; ++it) {
    const double d = (3.0 * a1 * x + 2.0 * a2) * x + a3;
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = x - eval_cubic(a1, a2, a3, a4, x) / d;
    if (!std::isfinite(next) || next == x) break;
    const double res = std::abs(eval_cubic(a1, a2, a3, a4, next));
    x = next;
    if (res < best_res) {
      best = next;
      best_res = res;
      stalls = 0;
    } else {
      ++stalls;
    }
  }
  return best;
}

// Real roots of q2 x^2 + q1 x + q0 with q2 != 0, cancellation-free form.
void quadratic_roots(double q2, double q1, double q0, std::vector<double>& out) {
  const double scale = std::max({std::abs(q2), std::abs(q1), std::abs(q0)});
  q2 /= scale;
  q1 /= scale;
  q0 /= scale;
  double disc = q1 * q1 - 4.0 * q2 * q0;
  const double slack = 1e-12 * (q1 * q1 + std::abs(4.0 * q2 * q0));
  if (disc < 0.0) {
    if (disc < -slack) return;
    disc = 0.0;
  }
  if (disc == 0.0) {
    out.push_back(-q1 / (2.0 * q2));
    return;
  }
  const double q = -0.5 * (q1 + std::copysign(std::sqrt(disc), q1));
  out.push_back(q / q2);
  if (q != 0.0) out.push_back(q0 / q);
}

// One real root of the monic x^3 + b x^2 + c x + d with |b|, |c|, |d| <= 1:
// the largest in magnitude when all three roots are real.
double monic_dominant_root(double b, double c, double d) {
  const double q = (b * b - 3.0 * c) / 9.0;
  const double r = (2.0 * b * b * b - 9.0 * b * c + 27.0 * d) / 54.0;
  const double q3 = q * q * q;
  const double shift = b / 3.0;
  if (r * r < q3) {
    const double theta = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    const double amp = -2.0 * std::sqrt(q);
    double best = 0.0;
    for (double phase : {0.0, 2.0 * std::numbers::pi, -2.0 * std::numbers::pi}) {
      const double x = amp * std::cos((theta + phase) / 3.0) - shift;
      if (std::abs(x) > std::abs(best)) best = x;
    }
    return best;
  }
  const double big_a = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q3)), r);
  const double big_b = big_a == 0.0 ? 0.0 : q / big_a;
  return big_a + big_b - shift;
}

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename F>
Panel gauss_kronrod_panel(F& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(mid);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

// Globally adaptive bisection: split the panel with the largest error
// estimate until the total error is below 1e-13 relative.
template <typename F>
double integrate_adaptive(F&& f, const std::vector<double>& breaks) {
  constexpr double kTol = 1e-13;
  constexpr std::size_t kMaxPanels = 20000;
  std::priority_queue<Panel> panels;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto p = gauss_kronrod_panel(f, breaks[i], breaks[i + 1]);
    value += p.value;
    error += p.error;
    panels.push(p);
  }
  while (error > kTol * std::abs(value) && panels.size() < kMaxPanels) {
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const auto left = gauss_kronrod_panel(f, worst.lo, mid);
    const auto right = gauss_kronrod_panel(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  return value;
}

}  // namespace

double cubic_residual_scale(double a1, double a2, double a3, double a4, double r) {
  return std::max({std::abs(a1 * r * r * r), std::abs(a2 * r * r), std::abs(a3 * r), std::abs(a4), 1.0});
}

CubicRoots solve_cubic(double a1, double a2, double a3, double a4) {
  if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3) || !std::isfinite(a4)) {
    throw InvalidPolynomial("cubic coefficients must be finite");
  }
  if (a1 == 0.0 && a2 == 0.0 && a3 == 0.0 && a4 == 0.0) {
    throw InvalidPolynomial("all cubic coefficients are zero");
  }

  std::vector<double> seeds;
  if (a1 != 0.0) {
    const double b = a2 / a1;
    const double c = a3 / a1;
    const double d = a4 / a1;
    // x = s y keeps the monic coefficients within [-1, 1].
    const double s = std::max({std::abs(b), std::sqrt(std::abs(c)), std::cbrt(std::abs(d))});
    const double r = s == 0.0 ? 0.0 : polish(a1, a2, a3, a4, s * monic_dominant_root(b / s, c / (s * s), d / (s * s * s)));
    seeds.push_back(r);
    // Divide out (x - r). Working from the constant term is stable for the
    // dominant root; a zero root needs the leading-term direction.
    if (r != 0.0) {
      const double q0 = -a4 / r;
      const double q1 = (q0 - a3) / r;
      quadratic_roots(a1, q1, q0, seeds);
    } else {
      const double q1 = a2 + a1 * r;
      quadratic_roots(a1, q1, a3 + q1 * r, seeds);
    }
  } else if (a2 != 0.0) {
    quadratic_roots(a2, a3, a4, seeds);
  } else if (a3 != 0.0) {
    seeds.push_back(-a4 / a3);
  }

  std::vector<double> roots;
  for (double x : seeds) {
    if (std::isfinite(x)) roots.push_back(polish(a1, a2, a3, a4, x));
  }
  std::sort(roots.begin(), roots.end());

  // A multiple root is only resolved to about sqrt(eps); merge neighbours
  // whose midpoint is at least as good a root.
  CubicRoots result;
  for (double r : roots) {
    if (!result.roots.empty()) {
      const double prev = result.roots.back();
      const double mid = 0.5 * (prev + r);
      if (std::abs(r - prev) <= 1e-9 * std::max(1.0, std::abs(r)) ||
          (std::abs(r - prev) <= 1e-5 * std::max(1.0, std::abs(r)) &&
           std::abs(eval_cubic(a1, a2, a3, a4, mid)) <=
               std::max(result.residuals.back(), std::abs(eval_cubic(a1, a2, a3, a4, r))))) {
        result.roots.back() = mid;
        result.residuals.back() = std::abs(eval_cubic(a1, a2, a3, a4, mid));
        continue;
      }
    }
    result.roots.push_back(r);
    result.residuals.push_back(std::abs(eval_cubic(a1, a2, a3, a4, r)));
  }
  return result;
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) {
    throw InvalidArgument("log_sum_exp of an empty list");
  }
  const double top = *std::max_element(values.begin(), values.end());
  if (top == -std::numeric_limits<double>::infinity()) return top;
  if (top == std::numeric_limits<double>::infinity()) return top;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - top);
  return top + std::log(acc);
}

double log_g_integral(std::size_t n, std::size_t k, double r2, double a) {
  if (!(a > 2.0) || !std::isfinite(a)) {
    throw InvalidArgument("hyper-g parameter a must exceed 2, got " + std::to_string(a));
  }
  if (k == 0) return 0.0;
  if (k + 1 >= n) {
    throw InsufficientObservations("hyper-g integral needs n - 1 > k, got n=" + std::to_string(n) +
                                   ", k=" + std::to_string(k));
  }
  if (!(r2 >= 0.0)) {
    throw InvalidArgument("R^2 must be nonnegative, got " + std::to_string(r2));
  }
  if (r2 >= 1.0) {
    throw SaturatedFit("R^2 = " + std::to_string(r2) + " makes the hyper-g integral diverge");
  }

  // u = g/(1+g), w = 1 - u turns the integrand into
  //   ((a-2)/2) (1-R2)^(-(n-1)/2) * w^e (1 + c w)^(-(n-1)/2),   c = R2/(1-R2),
  // with e = (k+a)/2 - 2 > -1. The bracket is at most one, so no overflow.
  const double half_n1 = 0.5 * static_cast<double>(n - 1);
  const double e = 0.5 * (static_cast<double>(k) + a) - 2.0;
  const double c = r2 / (1.0 - r2);
  const double log_prefactor = std::log(0.5 * (a - 2.0)) - half_n1 * std::log1p(-r2);

  // Decay length of (1 + c w)^(-(n-1)/2) near w = 0; breakpoints keep the
  // adaptive rule from stepping over a narrow peak.
  std::vector<double> breaks{0.0};
  if (c * half_n1 > 1.0) {
    for (double h = 1.0 / (c * half_n1); h < 1.0; h *= 8.0) breaks.push_back(h);
  }
  breaks.push_back(1.0);

  double total = 0.0;
  if (e < 0.0) {
    // s = w^(e+1) removes the integrable endpoint singularity at w = 0.
    const double inv = 1.0 / (e + 1.0);
    for (double& b : breaks) b = std::pow(b, e + 1.0);
    total = integrate_adaptive(
        [&](double s) { return std::exp(-half_n1 * std::log1p(c * std::pow(s, inv))) * inv; }, breaks);
  } else {
    total = integrate_adaptive(
        [&](double w) {
          if (w <= 0.0) return e == 0.0 ? 1.0 : 0.0;
          return std::exp(e * std::log(w) - half_n1 * std::log1p(c * w));
        },
        breaks);
  }
  const double result = log_prefactor + std::log(total);
  if (!std::isfinite(result)) {
    throw NumericalError("hyper-g integral is not finite for n=" + std::to_string(n) +
                         ", k=" + std::to_string(k) + ", R2=" + std::to_string(r2));
  }
  return result;
}

}  // namespace superset
