#include "su11/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "su11/numerics.hpp"

namespace su11 {

namespace {

// Generalized binomial C(x, m) for integer m >= 0. Gamma ratios when all
// arguments are off the poles, telescoping product otherwise.
double gen_binomial(double x, int m) {
  if (m == 0) return 1.0;
  if (x + 1.0 > 1e-9 && x - m + 1.0 > 1e-9) {
    return std::exp(log_gamma(x + 1.0) - log_gamma(static_cast<double>(m) + 1.0) -
                    log_gamma(x - static_cast<double>(m) + 1.0));
  }
  double r = 1.0;
  for (int j = 1; j <= m; ++j) r *= (x - j + 1.0) / j;
  return r;
}

}  // namespace

double jacobi_eval(JacobiParams p, int n, double z) {
  const double a = p.alpha, b = p.beta, ab = a + b;
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double pc = 0.5 * (a - b) + 0.5 * (ab + 2.0) * z;
  for (int k = 2; k <= n; ++k) {
    double t = 2.0 * k + ab;
    double c1 = 2.0 * k * (k + ab) * (t - 2.0);
    double c2 = (t - 1.0) * (t * (t - 2.0) * z + a * a - b * b);
    double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * t;
    double pn = (c2 * pc - c3 * pm1) / c1;
    pm1 = pc;
    pc = pn;
  }
  return pc;
}

double jacobi_deriv(JacobiParams p, int n, double z) {
  if (n == 0) return 0.0;
  const double a = p.alpha, b = p.beta, ab = a + b;
  double t = 2.0 * n + ab;
  double num = n * (a - b - t * z) * jacobi_eval(p, n, z) +
               2.0 * (n + a) * (n + b) * jacobi_eval(p, n - 1, z);
  return num / (t * (1.0 - z * z));
}

HomJacobi make_hom_jacobi(JacobiParams p, int n) {
  HomJacobi h;
  h.n = n;
  h.coeff.resize(n + 1);
  int sgn = 1;
  for (int k = 0; k <= n; ++k) {
    h.coeff[k] = sgn * gen_binomial(n + p.alpha, n - k) * gen_binomial(n + p.beta, k);
    sgn = -sgn;
  }
  return h;
}

double HomJacobi::eval(double a, double b) const {
  // Powers a^{n-k} descending; sized for every degree the project reaches.
  constexpr int kMaxDeg = 128;
  double apow[kMaxDeg + 1];
  if (n > kMaxDeg) throw std::invalid_argument("HomJacobi: degree too large");
  apow[0] = 1.0;
  for (int j = 1; j <= n; ++j) apow[j] = apow[j - 1] * a;
  KahanSum s;
  double bp = 1.0;
  for (int k = 0; k <= n; ++k) {
    s.add(coeff[k] * bp * apow[n - k]);
    bp *= b;
  }
  return s.result();
}

double jacobi_hom(JacobiParams p, int n, double a, double b) {
  return make_hom_jacobi(p, n).eval(a, b);
}

double jacobi_norm_log(JacobiParams p, int n) {
  const double a = p.alpha, b = p.beta, ab = a + b;
  const double ln2 = std::log(2.0);
  if (n == 0) {
    return (ab + 1.0) * ln2 + log_gamma(a + 1.0) + log_gamma(b + 1.0) -
           log_gamma(ab + 2.0);
  }
  return (ab + 1.0) * ln2 - std::log(2.0 * n + ab + 1.0) +
         log_gamma(n + a + 1.0) + log_gamma(n + b + 1.0) -
         log_gamma(n + ab + 1.0) - log_gamma(n + 1.0);
}

double jacobi_norm(JacobiParams p, int n) { return std::exp(jacobi_norm_log(p, n)); }

double ResidualReport::max_abs() const {
  return std::max({lower_derivative, raise_derivative, raise_beta, lower_alpha,
                   lower_beta, raise_alpha, reflection});
}

ResidualReport check_structure_relations(JacobiParams p, int n, double z) {
  const double a = p.alpha, b = p.beta, ab = a + b;
  ResidualReport r;

  // Bare derivative against the parameter-raised, degree-lowered polynomial.
  {
    double rhs = n >= 1 ? 0.5 * (n + ab + 1.0) * jacobi_eval({a + 1.0, b + 1.0}, n - 1, z)
                        : 0.0;
    r.lower_derivative = std::abs(jacobi_deriv(p, n, z) - rhs);
  }

  // Weighted derivative, product rule on the left, against the
  // parameter-lowered, degree-raised polynomial.
  {
    double w = std::pow(1.0 - z, a - 1.0) * std::pow(1.0 + z, b - 1.0);
    double lhs = w * ((b * (1.0 - z) - a * (1.0 + z)) * jacobi_eval(p, n, z) +
                      (1.0 - z * z) * jacobi_deriv(p, n, z));
    double rhs = -2.0 * (n + 1.0) * w * jacobi_eval({a - 1.0, b - 1.0}, n + 1, z);
    r.raise_derivative = std::abs(lhs - rhs);
  }

  {
    double d = 2.0 * n + ab + 1.0;
    double rhs = (n + ab + 1.0) / d * jacobi_eval({a, b + 1.0}, n, z);
    if (n >= 1) rhs += (n + a) / d * jacobi_eval({a, b + 1.0}, n - 1, z);
    r.raise_beta = std::abs(jacobi_eval(p, n, z) - rhs);
  }

  if (n >= 1) {
    double d = 2.0 * n + ab - 1.0;
    double lhs = 0.5 * (1.0 - z) * jacobi_eval(p, n - 1, z);
    double rhs = (n + a - 1.0) / d * jacobi_eval({a - 1.0, b}, n - 1, z) -
                 n / d * jacobi_eval({a - 1.0, b}, n, z);
    r.lower_alpha = std::abs(lhs - rhs);
  }

  {
    double d = 2.0 * n + ab + 1.0;
    double lhs = 0.5 * (1.0 + z) * jacobi_eval(p, n, z);
    double rhs = (n + b) / d * jacobi_eval({a, b - 1.0}, n, z) +
                 (n + 1.0) / d * jacobi_eval({a, b - 1.0}, n + 1, z);
    r.lower_beta = std::abs(lhs - rhs);
  }

  {
    double d = 2.0 * n + ab + 1.0;
    double rhs = (n + ab + 1.0) / d * jacobi_eval({a + 1.0, b}, n, z);
    if (n >= 1) rhs -= (n + b) / d * jacobi_eval({a + 1.0, b}, n - 1, z);
    r.raise_alpha = std::abs(jacobi_eval(p, n, z) - rhs);
  }

  {
    double lhs = jacobi_eval(p, n, -z);
    double rhs = (n % 2 == 0 ? 1.0 : -1.0) * jacobi_eval({b, a}, n, z);
    r.reflection = std::abs(lhs - rhs);
  }

  return r;
}

}  // namespace su11
