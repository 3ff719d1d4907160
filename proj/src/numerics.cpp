#include "su11/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace su11 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Integer detection for hypergeometric parameters. Exact integers arrive
// exactly (they come from index arithmetic); the slack only guards against
// values written as e.g. -2.0000000001 by a caller.
bool is_nonpositive_integer(double v, long& out) {
  if (v > 0.5) return false;
  double r = std::round(v);
  if (std::abs(v - r) > 1e-9) return false;
  out = std::lround(-r);
  return out >= 0;
}

}  // namespace

double log_gamma(double z) {
  if (!(z > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive, got " +
                            std::to_string(z));
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(z, &sign);
#else
  return std::lgamma(z);
#endif
}

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

SignedLog signed_log_of(double v) {
  if (v == 0.0) return {-kInf, 0};
  return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
}

SignedLog operator*(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0 || b.sign == 0) return {-kInf, 0};
  return {a.log_abs + b.log_abs, a.sign * b.sign};
}

SignedLog operator/(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0) return {-kInf, 0};
  return {a.log_abs - b.log_abs, a.sign * b.sign};
}

SignedLog pochhammer_log(double a, int n) {
  SignedLog r{0.0, 1};
  for (int j = 0; j < n; ++j) {
    double f = a + j;
    if (f == 0.0) return {-kInf, 0};
    r.log_abs += std::log(std::abs(f));
    if (f < 0.0) r.sign = -r.sign;
  }
  return r;
}

double pochhammer(double a, int n) { return pochhammer_log(a, n).value(); }

double hyp_pfq_terminating(std::span<const double> upper,
                           std::span<const double> lower, double z) {
  long k_term = -1;
  for (double u : upper) {
    long k = 0;
    if (is_nonpositive_integer(u, k) && (k_term < 0 || k < k_term)) k_term = k;
  }
  if (k_term < 0) {
    throw std::domain_error(
        "hyp_pfq_terminating: no non-positive-integer upper parameter");
  }
  for (double l : lower) {
    long p = 0;
    if (is_nonpositive_integer(l, p) && p < k_term) {
      throw std::domain_error(
          "hyp_pfq_terminating: lower-parameter pole at term " +
          std::to_string(p) + " before termination index " +
          std::to_string(k_term));
    }
  }

  KahanSum sum;
  double term = 1.0;
  sum.add(term);
  for (long k = 0; k < k_term; ++k) {
    double num = 1.0;
    for (double u : upper) num *= u + static_cast<double>(k);
    double den = 1.0;
    for (double l : lower) den *= l + static_cast<double>(k);
    term *= num / den * z / static_cast<double>(k + 1);
    sum.add(term);
  }
  return sum.result();
}

QuadRule gauss_jacobi_rule(double alpha, double beta, int n) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::domain_error("gauss_jacobi_rule: weight exponents must be > -1");
  }
  if (n < 1) {
    throw std::domain_error("gauss_jacobi_rule: need at least one node");
  }

  const double ab = alpha + beta;
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  diag[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    double d = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag[k] = (beta * beta - alpha * alpha) / d;
  }
  for (int k = 1; k < n; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) /
           ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      double t = 2.0 * k + ab;
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           (t * t * (t + 1.0) * (t - 1.0));
    }
    sub[k - 1] = std::sqrt(b2);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("gauss_jacobi_rule: eigen-decomposition failed");
  }

  const double log_mu0 = (ab + 1.0) * std::log(2.0) + log_gamma(alpha + 1.0) +
                         log_gamma(beta + 1.0) - log_gamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);

  QuadRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()[i];
    double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace su11
