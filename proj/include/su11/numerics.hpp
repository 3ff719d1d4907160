#pragma once

#include <span>
#include <vector>

namespace su11 {

// log Gamma(z) for z > 0; throws std::domain_error otherwise.
double log_gamma(double z);

// Magnitude/sign pair for products that overflow double range.
struct SignedLog {
  double log_abs;  // log|value|; -inf when value == 0
  int sign;        // -1, 0, +1
  double value() const;
};

SignedLog signed_log_of(double v);
SignedLog operator*(const SignedLog& a, const SignedLog& b);
SignedLog operator/(const SignedLog& a, const SignedLog& b);

// Rising factorial (a)_n = a(a+1)...(a+n-1), (a)_0 = 1.
SignedLog pochhammer_log(double a, int n);
double pochhammer(double a, int n);

// Terminating pFq at argument z. At least one upper parameter must be a
// non-positive integer; a lower-parameter pole before the termination index
// is a domain error, as is a non-terminating parameter set.
double hyp_pfq_terminating(std::span<const double> upper,
                           std::span<const double> lower, double z);

// Gaussian rule for the weight (1-z)^alpha (1+z)^beta on (-1,1).
// Nodes are strictly increasing, weights positive; an n-node rule integrates
// polynomials of degree <= 2n-1 exactly up to rounding.
struct QuadRule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadRule gauss_jacobi_rule(double alpha, double beta, int n);

// Compensated accumulator; immune to -O2 reassociation but not -ffast-math.
class KahanSum {
 public:
  void add(double x) {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double result() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace su11
