#pragma once

#include <vector>

namespace su11 {

struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;
};

// P_n^{(alpha,beta)}(z) by the three-term recurrence in the degree.
double jacobi_eval(JacobiParams p, int n, double z);

// dP_n^{(alpha,beta)}/dz from the same-parameter ODE companion relation
// (2n+a+b)(1-z^2) P_n' = n(a-b-(2n+a+b)z) P_n + 2(n+a)(n+b) P_{n-1}.
double jacobi_deriv(JacobiParams p, int n, double z);

// Homogenized two-argument form (a+b)^n P_n((a-b)/(a+b)), well defined at
// a+b = 0. Expanded as sum_k C(n+alpha, n-k) C(n+beta, k) (-b)^k a^{n-k}.
double jacobi_hom(JacobiParams p, int n, double a, double b);

// Precomputed coefficients of the homogenized form, for hot loops.
struct HomJacobi {
  int n = 0;
  std::vector<double> coeff;  // coeff[k] multiplies b^k a^{n-k}
  double eval(double a, double b) const;
};
HomJacobi make_hom_jacobi(JacobiParams p, int n);

// Squared L2 norm against the weight (1-z)^alpha (1+z)^beta.
double jacobi_norm(JacobiParams p, int n);
double jacobi_norm_log(JacobiParams p, int n);

// Absolute residuals of the seven structure relations at a point.
struct ResidualReport {
  double lower_derivative = 0.0;  // bare derivative vs degree-lowered shift
  double raise_derivative = 0.0;  // weighted derivative vs degree-raised shift
  double raise_beta = 0.0;
  double lower_alpha = 0.0;
  double lower_beta = 0.0;
  double raise_alpha = 0.0;
  double reflection = 0.0;
  double max_abs() const;
};

ResidualReport check_structure_relations(JacobiParams p, int n, double z);

}  // namespace su11
