#pragma once

#include <array>

#include "su11/jacobi.hpp"

namespace su11 {

// The four representation parameters; every derived quantity is computed on
// demand so the values can never go stale.
class AlphaQuad {
 public:
  AlphaQuad(double a1, double a2, double a3, double a4);

  double at(int i) const;                 // i in 1..4
  double pair(int i, int j) const;        // alpha_i + alpha_j
  double total() const;                   // sum of the four
  double strength(int i) const;           // alpha_i^2 - 1/4
  double rep_weight(int i) const;         // (alpha_i + 1)/2

  AlphaQuad swapped(int i, int j) const;
  AlphaQuad shifted(int i, int j, double d) const;

 private:
  std::array<double, 4> v_;
};

// Point on the closed positive octant of the unit 3-sphere.
class SpherePoint {
 public:
  explicit SpherePoint(const std::array<double, 4>& s);
  static SpherePoint normalized(std::array<double, 4> raw);
  static SpherePoint from_angles(double theta, double phi1, double phi2);

  double at(int i) const;  // i in 1..4
  double min_coord() const;
  std::array<double, 4> squares() const;

  // Rotation by angle h in the (i,j) coordinate plane; preserves the sphere.
  SpherePoint rotated(int i, int j, double h) const;

 private:
  struct Unchecked {};
  SpherePoint(const std::array<double, 4>& s, Unchecked);
  std::array<double, 4> s_;
};

enum class Scheme { Psi, Xi };  // pairs (12)(34) vs (13)(24)

struct WaveLabel {
  WaveLabel(Scheme scheme, const AlphaQuad& alphas, int q1, int q2, int N);
  Scheme scheme;
  AlphaQuad alphas;
  int q1;  // m or x
  int q2;  // n or y
  int N;
};

// Normalization factor of one separated 1-D factor; always positive.
double eta(double alpha, double beta, int n);
double eta_log(double alpha, double beta, int n);

// Everything in the wavefunction except the product of s_i^{alpha_i+1/2};
// a polynomial in the squared coordinates.
double wave_poly(const WaveLabel& label, const std::array<double, 4>& s_sq);

// Prepared form of wave_poly with hom coefficients computed once.
class WavePoly {
 public:
  explicit WavePoly(const WaveLabel& label);
  double operator()(const std::array<double, 4>& s_sq) const;

 private:
  double norm_;
  HomJacobi h1_, h2_;
  JacobiParams p3_;
  int deg3_;
  bool psi_;
};

double eval_wave(const WaveLabel& label, const SpherePoint& point);

struct GramReport {
  int dim = 0;
  double max_dev = 0.0;  // max |G - I|
};

// Gram matrix of the whole level-N basis of one scheme by tensor-product
// quadrature in that scheme's own chart; exact up to rounding for
// nodes_per_dim >= N+2.
GramReport check_orthonormality(Scheme scheme, const AlphaQuad& alphas, int N,
                                int nodes_per_dim);

enum class CasimirKind { Q12, Q34, Q13, Q24, Qtotal };

// (Q f)(s) with the angular part of each J^2 taken by a second-order
// rotation stencil and the potential terms evaluated exactly.
double apply_casimir_fd(CasimirKind which, const WaveLabel& label,
                        const SpherePoint& point, double h,
                        double margin = 0.05);

// Eigenvalue of the given operator on the basis function carrying the label.
double casimir_eigenvalue(CasimirKind which, const WaveLabel& label);

}  // namespace su11
