#pragma once

#include <array>

#include "su11/wavefunctions.hpp"

namespace su11 {

enum class LadderFamily { A, B };
enum class LadderDirection { Plus, Minus };

// One raising or lowering operator together with the parameter pair it
// carries. Family A turns inside the (s1, s2) plane, family B inside
// (s3, s4); the multiplicative part is fixed by (ai, aj).
struct LadderOp {
  LadderFamily family = LadderFamily::A;
  LadderDirection direction = LadderDirection::Minus;
  double ai = 0.0;
  double aj = 0.0;
};

// Operator applied to a labeled wavefunction at one interior point: the
// plane rotation derivative by a central stencil of step h plus the exact
// multiplicative terms. Requires 1e-5 <= h <= 1e-2 and a point at least
// 0.05 away from every coordinate hyperplane.
double apply_ladder_fd(const LadderOp& op, const WaveLabel& label, const SpherePoint& point,
                       double h);

struct ExpansionTerm {
  int x = 0, y = 0;       // target pair at the new level
  int sign = 1;           // printed sign of the term
  double coeff = 0.0;     // nonnegative square-root factor
  bool in_range = false;  // target exists at the new level
};

// Four-term expansion of one ladder application over the shifted family.
// Coefficients of out-of-range targets are kept so a caller can verify
// they vanish; in_range flags them.
struct LadderExpansion {
  AlphaQuad target_alphas;
  int level = 0;
  std::array<ExpansionTerm, 4> terms;
};

// Lowering in the first pair: the operator carrying (a1, a2) sends the
// column state at (x, y, N) into the (a1+1, a2+1) family one level down,
// over targets (x,y), (x-1,y), (x,y-1), (x-1,y-1) with signs +, +, -, -.
LadderExpansion expansion_coeffs_A_minus(const AlphaQuad& alphas, int x, int y, int N);

// Raising in the first pair: the operator carrying (a1-1, a2-1) sends the
// column state into the (a1-1, a2-1) family one level up, over targets
// (x,y), (x+1,y), (x,y+1), (x+1,y+1) with signs +, +, -, -. The raised
// family must itself be admissible, so a1 and a2 have to exceed zero.
LadderExpansion expansion_coeffs_A_plus(const AlphaQuad& alphas, int x, int y, int N);

// Residual of the factorization identities on one labeled state at one
// interior point: lowering then raising compared against the pair Casimir
// minus its parameter offset, for both the (1,2) and the (3,4) pair; the
// larger absolute residual is returned. Everything is finite differences,
// so expect accuracy no better than the squared step.
double factorization_check(const AlphaQuad& alphas, const WaveLabel& label,
                           const SpherePoint& point);

}  // namespace su11
