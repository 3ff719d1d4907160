#pragma once

#include <utility>
#include <vector>

#include "su11/wavefunctions.hpp"

namespace su11 {

// Label of one recoupling coefficient: row pair (m,n), column pair (x,y),
// total level N, with both pairs inside the level triangle.
struct NinejIndex {
  NinejIndex(const AlphaQuad& alphas, int m, int n, int x, int y, int N);
  AlphaQuad alphas;
  int m, n, x, y, N;
};

// Number of pairs (q1,q2) with q1+q2 <= N.
int level_dim(int N);

// Position of (q1,q2) in the lexicographic ordering of the level triangle.
int level_rank(int q1, int q2, int N);

// Dense change-of-basis matrix at one level; rows are (m,n), columns (x,y),
// both in lexicographic order. Orthogonality deviations of the finished
// matrix are recorded both ways.
struct NinejMatrix {
  AlphaQuad alphas;
  int N = 0;
  std::vector<double> entries;  // row-major, level_dim(N) squared
  double row_gram_dev = 0.0;    // max |E E^T - I|
  double col_gram_dev = 0.0;    // max |E^T E - I|
  double at(int m, int n, int x, int y) const;
};

enum class NinejMethod { Oracle, Double, Contiguity, Vacuum };

// Overlap of the two basis functions by tensor Gauss-Jacobi quadrature in
// the chart adapted to the row scheme; exact up to rounding for
// nodes_per_dim >= N+2. This routine fixes value and sign; every other
// pipeline is checked against it.
double ninej_oracle_triple(const NinejIndex& idx, int nodes_per_dim);
double ninej_oracle_triple(const NinejIndex& idx);  // nodes_per_dim = 2N+4

// Two-variable integral representation: both radial degrees of freedom
// integrated out, leaving Jacobi weights in u and v and a bivariate kernel
// evaluated through the homogenized two-argument form.
double ninej_double_integral(const NinejIndex& idx, int nodes_u, int nodes_v);
double ninej_double_integral(const NinejIndex& idx);  // minimal exact rule

// Closed form of the (m,n) = (0,0) row: square roots of Pochhammer ratio
// groups times a terminating 3F2 at unit argument. The removable-singularity
// guard averages over a small parameter shift and reports through the flag.
double vacuum_9j(const AlphaQuad& alphas, int x, int y, int N,
                 bool* degenerate = nullptr);

// Descent chain: the first index is lowered to zero one step at a time, then
// the second, each step trading a unit of level for a unit shift of the
// corresponding parameter pair; the chain bottoms out on vacuum_9j.
double ninej_contiguity(const NinejIndex& idx);

enum class NinejSymmetry { Duality, SwapColumns, SwapRows };

// Image label and sign of one symmetry of the coefficient array.
std::pair<NinejIndex, int> apply_symmetry(const NinejIndex& idx,
                                          NinejSymmetry which);

// Full matrix at one level; method must be Oracle, Double or Contiguity.
NinejMatrix build_matrix(const AlphaQuad& alphas, int N, NinejMethod method);

// Normalization constants carrying the two schemes' radial reductions; both
// signs are explicit in the values.
struct ReductionConstants {
  double c = 0.0;  // row side, sign (-1)^n
  double d = 0.0;  // column side, sign (-1)^y
};
ReductionConstants reduction_constants(const NinejIndex& idx);

// Coefficient divided by its vacuum value; rational in (x,y). The descent
// pipeline supplies the numerator, so the ground ratio is exactly one.
double rational_R(const NinejIndex& idx);

// The nine-point identities share one family of coefficients, reused under
// four different parameter substitutions. Terms are named by their offset
// in the stencil.
enum class StencilTerm {
  MainDiag,  // (-1,-1) and (+1,+1)
  Vert,      // (0,-1) and (0,+1)
  Horiz,     // (-1,0) and (+1,0)
  AntiDiag,  // (+1,-1) and (-1,+1)
  Center,    // (0,0)
};

// Weight attached to one stencil term, evaluated at position (u,v) of the
// substituted parameter tuple. Out-of-triangle numerator zeros are taken
// before any division, so boundary entries come out as clean zeros.
double stencil_weight(StencilTerm term, const AlphaQuad& params, int u, int v,
                      int N);

enum class DifferenceKind { Diff1, Diff2 };
enum class RecurrenceKind { Rec1, Rec2 };

// One nine-point identity check with enough context to judge the residual
// against the conditioning of the stencil.
struct StencilReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs|
  double scale = 0.0;     // max |weight| times max |coefficient| used
};

// Identities in (x,y) at fixed (m,n). Values come from the oracle pipeline,
// or from a prebuilt matrix of the same alphas and level.
StencilReport difference_report(const NinejIndex& idx, DifferenceKind which);
StencilReport difference_report(const NinejIndex& idx, DifferenceKind which,
                                const NinejMatrix& values);
double difference_residual(const NinejIndex& idx, DifferenceKind which);

// Identities in (m,n) at fixed (x,y).
StencilReport recurrence_report(const NinejIndex& idx, RecurrenceKind which);
StencilReport recurrence_report(const NinejIndex& idx, RecurrenceKind which,
                                const NinejMatrix& values);
double recurrence_residual(const NinejIndex& idx, RecurrenceKind which);

}  // namespace su11
