#include "su11/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "su11/wavefunctions.hpp"

namespace su11 {
namespace {

// Square root of a product of ratios; a zero numerator wins over anything
// in the denominator, so boundary terms die before any division happens.
double sqrt_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
  double p = 1.0;
  for (double f : num) {
    if (f == 0.0) return 0.0;
    p *= f;
  }
  for (double f : den) p /= f;
  return std::sqrt(std::max(p, 0.0));
}

constexpr double kMargin = 0.05;

void require_interior(const SpherePoint& point) {
  if (point.min_coord() < kMargin)
    throw std::domain_error("point too close to a coordinate hyperplane");
}

// Raising operator assembled from values of an already-applied inner
// operator at the three stencil points of the (i, j) plane.
double raise_from_samples(double gp, double gm, double g0, const SpherePoint& point, int i,
                          int j, double ai, double aj, double h) {
  const double rot = (gp - gm) / (2.0 * h);
  const double si = point.at(i), sj = point.at(j);
  return 0.5 * rot + (si / (2.0 * sj)) * (aj + 0.5) * g0 - (sj / (2.0 * si)) * (ai + 0.5) * g0;
}

}  // namespace

double apply_ladder_fd(const LadderOp& op, const WaveLabel& label, const SpherePoint& point,
                       double h) {
  if (!(h >= 1e-5 && h <= 1e-2))
    throw std::invalid_argument("step must lie in [1e-5, 1e-2]");
  require_interior(point);
  const int i = op.family == LadderFamily::A ? 1 : 3;
  const int j = i + 1;
  const double fp = eval_wave(label, point.rotated(i, j, h));
  const double fm = eval_wave(label, point.rotated(i, j, -h));
  const double rot = (fp - fm) / (2.0 * h);
  const double dsign = op.direction == LadderDirection::Plus ? 1.0 : -1.0;
  const double si = point.at(i), sj = point.at(j);
  const double f0 = eval_wave(label, point);
  return dsign * 0.5 * rot + (si / (2.0 * sj)) * (op.aj + 0.5) * f0 -
         (sj / (2.0 * si)) * (op.ai + 0.5) * f0;
}

LadderExpansion expansion_coeffs_A_minus(const AlphaQuad& alphas, int x, int y, int N) {
  if (x < 0 || y < 0 || x + y > N)
    throw std::invalid_argument("pair (x, y) must sit inside the level triangle");
  const double s13 = alphas.pair(1, 3);
  const double s24 = alphas.pair(2, 4);
  const double tot = alphas.total();
  const double c1 = sqrt_ratio({x + alphas.at(1) + 1, x + s13 + 1, y + alphas.at(2) + 1,
                                y + s24 + 1, static_cast<double>(N - x - y),
                                N + x + y + tot + 3},
                               {2 * x + s13 + 1, 2 * x + s13 + 2, 2 * y + s24 + 1,
                                2 * y + s24 + 2});
  const double c2 =
      sqrt_ratio({static_cast<double>(x), x + alphas.at(3), y + alphas.at(2) + 1, y + s24 + 1,
                  N - x + y + s24 + 2, N + x - y + s13 + 1},
                 {2 * x + s13, 2 * x + s13 + 1, 2 * y + s24 + 1, 2 * y + s24 + 2});
  const double c3 =
      sqrt_ratio({x + alphas.at(1) + 1, x + s13 + 1, static_cast<double>(y), y + alphas.at(4),
                  N + x - y + s13 + 2, N - x + y + s24 + 1},
                 {2 * x + s13 + 1, 2 * x + s13 + 2, 2 * y + s24, 2 * y + s24 + 1});
  const double c4 = sqrt_ratio({static_cast<double>(x), x + alphas.at(3),
                                static_cast<double>(y), y + alphas.at(4), N - x - y + 1.0,
                                N + x + y + tot + 2},
                               {2 * x + s13, 2 * x + s13 + 1, 2 * y + s24, 2 * y + s24 + 1});

  LadderExpansion out{alphas.shifted(1, 2, 1.0), N - 1, {}};
  const auto fill = [&](int k, int tx, int ty, int sign, double coeff) {
    out.terms.at(k) = {tx, ty, sign, coeff,
                       tx >= 0 && ty >= 0 && tx + ty <= out.level};
  };
  fill(0, x, y, 1, c1);
  fill(1, x - 1, y, 1, c2);
  fill(2, x, y - 1, -1, c3);
  fill(3, x - 1, y - 1, -1, c4);
  return out;
}

LadderExpansion expansion_coeffs_A_plus(const AlphaQuad& alphas, int x, int y, int N) {
  if (x < 0 || y < 0 || x + y > N)
    throw std::invalid_argument("pair (x, y) must sit inside the level triangle");
  const double s13 = alphas.pair(1, 3);
  const double s24 = alphas.pair(2, 4);
  const double tot = alphas.total();
  const double d1 = sqrt_ratio({x + alphas.at(1), x + s13, y + alphas.at(2), y + s24,
                                static_cast<double>(N - x - y + 1), N + x + y + tot + 2},
                               {2 * x + s13, 2 * x + s13 + 1, 2 * y + s24, 2 * y + s24 + 1});
  const double d2 =
      sqrt_ratio({static_cast<double>(x + 1), x + alphas.at(3) + 1, y + alphas.at(2), y + s24,
                  N - x + y + s24 + 1, N + x - y + s13 + 2},
                 {2 * x + s13 + 1, 2 * x + s13 + 2, 2 * y + s24, 2 * y + s24 + 1});
  const double d3 =
      sqrt_ratio({x + alphas.at(1), x + s13, static_cast<double>(y + 1), y + alphas.at(4) + 1,
                  N + x - y + s13 + 1, N - x + y + s24 + 2},
                 {2 * x + s13, 2 * x + s13 + 1, 2 * y + s24 + 1, 2 * y + s24 + 2});
  const double d4 = sqrt_ratio({static_cast<double>(x + 1), x + alphas.at(3) + 1,
                                static_cast<double>(y + 1), y + alphas.at(4) + 1,
                                static_cast<double>(N - x - y), N + x + y + tot + 3},
                               {2 * x + s13 + 1, 2 * x + s13 + 2, 2 * y + s24 + 1,
                                2 * y + s24 + 2});

  LadderExpansion out{alphas.shifted(1, 2, -1.0), N + 1, {}};
  const auto fill = [&](int k, int tx, int ty, int sign, double coeff) {
    out.terms.at(k) = {tx, ty, sign, coeff,
                       tx >= 0 && ty >= 0 && tx + ty <= out.level};
  };
  fill(0, x, y, 1, d1);
  fill(1, x + 1, y, 1, d2);
  fill(2, x, y + 1, -1, d3);
  fill(3, x + 1, y + 1, -1, d4);
  return out;
}

double factorization_check(const AlphaQuad& alphas, const WaveLabel& label,
                           const SpherePoint& point) {
  for (int i = 1; i <= 4; ++i)
    if (alphas.at(i) != label.alphas.at(i))
      throw std::invalid_argument("operator parameters must match the state family");
  require_interior(point);
  const double h = 1e-3;
  const double f0 = eval_wave(label, point);

  double worst = 0.0;
  for (LadderFamily fam : {LadderFamily::A, LadderFamily::B}) {
    const int i = fam == LadderFamily::A ? 1 : 3;
    const int j = i + 1;
    const double ai = alphas.at(i), aj = alphas.at(j);
    const LadderOp lower{fam, LadderDirection::Minus, ai, aj};
    const double gp = apply_ladder_fd(lower, label, point.rotated(i, j, h), h);
    const double gm = apply_ladder_fd(lower, label, point.rotated(i, j, -h), h);
    const double g0 = apply_ladder_fd(lower, label, point, h);
    const double lhs = raise_from_samples(gp, gm, g0, point, i, j, ai, aj, h);

    const CasimirKind kind = fam == LadderFamily::A ? CasimirKind::Q12 : CasimirKind::Q34;
    const double half = alphas.pair(i, j) / 2.0;
    const double rhs = apply_casimir_fd(kind, label, point, h) - half * (half + 1.0) * f0;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace su11
