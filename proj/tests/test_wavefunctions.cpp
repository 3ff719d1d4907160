#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "su11/numerics.hpp"
#include "su11/wavefunctions.hpp"
#include "test_util.hpp"

using namespace su11;

namespace {

// Angular form of the first coupling scheme, separated factor by factor.
double psi_angular(const AlphaQuad& al, int m, int n, int N, double th, double p1, double p2) {
  double A = 2 * n + al.pair(3, 4) + 1.0, B = 2 * m + al.pair(1, 2) + 1.0;
  int p = N - m - n;
  double f1 = eta(al.at(2), al.at(1), m) * std::pow(std::cos(p1), al.at(1) + 0.5) *
              std::pow(std::sin(p1), al.at(2) + 0.5) *
              jacobi_eval({al.at(2), al.at(1)}, m, std::cos(2 * p1));
  double f2 = eta(al.at(4), al.at(3), n) * std::pow(std::cos(p2), al.at(3) + 0.5) *
              std::pow(std::sin(p2), al.at(4) + 0.5) *
              jacobi_eval({al.at(4), al.at(3)}, n, std::cos(2 * p2));
  double f3 = eta(A, B, p) * std::pow(std::cos(th), B) * std::pow(std::sin(th), A) *
              jacobi_eval({A, B}, p, std::cos(2 * th));
  return f1 * f2 * f3;
}

// Angular form of the second scheme in its own chart.
double xi_angular(const AlphaQuad& al, int x, int y, int N, double th, double p1, double p2) {
  double A = 2 * y + al.pair(2, 4) + 1.0, B = 2 * x + al.pair(1, 3) + 1.0;
  int p = N - x - y;
  double f1 = eta(al.at(3), al.at(1), x) * std::pow(std::cos(p1), al.at(1) + 0.5) *
              std::pow(std::sin(p1), al.at(3) + 0.5) *
              jacobi_eval({al.at(3), al.at(1)}, x, std::cos(2 * p1));
  double f2 = eta(al.at(4), al.at(2), y) * std::pow(std::cos(p2), al.at(2) + 0.5) *
              std::pow(std::sin(p2), al.at(4) + 0.5) *
              jacobi_eval({al.at(4), al.at(2)}, y, std::cos(2 * p2));
  double f3 = eta(A, B, p) * std::pow(std::cos(th), B) * std::pow(std::sin(th), A) *
              jacobi_eval({A, B}, p, std::cos(2 * th));
  return f1 * f2 * f3;
}

SpherePoint xi_point(double th, double p1, double p2) {
  return SpherePoint({std::cos(th) * std::cos(p1), std::sin(th) * std::cos(p2),
                      std::cos(th) * std::sin(p1), std::sin(th) * std::sin(p2)});
}

}  // namespace

TEST_CASE("parameter and point validation") {
  CHECK_THROWS_AS(AlphaQuad(-1.2, 0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(AlphaQuad(0.0, 0.0, -1.0, 0.0), std::invalid_argument);

  AlphaQuad al(0.5, -0.25, 2.0, 1.5);
  CHECK(al.at(3) == doctest::Approx(2.0));
  CHECK(al.pair(1, 2) == doctest::Approx(0.25));
  CHECK(al.total() == doctest::Approx(3.75));
  CHECK(al.strength(1) == doctest::Approx(0.0));
  CHECK(al.strength(3) == doctest::Approx(3.75));
  CHECK(al.rep_weight(4) == doctest::Approx(1.25));
  CHECK(al.swapped(2, 3).at(2) == doctest::Approx(2.0));
  CHECK(al.shifted(1, 2, 1.0).at(1) == doctest::Approx(1.5));
  CHECK(al.shifted(1, 2, 1.0).at(4) == doctest::Approx(1.5));

  CHECK_THROWS_AS(SpherePoint({0.5, 0.5, 0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(SpherePoint({-0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
  CHECK_NOTHROW(SpherePoint({0.5, 0.5, 0.5, 0.5}));

  SpherePoint p = SpherePoint::normalized({1.0, 2.0, 3.0, 4.0});
  double r2 = 0.0;
  for (int i = 1; i <= 4; ++i) r2 += p.at(i) * p.at(i);
  CHECK(r2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.min_coord() == doctest::Approx(1.0 / std::sqrt(30.0)));

  SpherePoint q = SpherePoint::from_angles(0.7, 0.3, 1.1);
  double q2 = 0.0;
  for (int i = 1; i <= 4; ++i) q2 += q.at(i) * q.at(i);
  CHECK(q2 == doctest::Approx(1.0).epsilon(1e-15));

  SpherePoint r = q.rotated(1, 3, 0.4);
  double rr = 0.0;
  for (int i = 1; i <= 4; ++i) rr += r.at(i) * r.at(i);
  CHECK(rr == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.at(2) == doctest::Approx(q.at(2)));

  CHECK_THROWS_AS(WaveLabel(Scheme::Psi, al, 2, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(WaveLabel(Scheme::Psi, al, -1, 0, 3), std::invalid_argument);
  CHECK_NOTHROW(WaveLabel(Scheme::Xi, al, 2, 1, 3));
}

TEST_CASE("single-factor normalization constants") {
  CHECK(eta(0.0, 0.0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // Closed form at (1,0,0): 4 * integral of cos(phi) sin^3(phi) over the
  // quarter period equals 1, so the constant is 2.
  CHECK(eta(1.0, 0.0, 0) == doctest::Approx(2.0).epsilon(1e-14));

  // The squared factor integrates to 1 against the quarter-circle measure;
  // in the z = cos(2*phi) variable that is a plain weighted Jacobi moment.
  auto normalization_residual = [](double a, double b, int n) {
    QuadRule rule = gauss_jacobi_rule(a, b, n + 2);
    KahanSum acc;
    for (size_t k = 0; k < rule.nodes.size(); ++k) {
      double pv = jacobi_eval({a, b}, n, rule.nodes[k]);
      acc.add(rule.weights[k] * pv * pv);
    }
    double e = eta(a, b, n);
    return std::abs(e * e * std::exp2(-(a + b + 2.0)) * acc.result() - 1.0);
  };
  CHECK(normalization_residual(0.5, 1.5, 3) < 1e-12);

  std::mt19937_64 rng(3001);
  for (int trial = 0; trial < 50; ++trial) {
    double a = testutil::uniform(rng, -0.9, 4.0);
    double b = testutil::uniform(rng, -0.9, 4.0);
    int n = static_cast<int>(rng() % 9);
    CHECK(eta(a, b, n) > 0.0);
    CHECK(normalization_residual(a, b, n) < 1e-12);
  }

  CHECK_THROWS_AS(eta(-1.5, 0.0, 2), std::domain_error);
  CHECK_THROWS_AS(eta(0.0, 0.0, -1), std::domain_error);
}

TEST_CASE("bottom level reduces to the pure power form") {
  std::mt19937_64 rng(3002);
  for (int trial = 0; trial < 30; ++trial) {
    AlphaQuad al = testutil::random_alphas(rng);
    SpherePoint p = testutil::random_interior_point(rng);
    double e0 = eta(al.at(2), al.at(1), 0) * eta(al.at(4), al.at(3), 0) *
                eta(al.pair(3, 4) + 1.0, al.pair(1, 2) + 1.0, 0);
    double pre = 1.0;
    for (int i = 1; i <= 4; ++i) pre *= std::pow(p.at(i), al.at(i) + 0.5);
    double want = e0 * pre;

    double psi = eval_wave(WaveLabel(Scheme::Psi, al, 0, 0, 0), p);
    double xi = eval_wave(WaveLabel(Scheme::Xi, al, 0, 0, 0), p);
    CHECK(psi == doctest::Approx(want).epsilon(1e-13));
    // Both couplings share the same bottom state.
    CHECK(xi == doctest::Approx(psi).epsilon(1e-13));
  }
}

TEST_CASE("cartesian and angular charts agree") {
  AlphaQuad half(0.5, 0.5, 0.5, 0.5);
  double th = std::numbers::pi / 4.0;
  double direct = psi_angular(half, 1, 0, 2, th, th, th);
  double cart = eval_wave(WaveLabel(Scheme::Psi, half, 1, 0, 2), SpherePoint::from_angles(th, th, th));
  CHECK(cart == doctest::Approx(direct).epsilon(1e-13));

  std::mt19937_64 rng(3003);
  for (int trial = 0; trial < 50; ++trial) {
    AlphaQuad al = testutil::random_alphas(rng);
    double t = testutil::uniform(rng, 0.2, std::numbers::pi / 2.0 - 0.2);
    double p1 = testutil::uniform(rng, 0.2, std::numbers::pi / 2.0 - 0.2);
    double p2 = testutil::uniform(rng, 0.2, std::numbers::pi / 2.0 - 0.2);
    int N = static_cast<int>(rng() % 5);
    int m = static_cast<int>(rng() % (N + 1));
    int n = static_cast<int>(rng() % (N - m + 1));

    double a = psi_angular(al, m, n, N, t, p1, p2);
    double b = eval_wave(WaveLabel(Scheme::Psi, al, m, n, N), SpherePoint::from_angles(t, p1, p2));
    CHECK(b == doctest::Approx(a).epsilon(1e-12));

    double c = xi_angular(al, m, n, N, t, p1, p2);
    double d = eval_wave(WaveLabel(Scheme::Xi, al, m, n, N), xi_point(t, p1, p2));
    CHECK(d == doctest::Approx(c).epsilon(1e-12));
  }
}

TEST_CASE("second scheme is the first with middle labels exchanged") {
  std::mt19937_64 rng(3004);
  for (int trial = 0; trial < 30; ++trial) {
    AlphaQuad al = testutil::random_alphas(rng);
    SpherePoint p = testutil::random_interior_point(rng);
    int N = static_cast<int>(rng() % 4);
    int x = static_cast<int>(rng() % (N + 1));
    int y = static_cast<int>(rng() % (N - x + 1));

    SpherePoint swapped({p.at(1), p.at(3), p.at(2), p.at(4)});
    double lhs = eval_wave(WaveLabel(Scheme::Xi, al, x, y, N), p);
    double rhs = eval_wave(WaveLabel(Scheme::Psi, al.swapped(2, 3), x, y, N), swapped);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("basis orthonormality under tensor quadrature") {
  std::mt19937_64 rng(3005);
  AlphaQuad al0 = testutil::random_alphas(rng);
  GramReport r0 = check_orthonormality(Scheme::Psi, al0, 0, 2);
  CHECK(r0.dim == 1);
  CHECK(r0.max_dev < 1e-12);

  GramReport r1 = check_orthonormality(Scheme::Psi, AlphaQuad(0.5, 0.5, 0.5, 0.5), 3, 6);
  CHECK(r1.dim == 10);
  CHECK(r1.max_dev < 1e-11);

  GramReport r2 = check_orthonormality(Scheme::Xi, AlphaQuad(1.3, -0.4, 2.1, 0.2), 4, 8);
  CHECK(r2.dim == 15);
  CHECK(r2.max_dev < 1e-10);

  for (int trial = 0; trial < 3; ++trial) {
    AlphaQuad al = testutil::random_alphas(rng);
    for (int N = 1; N <= 4; ++N) {
      CHECK(check_orthonormality(Scheme::Psi, al, N, N + 2).max_dev < 1e-10);
      CHECK(check_orthonormality(Scheme::Xi, al, N, N + 2).max_dev < 1e-10);
    }
  }

  CHECK_THROWS_AS(check_orthonormality(Scheme::Psi, al0, 3, 4), std::domain_error);
}

TEST_CASE("stencil operators reproduce the spectra") {
  AlphaQuad half(0.5, 0.5, 0.5, 0.5);
  SpherePoint mid({0.5, 0.5, 0.5, 0.5});

  WaveLabel ground(Scheme::Psi, half, 0, 0, 0);
  double f = eval_wave(ground, mid);
  double q12 = apply_casimir_fd(CasimirKind::Q12, ground, mid, 1e-3);
  CHECK(q12 / f == doctest::Approx(casimir_eigenvalue(CasimirKind::Q12, ground)).epsilon(1e-5));
  double qt = apply_casimir_fd(CasimirKind::Qtotal, ground, mid, 1e-3);
  CHECK(qt / f == doctest::Approx(casimir_eigenvalue(CasimirKind::Qtotal, ground)).epsilon(1e-5));
  CHECK(casimir_eigenvalue(CasimirKind::Qtotal, ground) == doctest::Approx(6.0));

  WaveLabel excited(Scheme::Xi, half, 1, 0, 1);
  std::mt19937_64 rng0(3006);
  SpherePoint pt = testutil::random_interior_point(rng0);
  double g = eval_wave(excited, pt);
  double q13 = apply_casimir_fd(CasimirKind::Q13, excited, pt, 1e-3);
  CHECK(q13 / g == doctest::Approx(casimir_eigenvalue(CasimirKind::Q13, excited)).epsilon(1e-5));
  CHECK(casimir_eigenvalue(CasimirKind::Q13, excited) == doctest::Approx(3.75));

  std::mt19937_64 rng(3007);
  for (int trial = 0; trial < 2; ++trial) {
    AlphaQuad al = testutil::random_alphas(rng);
    for (int N = 0; N <= 3; ++N) {
      for (int a = 0; a <= N; ++a) {
        for (int b = 0; a + b <= N; ++b) {
          WaveLabel lp(Scheme::Psi, al, a, b, N);
          WaveLabel lx(Scheme::Xi, al, a, b, N);
          for (int k = 0; k < 6; ++k) {
            SpherePoint p = testutil::random_interior_point(rng);
            double fp = eval_wave(lp, p);
            double fx = eval_wave(lx, p);
            CHECK(apply_casimir_fd(CasimirKind::Q12, lp, p, 1e-4) / fp ==
                  doctest::Approx(casimir_eigenvalue(CasimirKind::Q12, lp)).epsilon(1e-4));
            CHECK(apply_casimir_fd(CasimirKind::Q34, lp, p, 1e-4) / fp ==
                  doctest::Approx(casimir_eigenvalue(CasimirKind::Q34, lp)).epsilon(1e-4));
            CHECK(apply_casimir_fd(CasimirKind::Qtotal, lp, p, 1e-4) / fp ==
                  doctest::Approx(casimir_eigenvalue(CasimirKind::Qtotal, lp)).epsilon(1e-4));
            CHECK(apply_casimir_fd(CasimirKind::Q13, lx, p, 1e-4) / fx ==
                  doctest::Approx(casimir_eigenvalue(CasimirKind::Q13, lx)).epsilon(1e-4));
            CHECK(apply_casimir_fd(CasimirKind::Q24, lx, p, 1e-4) / fx ==
                  doctest::Approx(casimir_eigenvalue(CasimirKind::Q24, lx)).epsilon(1e-4));
          }
        }
      }
    }
  }

  WaveLabel lbl(Scheme::Psi, half, 0, 0, 1);
  CHECK_THROWS_AS(apply_casimir_fd(CasimirKind::Q12, lbl, mid, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(apply_casimir_fd(CasimirKind::Q12, lbl, mid, 0.5), std::invalid_argument);
  SpherePoint edge = SpherePoint::normalized({0.01, 1.0, 1.0, 1.0});
  CHECK_THROWS_AS(apply_casimir_fd(CasimirKind::Q12, lbl, edge, 1e-3), std::domain_error);
  CHECK_THROWS_AS(casimir_eigenvalue(CasimirKind::Q13, lbl), std::invalid_argument);
}
