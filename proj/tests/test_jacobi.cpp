#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "su11/jacobi.hpp"
#include "su11/numerics.hpp"
#include "test_util.hpp"

using namespace su11;
using testutil::uniform;

TEST_CASE("jacobi_eval low-degree values") {
  CHECK(jacobi_eval({0.7, -0.2}, 0, 0.3) == 1.0);
  CHECK(jacobi_eval({0.0, 0.0}, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  // P_n at z=1 is (alpha+1)_n / n!
  CHECK(jacobi_eval({1.0, 0.0}, 2, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(jacobi_eval({2.5, 1.5}, 5, 1.0) ==
        doctest::Approx(pochhammer(3.5, 5) / 120.0).epsilon(1e-13));
}

TEST_CASE("jacobi_hom closed values") {
  CHECK(jacobi_hom({1.1, 0.4}, 0, 0.3, -0.8) == 1.0);
  CHECK(jacobi_hom({0.0, 0.0}, 1, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("jacobi_hom at a+b = 0 matches the Richardson limit") {
  JacobiParams p{1.5, 0.5};
  const double a = 0.7;
  auto shifted = [&](double eps) {
    double b = -0.7 + eps;
    double s = a + b;
    return s * s * s * jacobi_eval(p, 3, (a - b) / s);
  };
  double e1 = 1e-5, e2 = 1e-6;
  double oracle = (e1 * shifted(e2) - e2 * shifted(e1)) / (e1 - e2);
  CHECK(std::abs(jacobi_hom(p, 3, a, -0.7) - oracle) <= 1e-8);
}

TEST_CASE("jacobi_hom agrees with the scaled direct evaluation") {
  std::mt19937_64 rng(2001);
  for (int trial = 0; trial < 100; ++trial) {
    JacobiParams p{uniform(rng, -0.9, 3.0), uniform(rng, -0.9, 3.0)};
    int n = static_cast<int>(uniform(rng, 0.0, 11.0));
    double a = uniform(rng, 0.2, 2.0);
    double b = uniform(rng, -1.0, 1.0);
    if (std::abs(a + b) <= 0.1) continue;
    double ref = std::pow(a + b, n) * jacobi_eval(p, n, (a - b) / (a + b));
    double got = jacobi_hom(p, n, a, b);
    // Scale by the magnitude of the homogeneous terms; the sum itself can
    // cancel well below that when (a-b)/(a+b) sits near a polynomial zero.
    HomJacobi h = make_hom_jacobi(p, n);
    double scale = 0.0;
    for (int k = 0; k <= n; ++k)
      scale += std::abs(h.coeff[static_cast<size_t>(k)]) * std::pow(std::abs(b), k) *
               std::pow(a, n - k);
    CHECK(std::abs(got - ref) <= 1e-12 * std::max(scale, 1e-3));
  }
}

TEST_CASE("jacobi_norm values") {
  CHECK(jacobi_norm({0.0, 0.0}, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(jacobi_norm({0.0, 0.0}, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  JacobiParams p{1.2, 0.3};
  auto rule = gauss_jacobi_rule(p.alpha, p.beta, 8);
  KahanSum q;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double v = jacobi_eval(p, 4, rule.nodes[i]);
    q.add(rule.weights[i] * v * v);
  }
  CHECK(jacobi_norm(p, 4) == doctest::Approx(q.result()).epsilon(1e-12));
}

TEST_CASE("jacobi orthogonality under its own quadrature") {
  std::mt19937_64 rng(2002);
  for (int draw = 0; draw < 5; ++draw) {
    JacobiParams p{uniform(rng, -0.9, 3.0), uniform(rng, -0.9, 3.0)};
    for (int n = 0; n <= 8; ++n) {
      for (int m = 0; m <= n; ++m) {
        int nodes = (n + m + 1) / 2 + 2;
        auto rule = gauss_jacobi_rule(p.alpha, p.beta, nodes);
        KahanSum s;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
          s.add(rule.weights[i] * jacobi_eval(p, n, rule.nodes[i]) *
                jacobi_eval(p, m, rule.nodes[i]));
        }
        double hn = jacobi_norm(p, n);
        double hm = jacobi_norm(p, m);
        double expect = (n == m) ? hn : 0.0;
        CHECK(std::abs(s.result() - expect) <= 1e-11 * std::max(hn, hm));
      }
    }
  }
}

TEST_CASE("analytic derivative against central differences") {
  std::mt19937_64 rng(2003);
  const double h = 1e-5;
  for (int trial = 0; trial < 60; ++trial) {
    JacobiParams p{uniform(rng, -0.9, 3.0), uniform(rng, -0.9, 3.0)};
    int n = static_cast<int>(uniform(rng, 0.0, 9.0));
    double z = uniform(rng, -0.8, 0.8);
    double fd = (jacobi_eval(p, n, z + h) - jacobi_eval(p, n, z - h)) / (2.0 * h);
    double an = jacobi_deriv(p, n, z);
    // Truncation scale: the exact third derivative via the shift ladder.
    double ab = p.alpha + p.beta;
    double d3 = 0.0;
    if (n >= 3) {
      d3 = (n + ab + 1.0) * (n + ab + 2.0) * (n + ab + 3.0) / 8.0 *
           jacobi_eval({p.alpha + 3.0, p.beta + 3.0}, n - 3, z);
    }
    double bound = 10.0 * h * h * (1.0 + std::abs(d3)) +
                   1e-10 * (1.0 + std::abs(jacobi_eval(p, n, z)));
    CHECK(std::abs(fd - an) <= bound);
  }
}

TEST_CASE("structure relations at fixed points") {
  auto r1 = check_structure_relations({0.0, 0.0}, 1, 0.3);
  CHECK(r1.max_abs() <= 1e-13);

  auto r2 = check_structure_relations({2.5, -0.5}, 6, -0.9);
  CHECK(r2.max_abs() <= 1e-11);

  auto r3 = check_structure_relations({1.0, 1.0}, 3, 0.0);
  CHECK(r3.reflection <= 1e-16);
}

TEST_CASE("structure relations over random draws") {
  std::mt19937_64 rng(2004);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    JacobiParams p{uniform(rng, -0.9, 3.0), uniform(rng, -0.9, 3.0)};
    int n = static_cast<int>(uniform(rng, 0.0, 9.0));
    double z = uniform(rng, -0.8, 0.8);
    auto rep = check_structure_relations(p, n, z);
    worst = std::max(worst, rep.max_abs());
  }
  CHECK(worst <= 1e-11);
}
