#include "su11/wavefunctions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "su11/numerics.hpp"

namespace su11 {

namespace {

void check_index(int i) {
  if (i < 1 || i > 4) throw std::invalid_argument("coordinate index must be in 1..4");
}

}  // namespace

AlphaQuad::AlphaQuad(double a1, double a2, double a3, double a4) : v_{a1, a2, a3, a4} {
  for (double a : v_) {
    if (!(a > -1.0)) throw std::invalid_argument("each parameter must exceed -1");
  }
}

double AlphaQuad::at(int i) const {
  check_index(i);
  return v_[i - 1];
}

double AlphaQuad::pair(int i, int j) const { return at(i) + at(j); }

double AlphaQuad::total() const { return v_[0] + v_[1] + v_[2] + v_[3]; }

double AlphaQuad::strength(int i) const {
  double a = at(i);
  return a * a - 0.25;
}

double AlphaQuad::rep_weight(int i) const { return (at(i) + 1.0) / 2.0; }

AlphaQuad AlphaQuad::swapped(int i, int j) const {
  check_index(i);
  check_index(j);
  std::array<double, 4> w = v_;
  std::swap(w[i - 1], w[j - 1]);
  return AlphaQuad(w[0], w[1], w[2], w[3]);
}

AlphaQuad AlphaQuad::shifted(int i, int j, double d) const {
  check_index(i);
  check_index(j);
  std::array<double, 4> w = v_;
  w[i - 1] += d;
  w[j - 1] += d;
  return AlphaQuad(w[0], w[1], w[2], w[3]);
}

SpherePoint::SpherePoint(const std::array<double, 4>& s) : s_(s) {
  double r2 = 0.0;
  for (double c : s_) {
    if (!(c >= 0.0)) throw std::invalid_argument("octant coordinates must be nonnegative");
    r2 += c * c;
  }
  if (std::abs(r2 - 1.0) > 1e-12) throw std::invalid_argument("coordinates must lie on the unit sphere");
}

SpherePoint::SpherePoint(const std::array<double, 4>& s, Unchecked) : s_(s) {}

SpherePoint SpherePoint::normalized(std::array<double, 4> raw) {
  double r2 = 0.0;
  for (double c : raw) {
    if (!(c >= 0.0)) throw std::invalid_argument("octant coordinates must be nonnegative");
    r2 += c * c;
  }
  if (!(r2 > 0.0)) throw std::invalid_argument("cannot normalize the zero vector");
  double r = std::sqrt(r2);
  for (double& c : raw) c /= r;
  return SpherePoint(raw, Unchecked{});
}

SpherePoint SpherePoint::from_angles(double theta, double phi1, double phi2) {
  std::array<double, 4> s = {std::cos(theta) * std::cos(phi1), std::cos(theta) * std::sin(phi1),
                             std::sin(theta) * std::cos(phi2), std::sin(theta) * std::sin(phi2)};
  return SpherePoint(s);
}

double SpherePoint::at(int i) const {
  check_index(i);
  return s_[i - 1];
}

double SpherePoint::min_coord() const {
  double m = s_[0];
  for (double c : s_) m = std::min(m, c);
  return m;
}

std::array<double, 4> SpherePoint::squares() const {
  return {s_[0] * s_[0], s_[1] * s_[1], s_[2] * s_[2], s_[3] * s_[3]};
}

SpherePoint SpherePoint::rotated(int i, int j, double h) const {
  check_index(i);
  check_index(j);
  if (i == j) throw std::invalid_argument("rotation plane needs two distinct axes");
  double c = std::cos(h), sn = std::sin(h);
  std::array<double, 4> r = s_;
  r[i - 1] = s_[i - 1] * c - s_[j - 1] * sn;
  r[j - 1] = s_[j - 1] * c + s_[i - 1] * sn;
  return SpherePoint(r, Unchecked{});
}

WaveLabel::WaveLabel(Scheme scheme_, const AlphaQuad& alphas_, int q1_, int q2_, int N_)
    : scheme(scheme_), alphas(alphas_), q1(q1_), q2(q2_), N(N_) {
  if (q1 < 0 || q2 < 0 || N < 0 || q1 + q2 > N)
    throw std::invalid_argument("quantum numbers must be nonnegative with q1+q2 <= N");
}

double eta_log(double alpha, double beta, int n) {
  if (!(alpha > -1.0) || !(beta > -1.0)) throw std::domain_error("parameters must exceed -1");
  if (n < 0) throw std::domain_error("degree must be nonnegative");
  return 0.5 * ((alpha + beta + 2.0) * std::numbers::ln2 - jacobi_norm_log({alpha, beta}, n));
}

double eta(double alpha, double beta, int n) { return std::exp(eta_log(alpha, beta, n)); }

WavePoly::WavePoly(const WaveLabel& label) {
  const AlphaQuad& al = label.alphas;
  psi_ = label.scheme == Scheme::Psi;
  int p = label.N - label.q1 - label.q2;
  deg3_ = p;
  if (psi_) {
    int m = label.q1, n = label.q2;
    h1_ = make_hom_jacobi({al.at(2), al.at(1)}, m);
    h2_ = make_hom_jacobi({al.at(4), al.at(3)}, n);
    p3_ = {2 * n + al.pair(3, 4) + 1.0, 2 * m + al.pair(1, 2) + 1.0};
    norm_ = eta(al.at(2), al.at(1), m) * eta(al.at(4), al.at(3), n) *
            eta(p3_.alpha, p3_.beta, p);
  } else {
    int x = label.q1, y = label.q2;
    h1_ = make_hom_jacobi({al.at(3), al.at(1)}, x);
    h2_ = make_hom_jacobi({al.at(4), al.at(2)}, y);
    p3_ = {2 * y + al.pair(2, 4) + 1.0, 2 * x + al.pair(1, 3) + 1.0};
    norm_ = eta(al.at(3), al.at(1), x) * eta(al.at(4), al.at(2), y) *
            eta(p3_.alpha, p3_.beta, p);
  }
}

double WavePoly::operator()(const std::array<double, 4>& q) const {
  double f1, f2, z;
  if (psi_) {
    f1 = h1_.eval(q[0], q[1]);
    f2 = h2_.eval(q[2], q[3]);
    z = q[0] + q[1] - q[2] - q[3];
  } else {
    f1 = h1_.eval(q[0], q[2]);
    f2 = h2_.eval(q[1], q[3]);
    z = q[0] + q[2] - q[1] - q[3];
  }
  return norm_ * f1 * f2 * jacobi_eval(p3_, deg3_, z);
}

double wave_poly(const WaveLabel& label, const std::array<double, 4>& s_sq) {
  return WavePoly(label)(s_sq);
}

double eval_wave(const WaveLabel& label, const SpherePoint& point) {
  double pre = 1.0;
  for (int i = 1; i <= 4; ++i) pre *= std::pow(point.at(i), label.alphas.at(i) + 0.5);
  return pre * wave_poly(label, point.squares());
}

GramReport check_orthonormality(Scheme scheme, const AlphaQuad& alphas, int N,
                                int nodes_per_dim) {
  if (N < 0) throw std::domain_error("level must be nonnegative");
  if (nodes_per_dim < N + 2) throw std::domain_error("need at least N+2 nodes per dimension");

  // Chart weights: z pairs the two coupled blocks, w1/w2 live inside them.
  QuadRule rz, rw1, rw2;
  if (scheme == Scheme::Psi) {
    rz = gauss_jacobi_rule(alphas.pair(3, 4) + 1.0, alphas.pair(1, 2) + 1.0, nodes_per_dim);
    rw1 = gauss_jacobi_rule(alphas.at(2), alphas.at(1), nodes_per_dim);
    rw2 = gauss_jacobi_rule(alphas.at(4), alphas.at(3), nodes_per_dim);
  } else {
    rz = gauss_jacobi_rule(alphas.pair(2, 4) + 1.0, alphas.pair(1, 3) + 1.0, nodes_per_dim);
    rw1 = gauss_jacobi_rule(alphas.at(3), alphas.at(1), nodes_per_dim);
    rw2 = gauss_jacobi_rule(alphas.at(4), alphas.at(2), nodes_per_dim);
  }

  std::vector<WaveLabel> labels;
  for (int q1 = 0; q1 <= N; ++q1)
    for (int q2 = 0; q2 + q1 <= N; ++q2) labels.emplace_back(scheme, alphas, q1, q2, N);
  int dim = static_cast<int>(labels.size());

  int n = nodes_per_dim;
  int total = n * n * n;
  std::vector<double> wprod(static_cast<size_t>(total));
  std::vector<std::array<double, 4>> sq(static_cast<size_t>(total));
  int idx = 0;
  for (int iz = 0; iz < n; ++iz) {
    double z = rz.nodes[iz];
    double zp = (1.0 + z) / 4.0, zm = (1.0 - z) / 4.0;
    for (int i1 = 0; i1 < n; ++i1) {
      double w1 = rw1.nodes[i1];
      double a = zp * (1.0 + w1), b = zp * (1.0 - w1);
      double wz1 = rz.weights[iz] * rw1.weights[i1];
      for (int i2 = 0; i2 < n; ++i2, ++idx) {
        double w2 = rw2.nodes[i2];
        double c = zm * (1.0 + w2), d = zm * (1.0 - w2);
        // s1^2, s2^2, s3^2, s4^2 in this chart
        if (scheme == Scheme::Psi)
          sq[idx] = {a, b, c, d};
        else
          sq[idx] = {a, c, b, d};
        wprod[idx] = wz1 * rw2.weights[i2];
      }
    }
  }

  std::vector<std::vector<double>> vals(labels.size());
  for (size_t b = 0; b < labels.size(); ++b) {
    WavePoly poly(labels[b]);
    vals[b].resize(static_cast<size_t>(total));
    for (int k = 0; k < total; ++k) vals[b][static_cast<size_t>(k)] = poly(sq[static_cast<size_t>(k)]);
  }

  double cnorm = std::exp2(-(2.0 * alphas.total() + 8.0));
  GramReport report;
  report.dim = dim;
  for (size_t b = 0; b < labels.size(); ++b) {
    for (size_t b2 = b; b2 < labels.size(); ++b2) {
      KahanSum acc;
      for (int k = 0; k < total; ++k)
        acc.add(wprod[static_cast<size_t>(k)] * vals[b][static_cast<size_t>(k)] *
                vals[b2][static_cast<size_t>(k)]);
      double g = cnorm * acc.result();
      double dev = std::abs(g - (b == b2 ? 1.0 : 0.0));
      report.max_dev = std::max(report.max_dev, dev);
    }
  }
  return report;
}

double casimir_eigenvalue(CasimirKind which, const WaveLabel& label) {
  const AlphaQuad& al = label.alphas;
  auto lam = [](double c) { return c * (c + 1.0); };
  switch (which) {
    case CasimirKind::Qtotal:
      return (label.N + al.total() / 2.0 + 1.0) * (label.N + al.total() / 2.0 + 2.0);
    case CasimirKind::Q12:
      if (label.scheme == Scheme::Psi) return lam(label.q1 + al.pair(1, 2) / 2.0);
      break;
    case CasimirKind::Q34:
      if (label.scheme == Scheme::Psi) return lam(label.q2 + al.pair(3, 4) / 2.0);
      break;
    case CasimirKind::Q13:
      if (label.scheme == Scheme::Xi) return lam(label.q1 + al.pair(1, 3) / 2.0);
      break;
    case CasimirKind::Q24:
      if (label.scheme == Scheme::Xi) return lam(label.q2 + al.pair(2, 4) / 2.0);
      break;
  }
  throw std::invalid_argument("operator is not diagonal on this basis");
}

double apply_casimir_fd(CasimirKind which, const WaveLabel& label, const SpherePoint& point,
                        double h, double margin) {
  if (!(h >= 1e-5 && h <= 1e-2)) throw std::invalid_argument("step must lie in [1e-5, 1e-2]");
  if (!(margin > 0.0)) throw std::invalid_argument("margin must be positive");
  if (point.min_coord() < margin)
    throw std::domain_error("point too close to a coordinate hyperplane");

  WavePoly poly(label);
  const AlphaQuad& al = label.alphas;
  auto feval = [&](const SpherePoint& p) {
    double pre = 1.0;
    for (int i = 1; i <= 4; ++i) pre *= std::pow(p.at(i), al.at(i) + 0.5);
    return pre * poly(p.squares());
  };

  double f0 = feval(point);
  auto j2 = [&](int i, int j) {
    double fp = feval(point.rotated(i, j, h));
    double fm = feval(point.rotated(i, j, -h));
    return -(fp - 2.0 * f0 + fm) / (h * h);
  };

  std::array<double, 4> sq = point.squares();
  auto a = [&](int i) { return al.strength(i); };

  auto pair_casimir = [&](int i, int j) {
    double pot = a(i) * sq[j - 1] / sq[i - 1] + a(j) * sq[i - 1] / sq[j - 1] + a(i) + a(j) - 1.0;
    return 0.25 * (j2(i, j) + pot * f0);
  };

  switch (which) {
    case CasimirKind::Q12:
      return pair_casimir(1, 2);
    case CasimirKind::Q34:
      return pair_casimir(3, 4);
    case CasimirKind::Q13:
      return pair_casimir(1, 3);
    case CasimirKind::Q24:
      return pair_casimir(2, 4);
    case CasimirKind::Qtotal: {
      double rot = 0.0;
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) rot += j2(i, j);
      double pot = 0.0;
      for (int i = 1; i <= 4; ++i) pot += a(i) / sq[i - 1];
      return 0.25 * (rot + pot * f0);
    }
  }
  throw std::invalid_argument("unknown operator");
}

}  // namespace su11
