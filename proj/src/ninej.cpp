#include "su11/ninej.hpp"

#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "su11/numerics.hpp"

namespace su11 {

namespace {

// Product of the numerator factors over the denominator factors, with every
// numerator zero taken before any division so 0/0 corners resolve to 0.
double ratio_guarded(std::initializer_list<double> num, std::initializer_list<double> den) {
  double p = 1.0;
  for (double f : num) {
    if (f == 0.0) return 0.0;
    p *= f;
  }
  for (double f : den) p /= f;
  return p;
}

// Rounding can push an exactly-zero radicand slightly negative; the true
// value is a ratio of sign-paired factors and never is.
double sqrt_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
  return std::sqrt(std::max(ratio_guarded(num, den), 0.0));
}

double sqrt_clamped(double radicand) { return std::sqrt(std::max(radicand, 0.0)); }

// sqrt of u(u+a_i)(u+a_j)(u+a_i+a_j) over the balanced run of 2u+a_i+a_j
// shifts; vanishes at u = 0, which silences every coefficient that would
// reach outside the level triangle.
double pair_weight(const AlphaQuad& a, int i, int j, int u) {
  double s = a.pair(i, j);
  return sqrt_ratio({double(u), u + a.at(i), u + a.at(j), u + s},
                    {2 * u + s - 1.0, 2 * u + s, 2 * u + s, 2 * u + s + 1.0});
}

double ipow(double b, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

int parity_sign(int e) { return ((e % 2) + 2) % 2 == 0 ? 1 : -1; }

}  // namespace

NinejIndex::NinejIndex(const AlphaQuad& alphas_, int m_, int n_, int x_, int y_, int N_)
    : alphas(alphas_), m(m_), n(n_), x(x_), y(y_), N(N_) {
  if (m < 0 || n < 0 || x < 0 || y < 0 || N < 0 || m + n > N || x + y > N)
    throw std::invalid_argument("quantum numbers must be nonnegative with m+n <= N and x+y <= N");
}

int level_dim(int N) { return (N + 1) * (N + 2) / 2; }

int level_rank(int q1, int q2, int N) {
  if (q1 < 0 || q2 < 0 || q1 + q2 > N) throw std::invalid_argument("pair outside the level triangle");
  return q1 * (N + 1) - q1 * (q1 - 1) / 2 + q2;
}

double NinejMatrix::at(int m, int n, int x, int y) const {
  size_t T = static_cast<size_t>(level_dim(N));
  return entries[static_cast<size_t>(level_rank(m, n, N)) * T +
                 static_cast<size_t>(level_rank(x, y, N))];
}

double ninej_oracle_triple(const NinejIndex& idx, int nodes_per_dim) {
  int N = idx.N;
  if (nodes_per_dim < N + 2) throw std::domain_error("need at least N+2 nodes per dimension");
  const AlphaQuad& al = idx.alphas;
  QuadRule rz = gauss_jacobi_rule(al.pair(3, 4) + 1.0, al.pair(1, 2) + 1.0, nodes_per_dim);
  QuadRule rw1 = gauss_jacobi_rule(al.at(2), al.at(1), nodes_per_dim);
  QuadRule rw2 = gauss_jacobi_rule(al.at(4), al.at(3), nodes_per_dim);

  WavePoly row{WaveLabel(Scheme::Psi, al, idx.m, idx.n, N)};
  WavePoly col{WaveLabel(Scheme::Xi, al, idx.x, idx.y, N)};

  KahanSum acc;
  int k = nodes_per_dim;
  for (int iz = 0; iz < k; ++iz) {
    double z = rz.nodes[iz];
    double zp = (1.0 + z) / 4.0, zm = (1.0 - z) / 4.0;
    for (int i1 = 0; i1 < k; ++i1) {
      double w1 = rw1.nodes[i1];
      double s1 = zp * (1.0 + w1), s2 = zp * (1.0 - w1);
      double wz1 = rz.weights[iz] * rw1.weights[i1];
      for (int i2 = 0; i2 < k; ++i2) {
        double w2 = rw2.nodes[i2];
        std::array<double, 4> sq = {s1, s2, zm * (1.0 + w2), zm * (1.0 - w2)};
        acc.add(wz1 * rw2.weights[i2] * row(sq) * col(sq));
      }
    }
  }
  return std::exp2(-(2.0 * al.total() + 8.0)) * acc.result();
}

double ninej_oracle_triple(const NinejIndex& idx) {
  return ninej_oracle_triple(idx, 2 * idx.N + 4);
}

ReductionConstants reduction_constants(const NinejIndex& idx) {
  const AlphaQuad& al = idx.alphas;
  int N = idx.N;
  int pm = N - idx.m - idx.n;
  SignedLog c{eta_log(al.at(2), al.at(1), idx.m) + eta_log(al.at(4), al.at(3), idx.n) +
                  eta_log(2 * idx.n + al.pair(3, 4) + 1.0, 2 * idx.m + al.pair(1, 2) + 1.0, pm) -
                  log_gamma(pm + 1.0),
              parity_sign(idx.n)};
  c = c * pochhammer_log(N + idx.m + idx.n + al.total() + 3.0, pm);

  int px = N - idx.x - idx.y;
  SignedLog d{eta_log(al.at(3), al.at(1), idx.x) + eta_log(al.at(4), al.at(2), idx.y) +
                  eta_log(2 * idx.y + al.pair(2, 4) + 1.0, 2 * idx.x + al.pair(1, 3) + 1.0, px) -
                  log_gamma(px + 1.0),
              parity_sign(idx.y)};
  d = d * pochhammer_log(N + idx.x + idx.y + al.total() + 3.0, px);

  return {c.value(), d.value()};
}

double ninej_double_integral(const NinejIndex& idx, int nodes_u, int nodes_v) {
  const AlphaQuad& al = idx.alphas;
  int N = idx.N;
  int min_u = (N + idx.x + 1) / 2 + 2;
  int min_v = (N + idx.y + 1) / 2 + 2;
  if (nodes_u < min_u || nodes_v < min_v)
    throw std::domain_error("quadrature rule too small for the kernel degree");

  QuadRule ru = gauss_jacobi_rule(al.at(3), al.at(1), nodes_u);
  QuadRule rv = gauss_jacobi_rule(al.at(4), al.at(2), nodes_v);
  HomJacobi km = make_hom_jacobi({al.at(2), al.at(1)}, idx.m);
  HomJacobi kn = make_hom_jacobi({al.at(4), al.at(3)}, idx.n);
  JacobiParams pu{al.at(3), al.at(1)}, pv{al.at(4), al.at(2)};
  int pw = N - idx.m - idx.n;
  double nsign = parity_sign(idx.n);

  KahanSum acc;
  for (int i = 0; i < nodes_u; ++i) {
    double u = ru.nodes[i];
    double fu = ru.weights[i] * jacobi_eval(pu, idx.x, u);
    for (int j = 0; j < nodes_v; ++j) {
      double v = rv.nodes[j];
      double ker = km.eval(u + 1.0, -(v + 1.0)) * kn.eval(1.0 - u, v - 1.0) * ipow(u - v, pw);
      acc.add(fu * rv.weights[j] * jacobi_eval(pv, idx.y, v) * ker);
    }
  }

  ReductionConstants rc = reduction_constants(idx);
  double pref = (rc.c / rc.d) * std::exp2(double(-N)) /
                (jacobi_norm(pu, idx.x) * jacobi_norm(pv, idx.y));
  return pref * nsign * acc.result();
}

double ninej_double_integral(const NinejIndex& idx) {
  return ninej_double_integral(idx, (idx.N + idx.x + 1) / 2 + 2, (idx.N + idx.y + 1) / 2 + 2);
}

double vacuum_9j(const AlphaQuad& alphas, int x, int y, int N, bool* degenerate) {
  if (x < 0 || y < 0 || N < 0 || x + y > N)
    throw std::invalid_argument("quantum numbers must be nonnegative with x+y <= N");
  if (degenerate) *degenerate = false;
  double a1 = alphas.at(1), a2 = alphas.at(2), a3 = alphas.at(3), a4 = alphas.at(4);
  double s13 = a1 + a3, s24 = a2 + a4, tot = alphas.total();
  int p = N - x - y;

  // The second lower series parameter -(N-x+a4) can in principle collide
  // with a non-positive integer inside the terminating range; the value is
  // still finite there, so take the average over a small split of a4.
  double nearest = std::round(a4);
  if (std::abs(a4 - nearest) < 1e-9) {
    int t = N - x + int(std::lround(a4));
    if (t >= 0 && t < p) {
      if (degenerate) *degenerate = true;
      return 0.5 * (vacuum_9j(AlphaQuad(a1, a2, a3, a4 + 1e-7), x, y, N) +
                    vacuum_9j(AlphaQuad(a1, a2, a3, a4 - 1e-7), x, y, N));
    }
  }

  // Everything under the square root, kept in log space. The Pochhammer
  // ratios sharing a base are cancelled analytically first; what remains is
  // strictly positive for admissible parameters.
  SignedLog g{log_gamma(N + 1.0) - log_gamma(x + 1.0) - log_gamma(y + 1.0) - log_gamma(p + 1.0),
              1};
  g = g * pochhammer_log(a1 + 1.0, x);
  g = g * pochhammer_log(a2 + 1.0, y);
  g = g * pochhammer_log(a3 + 1.0, x);
  g = g * pochhammer_log(a4 + 1.0, y);
  g = g * pochhammer_log(N + tot + 3.0, x + y);
  g = g / pochhammer_log(a1 + a2 + 2.0, N);
  g = g / pochhammer_log(a3 + a4 + 2.0, N);
  g = g / pochhammer_log(s13 + 1.0 + x, x);
  g = g * pochhammer_log(s13 + 2.0 + 2 * x, p);
  g = g / pochhammer_log(s24 + 1.0 + y, y);
  g = g / pochhammer_log(s24 + 2.0 + 2 * y, p);
  if (g.sign <= 0) throw std::domain_error("radicand left the positive region");

  std::array<double, 3> up = {double(-p), -(N - x + y + a2 + a4 + 1.0), x + a3 + 1.0};
  std::array<double, 2> lo = {-(N - x + a4), 2.0 * x + a1 + a3 + 2.0};
  double series = hyp_pfq_terminating(up, lo, 1.0);

  return std::exp(0.5 * g.log_abs) * pochhammer(y + a4 + 1.0, p) * series;
}

namespace {

// Dense value table over one level triangle; reads outside come back zero.
struct LevelTable {
  int lvl = 0;
  std::vector<double> v;
  explicit LevelTable(int l) : lvl(l), v(static_cast<size_t>(level_dim(l)), 0.0) {}
  double get(int x, int y) const {
    if (x < 0 || y < 0 || x + y > lvl) return 0.0;
    return v[static_cast<size_t>(level_rank(x, y, lvl))];
  }
  void set(int x, int y, double t) { v[static_cast<size_t>(level_rank(x, y, lvl))] = t; }
};

// The four weights tying a level to the one below it when the first row
// index drops by one; the second-index version is the same family with the
// two column pairs exchanged.
std::array<double, 4> descent_weights(const AlphaQuad& a, int x, int y, int K) {
  double a1 = a.at(1), a2 = a.at(2), a3 = a.at(3), a4 = a.at(4);
  double s13 = a.pair(1, 3), s24 = a.pair(2, 4), tot = a.total();
  double c1 = sqrt_ratio({x + a1 + 1.0, x + s13 + 1.0, y + a2 + 1.0, y + s24 + 1.0,
                          double(K - x - y), K + x + y + tot + 3.0},
                         {2 * x + s13 + 1.0, 2 * x + s13 + 2.0, 2 * y + s24 + 1.0,
                          2 * y + s24 + 2.0});
  double c2 = sqrt_ratio({double(x), x + a3, y + a2 + 1.0, y + s24 + 1.0,
                          K - x + y + s24 + 2.0, K + x - y + s13 + 1.0},
                         {2 * x + s13, 2 * x + s13 + 1.0, 2 * y + s24 + 1.0, 2 * y + s24 + 2.0});
  double c3 = sqrt_ratio({x + a1 + 1.0, x + s13 + 1.0, double(y), y + a4,
                          K + x - y + s13 + 2.0, K - x + y + s24 + 1.0},
                         {2 * x + s13 + 1.0, 2 * x + s13 + 2.0, 2 * y + s24, 2 * y + s24 + 1.0});
  double c4 = sqrt_ratio({double(x), x + a3, double(y), y + a4, K - x - y + 1.0,
                          K + x + y + tot + 2.0},
                         {2 * x + s13, 2 * x + s13 + 1.0, 2 * y + s24, 2 * y + s24 + 1.0});
  return {c1, c2, c3, c4};
}

// Full (x,y) table of one coefficient row by the descent chain. Each loop
// step rebuilds a complete level table, so every column shares the work.
LevelTable contiguity_row_table(const AlphaQuad& alphas, int m, int n, int N) {
  AlphaQuad bottom = alphas.shifted(1, 2, m).shifted(3, 4, n);
  LevelTable cur(N - m - n);
  for (int x = 0; x <= cur.lvl; ++x)
    for (int y = 0; x + y <= cur.lvl; ++y) cur.set(x, y, vacuum_9j(bottom, x, y, cur.lvl));

  for (int k = 1; k <= n; ++k) {
    AlphaQuad par = alphas.shifted(1, 2, m).shifted(3, 4, n - k);
    int K = N - m - (n - k);
    double denom = std::sqrt(k * (k + par.pair(3, 4) + 1.0));
    AlphaQuad sw = par.swapped(1, 3).swapped(2, 4);
    LevelTable nxt(K);
    for (int x = 0; x <= K; ++x)
      for (int y = 0; x + y <= K; ++y) {
        std::array<double, 4> c = descent_weights(sw, x, y, K);
        double s = c[0] * cur.get(x, y) - c[1] * cur.get(x - 1, y) +
                   c[2] * cur.get(x, y - 1) - c[3] * cur.get(x - 1, y - 1);
        nxt.set(x, y, s / denom);
      }
    cur = std::move(nxt);
  }

  for (int j = 1; j <= m; ++j) {
    AlphaQuad par = alphas.shifted(1, 2, m - j);
    int K = N - (m - j);
    double denom = std::sqrt(j * (j + par.pair(1, 2) + 1.0));
    LevelTable nxt(K);
    for (int x = 0; x <= K; ++x)
      for (int y = 0; x + y <= K; ++y) {
        std::array<double, 4> c = descent_weights(par, x, y, K);
        double s = c[0] * cur.get(x, y) + c[1] * cur.get(x - 1, y) -
                   c[2] * cur.get(x, y - 1) - c[3] * cur.get(x - 1, y - 1);
        nxt.set(x, y, s / denom);
      }
    cur = std::move(nxt);
  }
  return cur;
}

}  // namespace

double ninej_contiguity(const NinejIndex& idx) {
  return contiguity_row_table(idx.alphas, idx.m, idx.n, idx.N).get(idx.x, idx.y);
}

std::pair<NinejIndex, int> apply_symmetry(const NinejIndex& idx, NinejSymmetry which) {
  const AlphaQuad& al = idx.alphas;
  switch (which) {
    case NinejSymmetry::Duality:
      return {NinejIndex(al.swapped(2, 3), idx.x, idx.y, idx.m, idx.n, idx.N), 1};
    case NinejSymmetry::SwapColumns:
      return {NinejIndex(al.swapped(1, 2).swapped(3, 4), idx.m, idx.n, idx.y, idx.x, idx.N),
              parity_sign(idx.N + idx.m + idx.n - idx.x - idx.y)};
    case NinejSymmetry::SwapRows:
      return {NinejIndex(al.swapped(1, 3).swapped(2, 4), idx.n, idx.m, idx.x, idx.y, idx.N),
              parity_sign(idx.N + idx.x + idx.y - idx.m - idx.n)};
  }
  throw std::invalid_argument("unknown symmetry");
}

NinejMatrix build_matrix(const AlphaQuad& alphas, int N, NinejMethod method) {
  if (N < 0) throw std::invalid_argument("level must be nonnegative");
  size_t T = static_cast<size_t>(level_dim(N));
  NinejMatrix out{alphas, N, std::vector<double>(T * T, 0.0), 0.0, 0.0};

  if (method == NinejMethod::Vacuum)
    throw std::invalid_argument("the ground-row pipeline cannot fill a full matrix");

  if (method == NinejMethod::Oracle) {
    int k = 2 * N + 4;
    QuadRule rz = gauss_jacobi_rule(alphas.pair(3, 4) + 1.0, alphas.pair(1, 2) + 1.0, k);
    QuadRule rw1 = gauss_jacobi_rule(alphas.at(2), alphas.at(1), k);
    QuadRule rw2 = gauss_jacobi_rule(alphas.at(4), alphas.at(3), k);

    size_t total = static_cast<size_t>(k) * k * k;
    std::vector<double> wprod(total);
    std::vector<std::array<double, 4>> sq(total);
    size_t at = 0;
    for (int iz = 0; iz < k; ++iz) {
      double z = rz.nodes[iz];
      double zp = (1.0 + z) / 4.0, zm = (1.0 - z) / 4.0;
      for (int i1 = 0; i1 < k; ++i1) {
        double w1 = rw1.nodes[i1];
        double s1 = zp * (1.0 + w1), s2 = zp * (1.0 - w1);
        double wz1 = rz.weights[iz] * rw1.weights[i1];
        for (int i2 = 0; i2 < k; ++i2, ++at) {
          double w2 = rw2.nodes[i2];
          sq[at] = {s1, s2, zm * (1.0 + w2), zm * (1.0 - w2)};
          wprod[at] = wz1 * rw2.weights[i2];
        }
      }
    }

    auto sample = [&](Scheme scheme) {
      std::vector<std::vector<double>> vals;
      vals.reserve(T);
      for (int q1 = 0; q1 <= N; ++q1)
        for (int q2 = 0; q1 + q2 <= N; ++q2) {
          WavePoly poly{WaveLabel(scheme, alphas, q1, q2, N)};
          std::vector<double> v(total);
          for (size_t i = 0; i < total; ++i) v[i] = poly(sq[i]);
          vals.push_back(std::move(v));
        }
      return vals;
    };
    std::vector<std::vector<double>> rows = sample(Scheme::Psi);
    std::vector<std::vector<double>> cols = sample(Scheme::Xi);

    double cnorm = std::exp2(-(2.0 * alphas.total() + 8.0));
    for (size_t r = 0; r < T; ++r)
      for (size_t c = 0; c < T; ++c) {
        KahanSum acc;
        for (size_t i = 0; i < total; ++i) acc.add(wprod[i] * rows[r][i] * cols[c][i]);
        out.entries[r * T + c] = cnorm * acc.result();
      }
  } else if (method == NinejMethod::Double) {
    for (int m = 0; m <= N; ++m)
      for (int n = 0; m + n <= N; ++n) {
        size_t r = static_cast<size_t>(level_rank(m, n, N));
        for (int x = 0; x <= N; ++x)
          for (int y = 0; x + y <= N; ++y)
            out.entries[r * T + static_cast<size_t>(level_rank(x, y, N))] =
                ninej_double_integral(NinejIndex(alphas, m, n, x, y, N));
      }
  } else {
    for (int m = 0; m <= N; ++m)
      for (int n = 0; m + n <= N; ++n) {
        size_t r = static_cast<size_t>(level_rank(m, n, N));
        LevelTable row = contiguity_row_table(alphas, m, n, N);
        for (int x = 0; x <= N; ++x)
          for (int y = 0; x + y <= N; ++y)
            out.entries[r * T + static_cast<size_t>(level_rank(x, y, N))] = row.get(x, y);
      }
  }

  for (size_t a = 0; a < T; ++a)
    for (size_t b = 0; b < T; ++b) {
      KahanSum rr, cc;
      for (size_t i = 0; i < T; ++i) {
        rr.add(out.entries[a * T + i] * out.entries[b * T + i]);
        cc.add(out.entries[i * T + a] * out.entries[i * T + b]);
      }
      double id = a == b ? 1.0 : 0.0;
      out.row_gram_dev = std::max(out.row_gram_dev, std::abs(rr.result() - id));
      out.col_gram_dev = std::max(out.col_gram_dev, std::abs(cc.result() - id));
    }
  return out;
}

double rational_R(const NinejIndex& idx) {
  double vac = vacuum_9j(idx.alphas, idx.x, idx.y, idx.N);
  if (!(std::abs(vac) > 1e-12)) throw std::domain_error("vacuum value vanishes at this point");
  return ninej_contiguity(idx) / vac;
}

double stencil_weight(StencilTerm term, const AlphaQuad& params, int u, int v, int N) {
  double a1 = params.at(1), a2 = params.at(2), a3 = params.at(3), a4 = params.at(4);
  double s13 = params.pair(1, 3), s24 = params.pair(2, 4), tot = params.total();
  switch (term) {
    case StencilTerm::MainDiag: {
      double w = pair_weight(params, 1, 3, u) * pair_weight(params, 2, 4, v);
      if (w == 0.0) return 0.0;
      return -w * sqrt_clamped((N + u + v + tot + 1.0) * (N + u + v + tot + 2.0)) *
             sqrt_clamped((N - u - v + 1.0) * (N - u - v + 2.0));
    }
    case StencilTerm::Vert: {
      double w = pair_weight(params, 2, 4, v);
      if (w == 0.0) return 0.0;
      double bracket =
          ratio_guarded({double(u), u + a3}, {2 * u + s13, 2 * u + s13 + 1.0}) +
          ratio_guarded({u + a1 + 1.0, u + s13 + 1.0}, {2 * u + s13 + 1.0, 2 * u + s13 + 2.0});
      return -w * bracket * sqrt_clamped((N + u - v + s13 + 2.0) * (N - u + v + s24 + 1.0)) *
             sqrt_clamped((N - u - v + 1.0) * (N + u + v + tot + 2.0));
    }
    case StencilTerm::Horiz: {
      double w = pair_weight(params, 1, 3, u);
      if (w == 0.0) return 0.0;
      double bracket =
          ratio_guarded({double(v), v + a4}, {2 * v + s24, 2 * v + s24 + 1.0}) +
          ratio_guarded({v + a2 + 1.0, v + s24 + 1.0}, {2 * v + s24 + 1.0, 2 * v + s24 + 2.0});
      return w * bracket * sqrt_clamped((N + u - v + s13 + 1.0) * (N - u + v + s24 + 2.0)) *
             sqrt_clamped((N - u - v + 1.0) * (N + u + v + tot + 2.0));
    }
    case StencilTerm::AntiDiag: {
      double w = pair_weight(params, 1, 3, u) * pair_weight(params, 2, 4, v);
      if (w == 0.0) return 0.0;
      return -w * sqrt_clamped((N + u - v + s13 + 1.0) * (N + u - v + s13 + 2.0) *
                               (N - u + v + s24 + 1.0) * (N - u + v + s24 + 2.0));
    }
    case StencilTerm::Center: {
      double t1 = ratio_guarded({u + a1 + 1.0, u + s13 + 1.0, double(v), v + a4,
                                 N + u - v + s13 + 2.0, N - u + v + s24 + 1.0},
                                {2 * u + s13 + 1.0, 2 * u + s13 + 2.0, 2 * v + s24,
                                 2 * v + s24 + 1.0});
      double t2 = ratio_guarded({double(u), u + a3, v + a2 + 1.0, v + s24 + 1.0,
                                 N + u - v + s13 + 1.0, N - u + v + s24 + 2.0},
                                {2 * u + s13, 2 * u + s13 + 1.0, 2 * v + s24 + 1.0,
                                 2 * v + s24 + 2.0});
      double t3 = ratio_guarded({u + a1 + 1.0, u + s13 + 1.0, v + a2 + 1.0, v + s24 + 1.0,
                                 double(N - u - v), N + u + v + tot + 3.0},
                                {2 * u + s13 + 1.0, 2 * u + s13 + 2.0, 2 * v + s24 + 1.0,
                                 2 * v + s24 + 2.0});
      double t4 = ratio_guarded({double(u), u + a3, double(v), v + a4, N - u - v + 1.0,
                                 N + u + v + tot + 2.0},
                                {2 * u + s13, 2 * u + s13 + 1.0, 2 * v + s24, 2 * v + s24 + 1.0});
      return t1 + t2 + t3 + t4;
    }
  }
  throw std::invalid_argument("unknown stencil term");
}

namespace {

double pipeline_value(const AlphaQuad& al, int N, const NinejMatrix* mat, int m, int n, int x,
                      int y) {
  if (m < 0 || n < 0 || x < 0 || y < 0 || m + n > N || x + y > N) return 0.0;
  if (mat) return mat->at(m, n, x, y);
  return ninej_oracle_triple(NinejIndex(al, m, n, x, y, N));
}

void check_matrix_matches(const NinejIndex& idx, const NinejMatrix& mat) {
  bool same = mat.N == idx.N;
  for (int i = 1; i <= 4 && same; ++i) same = mat.alphas.at(i) == idx.alphas.at(i);
  if (!same) throw std::invalid_argument("value matrix does not match the index");
}

StencilReport run_stencil(const NinejIndex& idx, const AlphaQuad& params, bool xy_side,
                          const std::array<int, 9>& signs, double lhs_factor,
                          const NinejMatrix* mat) {
  struct TermSpec {
    StencilTerm t;
    int cu, cv;  // coefficient position relative to the center
    int du, dv;  // value offset
  };
  static constexpr std::array<TermSpec, 9> kTerms = {{
      {StencilTerm::MainDiag, 0, 0, -1, -1},
      {StencilTerm::MainDiag, 1, 1, 1, 1},
      {StencilTerm::Vert, 0, 0, 0, -1},
      {StencilTerm::Vert, 0, 1, 0, 1},
      {StencilTerm::Horiz, 0, 0, -1, 0},
      {StencilTerm::Horiz, 1, 0, 1, 0},
      {StencilTerm::AntiDiag, 1, 0, 1, -1},
      {StencilTerm::AntiDiag, 0, 1, -1, 1},
      {StencilTerm::Center, 0, 0, 0, 0},
  }};

  int u0 = xy_side ? idx.x : idx.m;
  int v0 = xy_side ? idx.y : idx.n;
  auto value_at = [&](int uu, int vv) {
    int mm = xy_side ? idx.m : uu, nn = xy_side ? idx.n : vv;
    int xx = xy_side ? uu : idx.x, yy = xy_side ? vv : idx.y;
    return pipeline_value(idx.alphas, idx.N, mat, mm, nn, xx, yy);
  };

  StencilReport rep;
  double center = value_at(u0, v0);
  rep.lhs = lhs_factor * center;
  double wmax = std::abs(lhs_factor), jmax = std::abs(center);
  KahanSum rhs;
  for (size_t i = 0; i < kTerms.size(); ++i) {
    const TermSpec& ts = kTerms[i];
    int uu = u0 + ts.du, vv = v0 + ts.dv;
    if (uu < 0 || vv < 0 || uu + vv > idx.N) continue;  // basis vector absent
    double w = stencil_weight(ts.t, params, u0 + ts.cu, v0 + ts.cv, idx.N);
    double val = value_at(uu, vv);
    rhs.add(signs[i] * w * val);
    wmax = std::max(wmax, std::abs(w));
    jmax = std::max(jmax, std::abs(val));
  }
  rep.rhs = rhs.result();
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.scale = wmax * jmax;
  return rep;
}

constexpr std::array<int, 9> kAllPlus = {1, 1, 1, 1, 1, 1, 1, 1, 1};
constexpr std::array<int, 9> kMixed = {1, 1, -1, -1, -1, -1, 1, 1, 1};

StencilReport difference_impl(const NinejIndex& idx, DifferenceKind which,
                              const NinejMatrix* mat) {
  const AlphaQuad& al = idx.alphas;
  if (which == DifferenceKind::Diff1) {
    double lhs = idx.m * (idx.m + al.pair(1, 2) + 1.0);
    return run_stencil(idx, al, true, kAllPlus, lhs, mat);
  }
  double lhs = idx.n * (idx.n + al.pair(3, 4) + 1.0);
  return run_stencil(idx, al.swapped(1, 3).swapped(2, 4), true, kMixed, lhs, mat);
}

StencilReport recurrence_impl(const NinejIndex& idx, RecurrenceKind which,
                              const NinejMatrix* mat) {
  const AlphaQuad& al = idx.alphas;
  if (which == RecurrenceKind::Rec1) {
    double lhs = idx.x * (idx.x + al.pair(1, 3) + 1.0);
    return run_stencil(idx, al.swapped(2, 3), false, kAllPlus, lhs, mat);
  }
  double lhs = idx.y * (idx.y + al.pair(2, 4) + 1.0);
  AlphaQuad cycled(al.at(2), al.at(4), al.at(1), al.at(3));
  return run_stencil(idx, cycled, false, kMixed, lhs, mat);
}

}  // namespace

StencilReport difference_report(const NinejIndex& idx, DifferenceKind which) {
  return difference_impl(idx, which, nullptr);
}

StencilReport difference_report(const NinejIndex& idx, DifferenceKind which,
                                const NinejMatrix& values) {
  check_matrix_matches(idx, values);
  return difference_impl(idx, which, &values);
}

double difference_residual(const NinejIndex& idx, DifferenceKind which) {
  return difference_impl(idx, which, nullptr).residual;
}

StencilReport recurrence_report(const NinejIndex& idx, RecurrenceKind which) {
  return recurrence_impl(idx, which, nullptr);
}

StencilReport recurrence_report(const NinejIndex& idx, RecurrenceKind which,
                                const NinejMatrix& values) {
  check_matrix_matches(idx, values);
  return recurrence_impl(idx, which, &values);
}

double recurrence_residual(const NinejIndex& idx, RecurrenceKind which) {
  return recurrence_impl(idx, which, nullptr).residual;
}

}  // namespace su11
