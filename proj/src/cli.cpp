#include "su11/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "su11/jacobi.hpp"
#include "su11/ladder.hpp"
#include "su11/ninej.hpp"
#include "su11/wavefunctions.hpp"

namespace su11 {
namespace {

using ojson = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* method_name(NinejMethod m) {
  switch (m) {
    case NinejMethod::Oracle: return "oracle";
    case NinejMethod::Double: return "double";
    case NinejMethod::Contiguity: return "contiguity";
    case NinejMethod::Vacuum: return "vacuum";
  }
  return "?";
}

ojson alphas_json(const AlphaQuad& a) {
  return ojson::array({a.at(1), a.at(2), a.at(3), a.at(4)});
}

// Sweep draws: uniform on (-0.9, 3.0) per component, away from the
// integrability boundary.
AlphaQuad draw_alphas(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-0.9, 3.0);
  double a1 = u(g), a2 = u(g), a3 = u(g), a4 = u(g);
  return AlphaQuad(a1, a2, a3, a4);
}

SpherePoint draw_interior(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (;;) {
    std::array<double, 4> s{u(g), u(g), u(g), u(g)};
    double r = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3]);
    for (double& c : s) c /= r;
    SpherePoint p(s);
    if (p.min_coord() >= 0.15) return p;
  }
}

}  // namespace

int cmd_ninej(const RunConfig& cfg, std::ostream& out) {
  if (cfg.N < 0 || !cfg.m || !cfg.n || !cfg.x || !cfg.y)
    throw std::invalid_argument("a full index is required: --N --m --n --x --y");
  NinejIndex idx(cfg.alphas, *cfg.m, *cfg.n, *cfg.x, *cfg.y, cfg.N);

  const auto t0 = std::chrono::steady_clock::now();
  double value = 0.0;
  int nodes_used = 0;
  switch (cfg.method) {
    case NinejMethod::Oracle: {
      nodes_used = cfg.nodes.value_or(2 * cfg.N + 4);
      value = ninej_oracle_triple(idx, nodes_used);
      break;
    }
    case NinejMethod::Double: {
      int nu = cfg.nodes.value_or((cfg.N + idx.x + 1) / 2 + 2);
      int nv = cfg.nodes.value_or((cfg.N + idx.y + 1) / 2 + 2);
      value = ninej_double_integral(idx, nu, nv);
      nodes_used = std::max(nu, nv);
      break;
    }
    case NinejMethod::Contiguity:
      value = ninej_contiguity(idx);
      break;
    case NinejMethod::Vacuum:
      if (idx.m != 0 || idx.n != 0)
        throw std::domain_error("the closed form covers only m = n = 0");
      value = vacuum_9j(cfg.alphas, idx.x, idx.y, cfg.N);
      break;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  switch (cfg.format) {
    case OutFormat::Json: {
      ojson j;
      j["schema_version"] = 1;
      j["index"] = {{"alphas", alphas_json(idx.alphas)}, {"m", idx.m}, {"n", idx.n},
                    {"x", idx.x},                        {"y", idx.y}, {"N", idx.N}};
      j["method"] = method_name(cfg.method);
      j["value"] = value;
      j["nodes_used"] = nodes_used;
      j["elapsed"] = elapsed;
      out << j.dump(2) << '\n';
      break;
    }
    case OutFormat::Csv:
      out << "m,n,x,y,value\n"
          << idx.m << ',' << idx.n << ',' << idx.x << ',' << idx.y << ',' << fmt17(value)
          << '\n';
      break;
    case OutFormat::Text:
      out << "index  m=" << idx.m << " n=" << idx.n << " x=" << idx.x << " y=" << idx.y
          << " N=" << idx.N << '\n'
          << "method " << method_name(cfg.method) << '\n'
          << "value  " << fmt17(value) << '\n'
          << "nodes  " << nodes_used << '\n'
          << "elapsed " << elapsed << " s\n";
      break;
  }
  return 0;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  if (cfg.N < 0) throw std::invalid_argument("--N is required");
  NinejMatrix mat = build_matrix(cfg.alphas, cfg.N, cfg.method);

  switch (cfg.format) {
    case OutFormat::Csv:
      out << "m,n,x,y,value\n";
      for (int m = 0; m <= cfg.N; ++m)
        for (int n = 0; m + n <= cfg.N; ++n)
          for (int x = 0; x <= cfg.N; ++x)
            for (int y = 0; x + y <= cfg.N; ++y)
              out << m << ',' << n << ',' << x << ',' << y << ','
                  << fmt17(mat.at(m, n, x, y)) << '\n';
      break;
    case OutFormat::Json: {
      ojson rows = ojson::array();
      for (int m = 0; m <= cfg.N; ++m)
        for (int n = 0; m + n <= cfg.N; ++n) {
          ojson row = ojson::array();
          for (int x = 0; x <= cfg.N; ++x)
            for (int y = 0; x + y <= cfg.N; ++y) row.push_back(mat.at(m, n, x, y));
          rows.push_back(std::move(row));
        }
      ojson j;
      j["schema_version"] = 1;
      j["alphas"] = alphas_json(cfg.alphas);
      j["N"] = cfg.N;
      j["method"] = method_name(cfg.method);
      j["entries"] = std::move(rows);
      j["metadata"] = {{"gram_row_dev", mat.row_gram_dev}, {"gram_col_dev", mat.col_gram_dev}};
      out << j.dump(2) << '\n';
      break;
    }
    case OutFormat::Text: {
      out << "level " << cfg.N << ", dim " << level_dim(cfg.N) << ", method "
          << method_name(cfg.method) << '\n';
      for (int m = 0; m <= cfg.N; ++m)
        for (int n = 0; m + n <= cfg.N; ++n) {
          for (int x = 0; x <= cfg.N; ++x)
            for (int y = 0; x + y <= cfg.N; ++y) out << ' ' << fmt17(mat.at(m, n, x, y));
          out << '\n';
        }
      out << "gram deviations " << fmt17(mat.row_gram_dev) << ' ' << fmt17(mat.col_gram_dev)
          << '\n';
      break;
    }
  }
  return 0;
}

namespace {

struct FamilyRow {
  const char* family;
  double factor;    // threshold = tol * factor
  double residual;  // worst case seen
};

// Index with both pairs inside the level triangle.
NinejIndex draw_index(std::mt19937_64& g, const AlphaQuad& al, int N) {
  std::uniform_int_distribution<int> u(0, N);
  int m, n, x, y;
  do {
    m = u(g);
    n = u(g);
  } while (m + n > N);
  do {
    x = u(g);
    y = u(g);
  } while (x + y > N);
  return NinejIndex(al, m, n, x, y, N);
}

double closure_residual(const LadderOp& op, const WaveLabel& src, const LadderExpansion& ex,
                        const SpherePoint& p) {
  double lhs = apply_ladder_fd(op, src, p, 1e-4);
  double scale = std::max(std::abs(lhs), std::abs(eval_wave(src, p)));
  double rhs = 0.0;
  for (const auto& term : ex.terms) {
    if (!term.in_range) continue;
    WaveLabel lbl(Scheme::Xi, ex.target_alphas, term.x, term.y, ex.level);
    double v = term.sign * term.coeff * eval_wave(lbl, p);
    rhs += v;
    scale = std::max(scale, std::abs(v));
  }
  return std::abs(lhs - rhs) / std::max(scale, 1e-12);
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  constexpr int kDraws = 5;
  constexpr int kMaxLevel = 4;

  std::vector<AlphaQuad> sweep;
  {
    std::mt19937_64 g(cfg.seed);
    for (int i = 0; i < kDraws; ++i) sweep.push_back(draw_alphas(g));
  }

  // Oracle matrices shared by the orthogonality and stencil families.
  std::vector<std::vector<NinejMatrix>> mats;
  for (const AlphaQuad& al : sweep) {
    std::vector<NinejMatrix> per_level;
    for (int N = 0; N <= kMaxLevel; ++N)
      per_level.push_back(build_matrix(al, N, NinejMethod::Oracle));
    mats.push_back(std::move(per_level));
  }

  FamilyRow rows[] = {
      {"orthogonality", 1e-2, 0.0}, {"duality", 1e-3, 0.0}, {"column_row_swap", 1e-3, 0.0},
      {"diff1", 1e-1, 0.0},         {"diff2", 1e-1, 0.0},   {"rec1", 1e-1, 0.0},
      {"rec2", 1e-1, 0.0},          {"lowering_expansion", 1e2, 0.0},
      {"raising_expansion", 1e2, 0.0},
      {"factorization", 1e4, 0.0},  {"jacobi_structure", 1e-4, 0.0}};

  // orthogonality
  for (const auto& per_level : mats)
    for (const NinejMatrix& mat : per_level)
      rows[0].residual =
          std::max({rows[0].residual, mat.row_gram_dev, mat.col_gram_dev});

  // duality and the two swaps, each mapped value against a fresh oracle call
  {
    std::mt19937_64 g(cfg.seed + 2);
    for (int d = 0; d < kDraws; ++d) {
      const int N = 3;
      for (int rep = 0; rep < 2; ++rep) {
        NinejIndex idx = draw_index(g, sweep[d], N);
        double val = mats[d][N].at(idx.m, idx.n, idx.x, idx.y);
        for (NinejSymmetry map : {NinejSymmetry::Duality, NinejSymmetry::SwapColumns,
                                  NinejSymmetry::SwapRows}) {
          auto [mapped, sign] = apply_symmetry(idx, map);
          double r = std::abs(val - sign * ninej_oracle_triple(mapped));
          FamilyRow& row = map == NinejSymmetry::Duality ? rows[1] : rows[2];
          row.residual = std::max(row.residual, r);
        }
      }
    }
  }

  // nine-point identities on the shared matrices, residual over stencil scale
  {
    const auto ratio = [](const StencilReport& r) {
      if (r.scale > 0.0) return r.residual / r.scale;
      return r.residual == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    for (int d = 0; d < kDraws; ++d)
      for (int N = 0; N <= kMaxLevel; ++N)
        for (int m = 0; m <= N; ++m)
          for (int n = 0; m + n <= N; ++n)
            for (int x = 0; x <= N; ++x)
              for (int y = 0; x + y <= N; ++y) {
                NinejIndex idx(sweep[d], m, n, x, y, N);
                const NinejMatrix& mat = mats[d][N];
                rows[3].residual = std::max(
                    rows[3].residual, ratio(difference_report(idx, DifferenceKind::Diff1, mat)));
                rows[4].residual = std::max(
                    rows[4].residual, ratio(difference_report(idx, DifferenceKind::Diff2, mat)));
                rows[5].residual = std::max(
                    rows[5].residual, ratio(recurrence_report(idx, RecurrenceKind::Rec1, mat)));
                rows[6].residual = std::max(
                    rows[6].residual, ratio(recurrence_report(idx, RecurrenceKind::Rec2, mat)));
              }
  }

  // four-term expansions, lowering then raising
  {
    std::mt19937_64 g(cfg.seed + 8);
    for (const AlphaQuad& al : sweep) {
      AlphaQuad raised_ok(std::abs(al.at(1)) + 0.1, std::abs(al.at(2)) + 0.1, al.at(3),
                          al.at(4));
      for (int N = 0; N <= 2; ++N)
        for (int x = 0; x <= N; ++x)
          for (int y = 0; x + y <= N; ++y) {
            LadderOp down{LadderFamily::A, LadderDirection::Minus, al.at(1), al.at(2)};
            WaveLabel src_b(Scheme::Xi, al, x, y, N);
            LadderExpansion exd = expansion_coeffs_A_minus(al, x, y, N);
            LadderOp up{LadderFamily::A, LadderDirection::Plus, raised_ok.at(1) - 1.0,
                        raised_ok.at(2) - 1.0};
            WaveLabel src_c(Scheme::Xi, raised_ok, x, y, N);
            LadderExpansion exu = expansion_coeffs_A_plus(raised_ok, x, y, N);
            for (int t = 0; t < 3; ++t) {
              SpherePoint p = draw_interior(g);
              rows[7].residual =
                  std::max(rows[7].residual, closure_residual(down, src_b, exd, p));
              rows[8].residual =
                  std::max(rows[8].residual, closure_residual(up, src_c, exu, p));
            }
          }
    }
  }

  // lower-then-raise against the pair Casimirs; points near a node of the
  // wavefunction are skipped because a relative reading is empty there
  {
    std::mt19937_64 g(cfg.seed + 10);
    constexpr std::array<std::array<int, 2>, 5> kStates{{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}}};
    for (const AlphaQuad& al : sweep)
      for (const auto& mn : kStates) {
        int m = mn[0], n = mn[1], N = m + n;
        WaveLabel lbl(Scheme::Psi, al, m, n, N);
        std::array<SpherePoint, 4> pts{draw_interior(g), draw_interior(g), draw_interior(g),
                                       draw_interior(g)};
        double amp = 0.0;
        for (const auto& p : pts) amp = std::max(amp, std::abs(eval_wave(lbl, p)));
        double lam = std::max({1.0, m * (m + al.pair(1, 2) + 1.0),
                               n * (n + al.pair(3, 4) + 1.0)});
        for (const auto& p : pts) {
          double f0 = std::abs(eval_wave(lbl, p));
          if (f0 < 0.3 * amp) continue;
          rows[9].residual =
              std::max(rows[9].residual, factorization_check(al, lbl, p) / (lam * f0));
        }
      }
  }

  // polynomial structure relations
  {
    std::mt19937_64 g(cfg.seed + 11);
    std::uniform_real_distribution<double> ab(-0.9, 3.0), z(-0.95, 0.95);
    std::uniform_int_distribution<int> deg(0, 8);
    for (int t = 0; t < 100; ++t) {
      JacobiParams p{ab(g), ab(g)};
      rows[10].residual =
          std::max(rows[10].residual, check_structure_relations(p, deg(g), z(g)).max_abs());
    }
  }

  int failures = 0;
  for (const FamilyRow& row : rows)
    if (!(row.residual <= cfg.tol * row.factor)) ++failures;

  switch (cfg.format) {
    case OutFormat::Json: {
      ojson report = ojson::array();
      for (const FamilyRow& row : rows) {
        double threshold = cfg.tol * row.factor;
        report.push_back({{"family", row.family},
                          {"factor", row.factor},
                          {"threshold", threshold},
                          {"max_residual", row.residual},
                          {"pass", row.residual <= threshold}});
      }
      ojson j;
      j["schema_version"] = 1;
      j["seed"] = cfg.seed;
      j["tol"] = cfg.tol;
      j["draws"] = kDraws;
      j["max_level"] = kMaxLevel;
      j["report"] = std::move(report);
      j["metadata"] = {{"families", static_cast<int>(std::size(rows))},
                       {"failures", failures},
                       {"pass", failures == 0}};
      out << j.dump(2) << '\n';
      break;
    }
    case OutFormat::Csv:
      out << "family,factor,threshold,max_residual,pass\n";
      for (const FamilyRow& row : rows)
        out << row.family << ',' << fmt17(row.factor) << ',' << fmt17(cfg.tol * row.factor)
            << ',' << fmt17(row.residual) << ','
            << (row.residual <= cfg.tol * row.factor ? "true" : "false") << '\n';
      break;
    case OutFormat::Text:
      for (const FamilyRow& row : rows) {
        char line[120];
        std::snprintf(line, sizeof line, "%-18s %12.3e vs %12.3e  %s\n", row.family,
                      row.residual, cfg.tol * row.factor,
                      row.residual <= cfg.tol * row.factor ? "pass" : "FAIL");
        out << line;
      }
      out << (failures == 0 ? "all families pass\n" : "FAILURES present\n");
      break;
  }
  return failures == 0 ? 0 : 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"su(1,1) recoupling coefficients: four independent pipelines and their checks"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<double> alpha;
  std::string method = "oracle", format = "json", outfile;

  CLI::App* c_ninej = app.add_subcommand("ninej", "one coefficient by one method");
  CLI::App* c_table = app.add_subcommand("table", "full level matrix with Gram metadata");
  CLI::App* c_validate = app.add_subcommand("validate", "identity-family sweep");
  for (CLI::App* c : {c_ninej, c_table, c_validate}) {
    c->add_option("--alpha", alpha, "four parameters a1,a2,a3,a4")->delimiter(',');
    c->add_option("--N", cfg.N, "level");
    c->add_option("--m", cfg.m);
    c->add_option("--n", cfg.n);
    c->add_option("--x", cfg.x);
    c->add_option("--y", cfg.y);
    c->add_option("--method", method)
        ->check(CLI::IsMember({"oracle", "double", "contiguity", "vacuum"}));
    c->add_option("--nodes", cfg.nodes, "quadrature nodes per dimension");
    c->add_option("--tol", cfg.tol, "validation tolerance");
    c->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--seed", cfg.seed, "sweep seed");
    c->add_option("--out", outfile, "write the record here instead of standard output");
  }

  try {
    app.parse(argc, argv);

    if (!alpha.empty()) {
      if (alpha.size() != 4) throw std::invalid_argument("--alpha needs exactly four values");
      cfg.alphas = AlphaQuad(alpha[0], alpha[1], alpha[2], alpha[3]);
    }
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (method == "oracle") cfg.method = NinejMethod::Oracle;
    else if (method == "double") cfg.method = NinejMethod::Double;
    else if (method == "contiguity") cfg.method = NinejMethod::Contiguity;
    else cfg.method = NinejMethod::Vacuum;
    if (format == "json") cfg.format = OutFormat::Json;
    else if (format == "csv") cfg.format = OutFormat::Csv;
    else cfg.format = OutFormat::Text;

    std::ofstream file;
    std::ostream* dst = &out;
    if (!outfile.empty()) {
      file.open(outfile, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open output file: " + outfile);
      dst = &file;
    }

    if (c_ninej->parsed()) return cmd_ninej(cfg, *dst);
    if (c_table->parsed()) return cmd_table(cfg, *dst);
    return cmd_validate(cfg, *dst);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace su11
