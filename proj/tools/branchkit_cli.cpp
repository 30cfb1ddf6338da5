// branchkit command-line front end: exact calculators on stdout (canonical
// JSON, schema "branchkit/1") plus the `verify` battery runner.
//
// Exit codes: 0 success / all checks pass, 1 verification failures,
// 2 usage or domain errors.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "branchkit/report.hpp"

namespace {

using namespace branchkit;

ordered_json make_root(const std::string& command) {
  ordered_json j;
  j["schema"] = "branchkit/1";
  j["command"] = command;
  return j;
}

void emit(const ordered_json& j, const std::string& json_path) {
  std::cout << dump_json(j);
  if (!json_path.empty()) write_json_atomic(json_path, j);
}

GaussianRational parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  q.canonicalize();
  return GaussianRational(q, mpq_class(0));
}

ordered_json matrix_json(const Matrix<GaussianRational>& m) {
  ordered_json rows = ordered_json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

ordered_json gamma_json(const WeilParameter& p) {
  ordered_json j;
  j["factors"] = gamma_str(gamma_factor(p));
  j["epsilon_exponent"] = epsilon_exponent(p);
  return j;
}

int run_branch(long w1p, long w1m, long w2, const std::string& json_path) {
  WeightGL3 w(w1p, w1m, w2);
  ordered_json j = make_root("branch");
  j["weight"] = {{"w1p", w.w1p}, {"w1m", w.w1m}, {"w2", w.w2}};
  j["dim"] = dim_L3(w);
  ordered_json list = ordered_json::array();
  long audit = 0;
  for (const WeightGL2& n : xi2_set(w)) {
    list.push_back(ordered_json{{"n1", n.n1}, {"n2", n.n2}, {"dim", dim_L2(n)}});
    audit += dim_L2(n);
  }
  j["xi2"] = list;
  j["dim_audit"] = audit;
  emit(j, json_path);
  return 0;
}

int run_critical(long l2, long l3, int delta, const std::string& json_path) {
  PiParams pp(l2, l3, delta);
  ordered_json j = make_root("critical");
  j["l2"] = l2;
  j["l3"] = l3;
  j["delta"] = delta;
  j["m"] = critical_points(pp);
  j["argument_shift"] = "-3/2";
  j["gamma"] = gamma_json(pp.pair_param());
  emit(j, json_path);
  return 0;
}

int run_gamma(long l2, long l3, int delta, const std::string& json_path) {
  PiParams pp(l2, l3, delta);
  ordered_json j = make_root("gamma");
  j["l2"] = l2;
  j["l3"] = l3;
  j["delta"] = delta;
  j["pi2"] = gamma_json(pp.param2());
  j["pi3"] = gamma_json(pp.param3());
  j["pair"] = gamma_json(pp.pair_param());
  emit(j, json_path);
  return 0;
}

int run_pmatrix(long lambda3, int delta, const std::string& json_path) {
  ScriptP sp = build_script_P(lambda3, delta);
  ordered_json j = make_root("pmatrix");
  j["lambda3"] = lambda3;
  j["delta"] = delta;
  j["rows"] = 2 * lambda3 + 1;
  j["cols"] = 7;
  j["dyadic"] = script_P_coeffs_dyadic(sp);
  ordered_json rows = ordered_json::array();
  for (long alpha = lambda3; alpha >= -lambda3; --alpha) {
    ordered_json row = ordered_json::array();
    for (long beta = 3; beta >= -3; --beta) row.push_back(script_P_entry(sp, alpha, beta).str());
    rows.push_back(row);
  }
  j["entries"] = rows;
  emit(j, json_path);
  return 0;
}

int run_mmatrix(long lambda, int delta, const std::string& a, const std::string& b,
                const std::string& c, const std::string& json_path) {
  GMat u = cayley_so3(parse_rational(a), parse_rational(b), parse_rational(c));
  Matrix<GaussianRational> m = matrix_M(OrthWeight3(lambda, delta), u);
  ordered_json j = make_root("mmatrix");
  j["lambda"] = lambda;
  j["delta"] = delta;
  j["cayley"] = {a, b, c};
  j["rotation"] = matrix_json(u);
  j["matrix"] = matrix_json(m);
  emit(j, json_path);
  return 0;
}

int run_iwasawa(const std::vector<double>& entries, double tol, const std::string& json_path) {
  if (entries.size() != 9) throw std::invalid_argument("--entry expects nine values, row major");
  Real3 g{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) g[r][c] = entries[r * 3 + c];
  IwasawaCoords co = iwasawa_gl3(g, tol);
  ordered_json j = make_root("iwasawa");
  // the one place floats are allowed in a report: numeric coordinates
  j["y1"] = co.y1;
  j["y2"] = co.y2;
  j["x1"] = co.x1;
  j["x2"] = co.x2;
  j["x3"] = co.x3;
  j["scale"] = co.scale;
  j["reconstruction_error"] = reconstruction_error(g, co);
  j["orthogonality_defect"] = orthogonality_defect(orthogonal_part(g, co));
  emit(j, json_path);
  return 0;
}

int run_constant(long l2, long l3, int delta, long m, const std::string& json_path) {
  PiParams pp(l2, l3, delta);
  MainConstant mc = main_constant(pp, m);
  AuxConstants ax = aux_constants(pp, m);
  ordered_json j = make_root("constant");
  j["l2"] = l2;
  j["l3"] = l3;
  j["delta"] = delta;
  j["m"] = m;
  j["parity"] = mc.parity;
  j["scalar"] = mc.scalar.str();
  j["binomial_product"] = mc.binoms.str();
  j["assembly_identity"] = mc.assembly_identity;
  j["aux"] = {{"modified_exponent", ax.modified_exponent},
              {"nabla_coefficient", ax.nabla_coefficient.str()},
              {"e_infinity", ax.e_infinity},
              {"omega2", ax.omega2},
              {"omega3", ax.omega3}};
  emit(j, json_path);
  return 0;
}

int run_verify(const std::string& suite, long max_weight, unsigned long seed, double tol,
               const std::string& json_path) {
  std::vector<VerifyReport> reps = run_suites(suite, max_weight, seed, tol);
  ordered_json j = reports_json(suite, reps);
  emit(j, json_path);
  bool all = true;
  for (const auto& r : reps) {
    std::fprintf(stderr, "%-9s %ld/%ld cases in %.1f ms\n", r.suite.c_str(), r.pass, r.count,
                 r.wall_ms);
    all = all && r.all_pass();
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculators and verification suites for the branching toolkit"};
  app.require_subcommand(1);

  std::string json_path;
  long w1p = 0, w1m = 0, w2 = 0;
  CLI::App* branch = app.add_subcommand("branch", "restriction pattern of a highest weight");
  branch->add_option("--w1p", w1p, "first tableau weight")->required();
  branch->add_option("--w1m", w1m, "second tableau weight")->required();
  branch->add_option("--w2", w2, "twist exponent");

  long l2 = 0, l3 = 0, m = 0, lambda = 1, lambda3 = 3;
  int delta = 0;
  CLI::App* critical = app.add_subcommand("critical", "critical integers of a parameter pair");
  critical->add_option("--l2", l2)->required();
  critical->add_option("--l3", l3)->required();
  critical->add_option("--delta", delta)->check(CLI::Range(0, 1));

  CLI::App* gamma = app.add_subcommand("gamma", "archimedean factors of both parameters");
  gamma->add_option("--l2", l2)->required();
  gamma->add_option("--l3", l3)->required();
  gamma->add_option("--delta", delta)->check(CLI::Range(0, 1));

  CLI::App* pmatrix = app.add_subcommand("pmatrix", "polynomial coefficient matrix");
  pmatrix->add_option("--lambda3", lambda3)->required();
  pmatrix->add_option("--delta", delta)->check(CLI::Range(0, 1));

  std::string ca = "0", cb = "0", cc = "0";
  CLI::App* mmatrix = app.add_subcommand("mmatrix", "rotation matrix on the spherical basis");
  mmatrix->add_option("--lambda", lambda)->required();
  mmatrix->add_option("--delta", delta)->check(CLI::Range(0, 1));
  mmatrix->add_option("--a", ca, "Cayley parameter (rational)");
  mmatrix->add_option("--b", cb, "Cayley parameter (rational)");
  mmatrix->add_option("--c", cc, "Cayley parameter (rational)");

  std::vector<double> entries;
  double tol = 1e-10;
  CLI::App* iwasawa = app.add_subcommand("iwasawa", "upper-triangular coordinates of a matrix");
  iwasawa->add_option("--entry", entries, "nine entries, row major")->expected(9)->required();
  iwasawa->add_option("--tol", tol, "degeneracy tolerance");

  CLI::App* constant = app.add_subcommand("constant", "critical-value constants");
  constant->add_option("--l2", l2)->required();
  constant->add_option("--l3", l3)->required();
  constant->add_option("--delta", delta)->check(CLI::Range(0, 1));
  constant->add_option("--m", m, "critical integer")->required();

  std::string suite;
  long max_weight = 0;
  unsigned long seed = 1;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  verify->add_option("suite", suite, "one of: glrep orthrep escoh geom lfactors all")
      ->required()
      ->check(CLI::IsMember(allowed));
  verify->add_option("--max-weight", max_weight, "size cap (0 = per-suite default)");
  verify->add_option("--seed", seed, "random seed for sampled checks");
  verify->add_option("--tol", tol, "numeric tolerance (geom suite)");

  for (CLI::App* sub : {branch, critical, gamma, pmatrix, mmatrix, iwasawa, constant, verify})
    sub->add_option("--json", json_path, "also write the JSON output to this path (atomic)");

  try {
    app.parse(argc, argv);
    if (branch->parsed()) return run_branch(w1p, w1m, w2, json_path);
    if (critical->parsed()) return run_critical(l2, l3, delta, json_path);
    if (gamma->parsed()) return run_gamma(l2, l3, delta, json_path);
    if (pmatrix->parsed()) return run_pmatrix(lambda3, delta, json_path);
    if (mmatrix->parsed()) return run_mmatrix(lambda, delta, ca, cb, cc, json_path);
    if (iwasawa->parsed()) return run_iwasawa(entries, tol, json_path);
    if (constant->parsed()) return run_constant(l2, l3, delta, m, json_path);
    if (verify->parsed()) return run_verify(suite, max_weight, seed, tol, json_path);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
