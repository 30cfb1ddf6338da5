#pragma once
// Verification batteries behind the `verify` subcommand: each suite re-runs
// the module's defining identities at a configurable size cap and collects
// failures into a serializable report.

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "branchkit/escoh.hpp"
#include "branchkit/geom.hpp"
#include "branchkit/jsonio.hpp"
#include "branchkit/lfactors.hpp"

namespace branchkit {

struct CaseFailure {
  std::string name;
  std::string inputs;
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  std::string suite;
  long max_weight = 0;
  unsigned long seed = 0;
  long count = 0;
  long pass = 0;
  std::vector<CaseFailure> failures;
  // Wall time goes to stderr only; keeping it out of the JSON makes reports
  // byte-identical for a fixed seed.
  double wall_ms = 0;
  bool all_pass() const { return pass == count; }
};

namespace detail {

class Checker {
 public:
  explicit Checker(VerifyReport& rep) : rep_(rep) {}
  void record(const std::string& name, bool ok, const std::string& inputs = "",
              const std::string& expected = "true", const std::string& actual = "false") {
    ++rep_.count;
    if (ok)
      ++rep_.pass;
    else
      rep_.failures.push_back({name, inputs, expected, actual});
  }
  void close(const std::string& name, double value, double bound, const std::string& inputs = "") {
    std::ostringstream exp, act;
    exp << "< " << bound;
    act << value;
    record(name, value < bound, inputs, exp.str(), act.str());
  }

 private:
  VerifyReport& rep_;
};

inline GaussianRational small_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-3, 3), den(1, 4);
  return GaussianRational(num(rng), den(rng));
}

inline GMat rand_so3(std::mt19937_64& rng) {
  return cayley_so3(small_rat(rng), small_rat(rng), small_rat(rng));
}

inline Matrix<GaussianRational> rand_gl2(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-4, 4);
  while (true) {
    Matrix<GaussianRational> g(2, 2, GaussianRational(0));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) g.at(r, c) = GaussianRational(num(rng));
    if (!g.det().is_zero()) return g;
  }
}

// rank of the stacked coefficient matrix of p -> (nabla^n p)_{n in Xi_2(w)}
inline size_t joint_branching_rank(const WeightGL3& w) {
  const std::vector<MultiPoly>& basis = L3_basis(w);
  std::vector<WeightGL2> xs = xi2_set(w);
  size_t nrows = 0;
  for (const auto& n : xs) nrows += n.n1 + 1;
  Matrix<GaussianRational> m(nrows, basis.size(), GaussianRational(0));
  for (size_t c = 0; c < basis.size(); ++c) {
    size_t row = 0;
    for (const auto& n : xs) {
      MultiPoly img = nabla_n(n, basis[c], w);
      for (long i = 0; i <= n.n1; ++i)
        m.at(row + i, c) = img.coeff({int(i), int(n.n1 - i)});
      row += n.n1 + 1;
    }
  }
  return m.rank();
}

inline MultiPoly st_power(int sign, long e) {
  const VariableSet& V = gl2_vars();
  MultiPoly lead = GaussianRational(sign) * MultiPoly::variable(V, "X") +
                   GaussianRational::i() * MultiPoly::variable(V, "Y");
  return lead.pow(e);
}

inline std::string weight_str(const WeightGL3& w) {
  return "(" + std::to_string(w.w1p) + "," + std::to_string(w.w1m) + "," + std::to_string(w.w2) + ")";
}

// well-conditioned random input: rotation * positive diagonal * rotation
inline Real3 random_gl3(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto rot = [&]() {
    GMat u = cayley_so3(GaussianRational(long(unit(rng) * 7), 7),
                        GaussianRational(long(unit(rng) * 9), 9),
                        GaussianRational(long(unit(rng) * 7), 7));
    Real3 r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = u.at(i, j).re_double();
    return r;
  };
  Real3 a = rot(), b = rot(), m{};
  double d[3] = {1.0 + std::abs(unit(rng)) * 2, 1.0 / (1.0 + std::abs(unit(rng))), 1.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m[i][j] += a[i][k] * d[k] * b[k][j];
  return m;
}

}  // namespace detail

inline VerifyReport verify_glrep(long max_weight, unsigned long seed) {
  VerifyReport rep{"glrep", max_weight, seed};
  detail::Checker ck(rep);
  std::mt19937_64 rng(seed);

  for (long a = 0; a <= max_weight; ++a)
    for (long b = 0; b <= max_weight; ++b) {
      WeightGL3 w(a, b, 0);
      long dim = dim_L3(w);
      long oracle = long(L3_basis(w).size());
      ck.record("dimension formula equals kernel oracle", dim == oracle, detail::weight_str(w),
                std::to_string(dim), std::to_string(oracle));

      long audit = 0;
      for (const auto& n : xi2_set(w)) audit += dim_L2(n);
      ck.record("restriction dimension audit", audit == dim, detail::weight_str(w),
                std::to_string(dim), std::to_string(audit));

      size_t rank = detail::joint_branching_rank(w);
      ck.record("joint branching map has full rank", rank == size_t(dim), detail::weight_str(w),
                std::to_string(dim), std::to_string(rank));
    }

  for (long a = 1; a <= std::min<long>(max_weight, 2); ++a)
    for (long b = 1; b <= std::min<long>(max_weight, 2); ++b) {
      WeightGL3 w(a, b, 0);
      const auto& basis = L3_basis(w);
      for (int t = 0; t < 3; ++t) {
        Matrix<GaussianRational> g = detail::rand_gl2(rng);
        GaussianRational det = g.det();
        const MultiPoly& p = basis[t % basis.size()];
        MultiPoly moved = act_gl3_poly(iota_gl2(g), p, w);
        bool ok = true;
        for (long k = 0; k <= a && ok; ++k)
          for (long l = 0; l <= b && ok; ++l) {
            MultiPoly lhs = nabla_kl(k, l, moved, w);
            MultiPoly rhs = det.pow(-(b - l)) *
                            act_gl2(g, nabla_kl(k, l, p, w), WeightGL2(a + b - k - l, 0));
            ok = lhs == rhs;
          }
        ck.record("branching operators are equivariant", ok,
                  detail::weight_str(w) + " trial " + std::to_string(t));
      }
    }
  return rep;
}

inline VerifyReport verify_orthrep(long max_weight, unsigned long seed) {
  VerifyReport rep{"orthrep", max_weight, seed};
  detail::Checker ck(rep);
  std::mt19937_64 rng(seed);

  for (int t = 0; t < 10; ++t) {
    GMat u = detail::rand_so3(rng);
    ck.record("Cayley points are special orthogonal",
              is_orthogonal(u) && u.det() == GaussianRational(1), "trial " + std::to_string(t));
  }

  for (long l = 1; l <= std::min<long>(max_weight, 4); ++l)
    for (int t = 0; t < 2; ++t) {
      GMat u = detail::rand_so3(rng);
      GMat v = detail::rand_so3(rng);
      for (int delta : {0, 1}) {
        OrthWeight3 w(l, delta);
        bool ok = matrix_M(w, u * v) == matrix_M(w, u) * matrix_M(w, v);
        ck.record("matrix map is a homomorphism", ok,
                  "lambda=" + std::to_string(l) + " delta=" + std::to_string(delta));
      }
    }

  long cap = std::min<long>(max_weight + 2, 6);
  for (long l = 0; l <= cap / 2; ++l)
    for (long lp = 0; l + lp <= cap; ++lp)
      for (int sign : {1, -1}) {
        bool ok = true;
        for (long mu = 0; mu <= l && ok; ++mu)
          for (long mup = 0; mup <= lp && ok; ++mup) {
            MultiPoly prod = v_basis3(OrthWeight3(l, 0), mu, sign).poly *
                             v_basis3(OrthWeight3(lp, 0), mup, sign).poly;
            ok = reduce_mod_sphere(prod) == v_basis3(OrthWeight3(l + lp, 0), mu + mup, sign).poly;
          }
        ck.record("basis vectors multiply within the family", ok,
                  "lambda=" + std::to_string(l) + "+" + std::to_string(lp) +
                      " sign=" + std::to_string(sign));
      }

  for (long l = 1; l <= std::min<long>(max_weight, 3); ++l)
    for (int delta : {0, 1}) {
      OrthWeight3 w(l, delta);
      bool ok = true;
      for (long mu = 1; mu <= l && ok; ++mu)
        for (int sign : {1, -1}) {
          OrthWeight2 m2(mu, 0);
          MultiPoly v2 = v_basis2(m2, sign);
          HarmonicElement h = o3_branch_embed(m2, w, v2);
          if (embed(o3_branch_project(w, m2, h), gl2_vars()) != embed(v2, gl2_vars())) {
            ok = false;
            break;
          }
        }
      ck.record("restriction splits the embedding", ok,
                "lambda=" + std::to_string(l) + " delta=" + std::to_string(delta));
    }
  return rep;
}

inline VerifyReport verify_escoh(long max_weight, unsigned long seed) {
  VerifyReport rep{"escoh", max_weight, seed};
  detail::Checker ck(rep);
  std::mt19937_64 rng(seed);

  for (int t = 0; t < 3; ++t) {
    GMat u = detail::rand_so3(rng);
    for (size_t i : {size_t(2), size_t(3)}) {
      ck.record("wedge action is block diagonal", p_tilde_block_check(i, u),
                "i=" + std::to_string(i) + " trial " + std::to_string(t));
      ck.record("omega basis transforms by the restricted block", omega_equivariance_check(i, u),
                "i=" + std::to_string(i) + " trial " + std::to_string(t));
    }
  }
  for (size_t i : {size_t(2), size_t(3)})
    ck.record("projected matrix drops the first columns", p_matrix_from_tilde(i) == p_matrix(i),
              "i=" + std::to_string(i));

  for (long lambda3 = 3; lambda3 <= max_weight; lambda3 += 2) {
    ScriptP sp = build_script_P(lambda3, 0);
    ck.record("coefficient matrix is dyadic", script_P_coeffs_dyadic(sp),
              "lambda3=" + std::to_string(lambda3));

    bool closed = true;
    for (long alpha = -lambda3; alpha <= lambda3 && closed; ++alpha)
      for (long beta = -3; beta <= 3 && closed; ++beta)
        closed = script_P_entry(sp, alpha, beta) == closed_form_P_entry(lambda3, alpha, beta);
    ck.record("entries match the double-sum closed form", closed,
              "lambda3=" + std::to_string(lambda3));

    GMat u = detail::rand_so3(rng);
    ck.record("coefficient matrix is equivariant", script_P_equivariance_check(sp, u),
              "lambda3=" + std::to_string(lambda3));

    WeightGL3 w(sp.w, sp.w, sp.w);
    for (const WeightGL2& n : xi2_set(w)) {
      bool ok = true;
      for (long alpha = -lambda3; alpha <= lambda3 && ok; ++alpha)
        for (long beta = -3; beta <= 3 && ok; ++beta) {
          MultiPoly lhs = nabla_n(n, script_P_entry(sp, alpha, beta), w);
          MultiPoly rhs = closed_form_nabla_P(lambda3, n, alpha, beta);
          ok = lhs == rhs;
          if (ok && (alpha - beta == n.n1 || alpha - beta == -n.n1))
            ok = rhs == closed_form_nabla_P_boundary(lambda3, n, alpha, beta);
        }
      ck.record("branched entries match their closed form", ok,
                "lambda3=" + std::to_string(lambda3) + " n=(" + std::to_string(n.n1) + "," +
                    std::to_string(n.n2) + ")");
    }
  }

  for (long e = 0; e <= 6; ++e) {
    GaussianRational got = pairing_n(WeightGL2(e, 0), detail::st_power(1, e), detail::st_power(-1, e));
    GaussianRational want = GaussianRational(mpq_class(0), mpq_class(-2)).pow(e);
    ck.record("pairing of the distinguished powers", got == want, "e=" + std::to_string(e),
              want.str(), got.str());
  }
  return rep;
}

inline VerifyReport verify_geom(long max_weight, unsigned long seed, double tol) {
  VerifyReport rep{"geom", max_weight, seed};
  detail::Checker ck(rep);
  std::mt19937_64 rng(seed);

  int bad_recon = 0, bad_orth = 0;
  const int trials = 200;
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    Real3 g = detail::random_gl3(rng);
    IwasawaCoords co = iwasawa_gl3(g);
    double r = reconstruction_error(g, co);
    double o = orthogonality_defect(orthogonal_part(g, co));
    worst = std::max({worst, r, o});
    if (r >= tol) ++bad_recon;
    if (o >= tol) ++bad_orth;
  }
  {
    std::ostringstream act;
    act << "worst residual " << worst;
    ck.record("coordinate round trip on random matrices", bad_recon == 0 && bad_orth == 0,
              std::to_string(trials) + " trials", "all residuals below tolerance", act.str());
  }

  ck.close("differential matches finite differences", dF_matrix_check(1e-5), 1e-7);
  ck.close("rate vectors stay in the tangent space", so3_rate_bound(1e-5), 1e-7);
  ck.record("left Jacobian agrees with symbolic differentiation", left_jacobian_symbolic_check());
  ck.close("left Jacobian agrees with finite differences",
           left_jacobian_fd_check({1.0, 2.0, 0.0, 3.0, 0.0}, 1e-5), 1e-6);
  ck.record("coframe pullback table", pullback_matrix_verify());
  ck.record("coframe chain rule", pullback_chain_check());
  ck.record("degree-2 wedge table", q_matrix_verify(2));
  ck.record("degree-3 wedge table", q_matrix_verify(3));
  ck.record("odd-weight restrictions vanish", iota_vanishing_check());
  ck.record("middle restriction", iota_middle_check());
  ck.record("volume pairings agree", iota_volume_check());
  ck.record("restrictions are branch independent", iota_flip_check());
  return rep;
}

inline VerifyReport verify_lfactors(long max_weight, unsigned long seed) {
  VerifyReport rep{"lfactors", max_weight, seed};
  detail::Checker ck(rep);

  auto set_str = [](const std::vector<long>& v) {
    std::string s = "{";
    for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + "}";
  };

  for (long l3 = 2; l3 <= max_weight; l3 += 2)
    for (long l2 = 1; l2 < l3; ++l2)
      for (int delta : {0, 1}) {
        PiParams pp(l2, l3, delta);
        std::vector<long> closed = critical_points(pp);
        std::vector<long> poles = critical_points_by_poles(pp);
        std::vector<long> hodge;
        for (long m = -(l3 + l2); m <= 2 * (l3 + l2) + 3; ++m)
          if (is_critical_by_hodge(pp, m)) hodge.push_back(m);
        bool ok = closed == poles && closed == hodge && !closed.empty();
        ck.record("critical set: closed form, pole test, Hodge test agree", ok,
                  "(l2,l3,delta)=(" + std::to_string(l2) + "," + std::to_string(l3) + "," +
                      std::to_string(delta) + ")",
                  set_str(closed), set_str(poles) + " / " + set_str(hodge));

        for (long m : closed) {
          MainConstant mc = main_constant(pp, m);
          CupConstants cc = cup_constants(l3 + 1, delta, l2, m);
          bool cok = mc.assembly_identity && !mc.scalar.is_zero() && mc.parity == cc.sign_flip;
          ck.record("assembly identity and sign coherence", cok,
                    "(l2,l3,delta,m)=(" + std::to_string(l2) + "," + std::to_string(l3) + "," +
                        std::to_string(delta) + "," + std::to_string(m) + ")");
        }

        int eps = epsilon_exponent(pp.pair_param());
        ck.record("epsilon exponent of the pair", eps == ((2 * l3 + l2 + 3) % 4),
                  "(l2,l3)=(" + std::to_string(l2) + "," + std::to_string(l3) + ")",
                  std::to_string((2 * l3 + l2 + 3) % 4), std::to_string(eps));
      }

  auto spot = [&](long l2, long l3, std::vector<long> want) {
    std::vector<long> got = critical_points(PiParams(l2, l3, 0));
    ck.record("critical set spot value", got == want,
              "(l2,l3)=(" + std::to_string(l2) + "," + std::to_string(l3) + ")", set_str(want),
              set_str(got));
  };
  spot(2, 8, {5, 6});
  spot(4, 6, {5, 6});
  spot(2, 4, {3, 4});

  {
    MainConstant mc = main_constant(PiParams(2, 8, 0), 5);
    ck.record("main constant spot value", mc.parity == -1 && mc.scalar == GaussianRational(3),
              "(2,8,0,5)", "parity -1 scalar 3",
              "parity " + std::to_string(mc.parity) + " scalar " + mc.scalar.str());
    AuxConstants ax = aux_constants(PiParams(2, 8, 0), 5);
    bool ok = ax.modified_exponent == -9 &&
              ax.nabla_coefficient == GaussianRational(mpq_class(0), mpq_class(-1, 3)) &&
              ax.e_infinity == -1 && ax.omega2 == -1 && ax.omega3 == -1;
    ck.record("auxiliary constants spot value", ok, "(2,8,0,5)");
  }

  // Gamma_R(s) Gamma_R(s+1) and Gamma_C(s) share pole sets (duplication)
  for (long a = -4; a <= 4; ++a) {
    bool ok = true;
    for (long num = -20; num <= 4 && ok; ++num) {
      mpq_class s = exact_ratio(num, 2);
      GammaProduct lhs, rhs;
      lhs.factors.push_back({'R', mpq_class(a)});
      lhs.factors.push_back({'R', mpq_class(a + 1)});
      rhs.factors.push_back({'C', mpq_class(a)});
      ok = has_pole_at(lhs, s) == has_pole_at(rhs, s);
    }
    ck.record("duplication pole sets", ok, "a=" + std::to_string(a));
  }
  ck.close("Gamma_R normalization", std::abs(gamma_R_value(1.0) - 1.0), 1e-12);
  ck.close("Gamma_C normalization", std::abs(gamma_C_value(1.0) - 1.0 / M_PI), 1e-12);
  ck.close("Gamma_C at two", std::abs(gamma_C_value(2.0) - 1.0 / (2 * M_PI * M_PI)), 1e-12);
  (void)seed;
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"glrep", "orthrep", "escoh", "geom", "lfactors"};
  return names;
}

inline long default_max_weight(const std::string& suite) {
  if (suite == "glrep") return 2;
  if (suite == "orthrep") return 4;
  if (suite == "escoh") return 5;
  if (suite == "lfactors") return 20;
  return 0;  // geom: cap is not meaningful
}

inline VerifyReport run_suite(const std::string& name, long max_weight, unsigned long seed,
                              double tol) {
  long mw = max_weight > 0 ? max_weight : default_max_weight(name);
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  if (name == "glrep")
    rep = verify_glrep(mw, seed);
  else if (name == "orthrep")
    rep = verify_orthrep(mw, seed);
  else if (name == "escoh")
    rep = verify_escoh(mw, seed);
  else if (name == "geom")
    rep = verify_geom(mw, seed, tol);
  else if (name == "lfactors")
    rep = verify_lfactors(mw, seed);
  else
    throw std::invalid_argument("unknown suite: " + name);
  rep.wall_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
          std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

inline std::vector<VerifyReport> run_suites(const std::string& name, long max_weight,
                                            unsigned long seed, double tol) {
  std::vector<VerifyReport> out;
  if (name == "all") {
    for (const auto& s : suite_names()) out.push_back(run_suite(s, max_weight, seed, tol));
  } else {
    out.push_back(run_suite(name, max_weight, seed, tol));
  }
  return out;
}

inline ordered_json report_json(const VerifyReport& rep) {
  ordered_json j;
  j["suite"] = rep.suite;
  j["max_weight"] = rep.max_weight;
  j["seed"] = rep.seed;
  j["cases"] = rep.count;
  j["passed"] = rep.pass;
  ordered_json fails = ordered_json::array();
  for (const auto& f : rep.failures) {
    ordered_json e;
    e["case"] = f.name;
    e["inputs"] = f.inputs;
    e["expected"] = f.expected;
    e["actual"] = f.actual;
    fails.push_back(e);
  }
  j["failures"] = fails;
  return j;
}

inline ordered_json reports_json(const std::string& requested,
                                 const std::vector<VerifyReport>& reps) {
  ordered_json j;
  j["schema"] = "branchkit/1";
  j["command"] = "verify";
  j["suite"] = requested;
  ordered_json arr = ordered_json::array();
  bool all = true;
  for (const auto& r : reps) {
    arr.push_back(report_json(r));
    all = all && r.all_pass();
  }
  j["reports"] = arr;
  j["all_pass"] = all;
  return j;
}

}  // namespace branchkit
