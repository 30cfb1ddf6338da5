// Acceptance gate: ten checks covering every module, one [PASS]/[FAIL] line
// each.  Tolerances and time caps are pinned in the code below; the binary
// exits 0 only if every check passes within its cap.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "branchkit/report.hpp"

namespace {

using namespace branchkit;

struct Gate {
  int failures = 0;

  void run(int id, const char* label, double cap_seconds,
           const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < cap_seconds;
    if (!in_time && detail.empty()) detail = "over time cap";
    std::printf("[%s] %2d. %s (%.2f s, cap %.0f s)%s%s\n",
                ok && in_time ? "PASS" : "FAIL", id, label, secs, cap_seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!(ok && in_time)) ++failures;
  }
};

bool check_dimension_formula(std::string& detail) {
  for (long a = 0; a <= 3; ++a)
    for (long b = 0; b <= 3; ++b) {
      WeightGL3 w(a, b, 0);
      if (long(L3_basis(w).size()) != dim_L3(w)) {
        detail = "mismatch at " + detail::weight_str(w);
        return false;
      }
    }
  return true;
}

bool check_branching(std::string& detail) {
  std::mt19937_64 rng(101);
  std::vector<Matrix<GaussianRational>> gs;
  for (int t = 0; t < 20; ++t) gs.push_back(detail::rand_gl2(rng));

  for (long a = 0; a <= 3; ++a)
    for (long b = 0; b <= 3; ++b) {
      WeightGL3 w(a, b, 0);
      if (detail::joint_branching_rank(w) != size_t(dim_L3(w))) {
        detail = "rank defect at " + detail::weight_str(w);
        return false;
      }
      const auto& basis = L3_basis(w);
      for (size_t t = 0; t < gs.size(); ++t) {
        const Matrix<GaussianRational>& g = gs[t];
        GaussianRational det = g.det();
        const MultiPoly& p = basis[t % basis.size()];
        MultiPoly moved = act_gl3_poly(iota_gl2(g), p, w);
        for (long k = 0; k <= a; ++k)
          for (long l = 0; l <= b; ++l) {
            MultiPoly lhs = nabla_kl(k, l, moved, w);
            MultiPoly rhs = det.pow(-(b - l)) *
                            act_gl2(g, nabla_kl(k, l, p, w), WeightGL2(a + b - k - l, 0));
            if (!(lhs == rhs)) {
              detail = "equivariance fails at " + detail::weight_str(w) + " trial " +
                       std::to_string(t);
              return false;
            }
          }
      }
    }
  return true;
}

bool check_orth_structure(std::string& detail) {
  std::mt19937_64 rng(102);
  std::vector<GMat> pts;
  for (int t = 0; t < 25; ++t) pts.push_back(detail::rand_so3(rng));

  for (long l = 1; l <= 5; ++l) {
    OrthWeight3 w(l, 0);
    std::vector<Matrix<GaussianRational>> ms;
    for (const GMat& u : pts) ms.push_back(matrix_M(w, u));
    for (size_t t = 0; t < pts.size(); ++t) {
      size_t s = (t + 1) % pts.size();
      if (!(matrix_M(w, pts[t] * pts[s]) == ms[t] * ms[s])) {
        detail = "homomorphism fails at lambda=" + std::to_string(l);
        return false;
      }
    }
  }
  // determinant twist at a reflection
  GMat refl = Matrix<GaussianRational>::identity(3, GaussianRational(0), GaussianRational(1));
  refl.at(0, 0) = GaussianRational(-1);
  for (int delta : {0, 1}) {
    OrthWeight3 w(3, delta);
    if (!(matrix_M(w, refl * pts[0]) == matrix_M(w, refl) * matrix_M(w, pts[0]))) {
      detail = "mixed-determinant pair fails at delta=" + std::to_string(delta);
      return false;
    }
  }

  for (long l = 0; l <= 5; ++l)
    for (long lp = 0; l + lp <= 5; ++lp)
      for (long mu = 0; mu <= l; ++mu)
        for (long mup = 0; mup <= lp; ++mup)
          for (int sign : {1, -1}) {
            MultiPoly prod = v_basis3(OrthWeight3(l, 0), mu, sign).poly *
                             v_basis3(OrthWeight3(lp, 0), mup, sign).poly;
            if (!(reduce_mod_sphere(prod) ==
                  v_basis3(OrthWeight3(l + lp, 0), mu + mup, sign).poly)) {
              detail = "multiplicativity fails at (" + std::to_string(l) + "," +
                       std::to_string(lp) + ")";
              return false;
            }
          }
  return true;
}

bool check_wedge_matrices(std::string& detail) {
  std::mt19937_64 rng(103);
  for (size_t i : {size_t(2), size_t(3)}) {
    if (!(p_matrix_from_tilde(i) == p_matrix(i))) {
      detail = "column removal fails at i=" + std::to_string(i);
      return false;
    }
    for (int t = 0; t < 25; ++t) {
      GMat u = detail::rand_so3(rng);
      if (!p_tilde_block_check(i, u)) {
        detail = "block structure fails at i=" + std::to_string(i);
        return false;
      }
      if (!omega_equivariance_check(i, u)) {
        detail = "omega equivariance fails at i=" + std::to_string(i);
        return false;
      }
    }
  }
  return true;
}

bool check_coefficient_matrix(std::string& detail) {
  std::mt19937_64 rng(104);
  for (long lambda3 : {3L, 5L, 7L}) {
    for (int delta : {0, 1}) {
      ScriptP sp = build_script_P(lambda3, delta);
      if (!script_P_coeffs_dyadic(sp)) {
        detail = "coefficients leave Z[1/2,i] at lambda3=" + std::to_string(lambda3);
        return false;
      }
      for (int t = 0; t < 5; ++t) {
        if (!script_P_equivariance_check(sp, detail::rand_so3(rng))) {
          detail = "equivariance fails at lambda3=" + std::to_string(lambda3) +
                   " delta=" + std::to_string(delta);
          return false;
        }
      }
      if (delta == 0)
        for (long alpha = -lambda3; alpha <= lambda3; ++alpha)
          for (long beta = -3; beta <= 3; ++beta)
            if (!(script_P_entry(sp, alpha, beta) == closed_form_P_entry(lambda3, alpha, beta))) {
              detail = "closed form differs at lambda3=" + std::to_string(lambda3) + " (" +
                       std::to_string(alpha) + "," + std::to_string(beta) + ")";
              return false;
            }
    }
  }
  return true;
}

bool check_branched_closed_forms(std::string& detail) {
  for (long lambda3 : {3L, 5L, 7L}) {
    ScriptP sp = build_script_P(lambda3, 0);
    long w = sp.w;
    WeightGL3 wt(w, w, w);
    for (const WeightGL2& n : xi2_set(wt)) {
      for (long alpha = -lambda3; alpha <= lambda3; ++alpha)
        for (long beta = -3; beta <= 3; ++beta) {
          MultiPoly lhs = nabla_n(n, script_P_entry(sp, alpha, beta), wt);
          MultiPoly rhs = closed_form_nabla_P(lambda3, n, alpha, beta);
          if (!(lhs == rhs)) {
            detail = "operator and closed form differ at lambda3=" + std::to_string(lambda3);
            return false;
          }
          if ((alpha - beta == n.n1 || alpha - beta == -n.n1) &&
              !(rhs == closed_form_nabla_P_boundary(lambda3, n, alpha, beta))) {
            detail = "boundary form differs at lambda3=" + std::to_string(lambda3);
            return false;
          }
        }
      // the binomial constant, read off through the pairing with extreme vectors
      GaussianRational C = from_mpz(c_constant(w, n));
      for (long alpha = -lambda3; alpha <= lambda3; ++alpha) {
        GaussianRational got =
            pairing_n(n, closed_form_nabla_P(lambda3, n, alpha, -2), detail::st_power(-1, n.n1));
        GaussianRational want =
            alpha == -2 - n.n1 ? power_of_i(n.n1 - n.n2 + w) * C : GaussianRational(0);
        if (!(got == want)) {
          detail = "extreme pairing differs at lambda3=" + std::to_string(lambda3) + " n=(" +
                   std::to_string(n.n1) + "," + std::to_string(n.n2) + ")";
          return false;
        }
      }
    }
  }
  return true;
}

bool check_geometry(std::string& detail) {
  std::mt19937_64 rng(105);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    Real3 g = detail::random_gl3(rng);
    IwasawaCoords co = iwasawa_gl3(g);
    worst = std::max({worst, reconstruction_error(g, co),
                      orthogonality_defect(orthogonal_part(g, co))});
  }
  if (worst >= 1e-10) {
    detail = "round-trip residual " + std::to_string(worst);
    return false;
  }
  double dev = dF_matrix_check(1e-5);
  if (dev >= 1e-7) {
    detail = "differential deviation " + std::to_string(dev);
    return false;
  }
  double jac = left_jacobian_fd_check({1.0, 2.0, 0.0, 3.0, 0.0}, 1e-5);
  if (jac >= 1e-7) {
    detail = "Jacobian deviation " + std::to_string(jac);
    return false;
  }
  if (!left_jacobian_symbolic_check()) {
    detail = "symbolic Jacobian differs";
    return false;
  }
  if (!(q_matrix_verify(2) && q_matrix_verify(3))) {
    detail = "wedge tables differ";
    return false;
  }
  if (!iota_vanishing_check()) { detail = "odd-weight restriction nonzero"; return false; }
  if (!iota_middle_check()) { detail = "middle restriction differs"; return false; }
  if (!iota_volume_check()) { detail = "volume pairing differs"; return false; }
  if (!iota_flip_check()) { detail = "branch dependence detected"; return false; }
  return true;
}

bool check_critical_sets(std::string& detail) {
  for (long l3 = 2; l3 <= 20; l3 += 2)
    for (long l2 = 1; l2 < l3; ++l2)
      for (int delta : {0, 1}) {
        PiParams pp(l2, l3, delta);
        std::vector<long> closed = critical_points(pp);
        std::vector<long> poles = critical_points_by_poles(pp);
        std::vector<long> hodge;
        for (long m = -(l3 + l2); m <= 2 * (l3 + l2) + 3; ++m)
          if (is_critical_by_hodge(pp, m)) hodge.push_back(m);
        if (!(closed == poles && closed == hodge)) {
          detail = "criteria disagree at (l2,l3,delta)=(" + std::to_string(l2) + "," +
                   std::to_string(l3) + "," + std::to_string(delta) + ")";
          return false;
        }
      }
  auto spot = [&](long l2, long l3, const std::vector<long>& want) {
    if (critical_points(PiParams(l2, l3, 0)) != want) {
      detail = "spot value differs at (l2,l3)=(" + std::to_string(l2) + "," +
               std::to_string(l3) + ")";
      return false;
    }
    return true;
  };
  return spot(2, 8, {5, 6}) && spot(4, 6, {5, 6}) && spot(2, 4, {3, 4});
}

bool check_main_constant(std::string& detail) {
  for (long l3 = 2; l3 <= 20; l3 += 2)
    for (long l2 = 1; l2 < l3; ++l2)
      for (int delta : {0, 1}) {
        PiParams pp(l2, l3, delta);
        for (long m : critical_points(pp))
          if (!main_constant(pp, m).assembly_identity) {
            detail = "assembly identity fails at (l2,l3,delta,m)=(" + std::to_string(l2) + "," +
                     std::to_string(l3) + "," + std::to_string(delta) + "," + std::to_string(m) +
                     ")";
            return false;
          }
      }
  MainConstant mc = main_constant(PiParams(2, 8, 0), 5);
  if (!(mc.parity == -1 && mc.scalar == GaussianRational(3))) {
    detail = "spot value differs: parity " + std::to_string(mc.parity) + " scalar " +
             mc.scalar.str();
    return false;
  }
  return true;
}

bool check_pairing_powers(std::string& detail) {
  for (long n1 = 0; n1 <= 6; ++n1) {
    GaussianRational got =
        pairing_n(WeightGL2(n1, 0), detail::st_power(1, n1), detail::st_power(-1, n1));
    GaussianRational want = GaussianRational(mpq_class(0), mpq_class(-2)).pow(n1);
    if (!(got == want)) {
      detail = "value at n1=" + std::to_string(n1) + ": " + got.str() + " vs " + want.str();
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  Gate gate;
  gate.run(1, "dimension formula matches the kernel oracle", 10, check_dimension_formula);
  gate.run(2, "joint branching map: full rank and equivariance", 60, check_branching);
  gate.run(3, "rotation matrices: homomorphism and multiplicativity", 60, check_orth_structure);
  gate.run(4, "wedge matrices: blocks, column removal, equivariance", 60, check_wedge_matrices);
  gate.run(5, "coefficient matrix: ring, equivariance, closed form", 120, check_coefficient_matrix);
  gate.run(6, "branched entries: closed forms and extreme pairings", 120,
           check_branched_closed_forms);
  gate.run(7, "geometry: round trip, differentials, restrictions", 60, check_geometry);
  gate.run(8, "critical sets: three criteria and spot values", 10, check_critical_sets);
  gate.run(9, "main constant: assembly identity and spot value", 5, check_main_constant);
  gate.run(10, "pairing of distinguished powers", 5, check_pairing_powers);

  if (gate.failures) {
    std::printf("%d of 10 checks failed\n", gate.failures);
    return 1;
  }
  std::printf("all 10 checks passed\n");
  return 0;
}
