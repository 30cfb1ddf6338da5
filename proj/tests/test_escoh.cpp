#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "branchkit/escoh.hpp"

using namespace branchkit;

namespace {

GaussianRational rand_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-3, 3), den(1, 4);
  return GaussianRational(mpq_class(num(rng), den(rng)), mpq_class(0));
}

GMat rand_so3(std::mt19937_64& rng) { return cayley_so3(rand_rat(rng), rand_rat(rng), rand_rat(rng)); }

MultiPoly st_power(int sign, long e) {
  const VariableSet& V = gl2_vars();
  MultiPoly lead = GaussianRational(sign) * MultiPoly::variable(V, "X") +
                   GaussianRational::i() * MultiPoly::variable(V, "Y");
  return lead.pow(e);
}

}  // namespace

TEST_CASE("coordinates on the symmetric traceless space") {
  std::mt19937_64 rng(31);
  std::vector<GMat> X = lie_X_basis();
  for (int t = 0; t < 10; ++t) {
    std::vector<GaussianRational> c;
    GMat M(3, 3, GaussianRational(0));
    for (int j = 0; j < 5; ++j) {
      GaussianRational cj(rand_rat(rng).re(), rand_rat(rng).re());
      c.push_back(cj);
      M = M + cj * X[j];
    }
    CHECK(x_coordinates(M) == c);

    // oracle: coordinates are the v-coordinates of the quadratic form z M t(z)
    const VariableSet& V = z_vars();
    const char* zn[3] = {"z1", "z2", "z3"};
    MultiPoly q(V);
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s)
        q += M.at(r, s) * (MultiPoly::variable(V, zn[r]) * MultiPoly::variable(V, zn[s]));
    CHECK(v_coordinates(HarmonicElement(q, OrthWeight3(2, 0))) == c);
  }
  // the basis itself maps onto the spherical basis vectors
  for (int j = 0; j < 5; ++j) {
    std::vector<GaussianRational> coords = x_coordinates(X[j]);
    for (int r = 0; r < 5; ++r)
      CHECK(coords[r] == (r == j ? GaussianRational(1) : GaussianRational(0)));
  }
}

TEST_CASE("plane adjoint action") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 6; ++t) {
    GMat u = cayley_so2(rand_rat(rng));
    GMat uinv = u.inverse();
    CHECK(ad_gl2(u) == uinv * uinv);
  }
  CHECK_THROWS_AS(ad_gl2(GaussianRational(2) * GMat::identity(2, GaussianRational(0), GaussianRational(1))),
                  std::invalid_argument);
}

TEST_CASE("space adjoint action matches the degree-two rotation matrix") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 5; ++t) {
    GMat u = rand_so3(rng);
    CHECK(ad_gl3(u) == matrix_M(OrthWeight3(2, 0), u));
  }
  // homomorphism property
  GMat a = rand_so3(rng), b = rand_so3(rng);
  CHECK(ad_gl3(a * b) == ad_gl3(a) * ad_gl3(b));
  for (size_t i : {2, 3}) CHECK(wedge_ad(i, a * b) == wedge_ad(i, a) * wedge_ad(i, b));
}

TEST_CASE("wedge space block diagonalization") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 4; ++t) {
    GMat u = rand_so3(rng);
    CHECK(p_tilde_block_check(2, u));
    CHECK(p_tilde_block_check(3, u));
  }
}

TEST_CASE("omega coefficient matrices") {
  CHECK(p_matrix_from_tilde(2) == p_matrix(2));
  CHECK(p_matrix_from_tilde(3) == p_matrix(3));
  std::mt19937_64 rng(35);
  for (int t = 0; t < 4; ++t) {
    GMat u = rand_so3(rng);
    CHECK(omega_equivariance_check(2, u));
    CHECK(omega_equivariance_check(3, u));
  }
  CHECK(omega_basis(2).size() == 7);
  CHECK(omega_basis(3)[0].coeffs.size() == 10);
}

TEST_CASE("coefficient matrix at the smallest weight") {
  for (int delta : {0, 1}) {
    ScriptP sp = build_script_P(3, delta);
    REQUIRE(sp.entry.size() == 7);
    for (long alpha = -3; alpha <= 3; ++alpha)
      for (long beta = -3; beta <= 3; ++beta) {
        const MultiPoly& e = script_P_entry(sp, alpha, beta);
        if (alpha == beta)
          CHECK(e == MultiPoly::constant(gl3_vars(), GaussianRational(1)));
        else
          CHECK(e.is_zero());
      }
  }
}

TEST_CASE("coefficient matrix properties") {
  ScriptP sp = build_script_P(5, 0);
  REQUIRE(sp.entry.size() == 11);
  WeightGL3 w(1, 1, 1);
  for (long alpha = -5; alpha <= 5; ++alpha)
    for (long beta = -3; beta <= 3; ++beta) {
      const MultiPoly& e = script_P_entry(sp, alpha, beta);
      if (e.is_zero()) continue;
      CHECK(e.is_homogeneous({"X", "Y", "Z"}, 1));
      CHECK(e.is_homogeneous({"A", "B", "C"}, 1));
      CHECK(contraction(e, WeightGL3(1, 1, 0)).is_zero());
    }
  CHECK(script_P_coeffs_dyadic(sp));

  std::mt19937_64 rng(36);
  for (int t = 0; t < 2; ++t) CHECK(script_P_equivariance_check(sp, rand_so3(rng)));

  // entries agree with the double-sum closed form
  for (long alpha = -5; alpha <= 5; ++alpha)
    for (long beta = -3; beta <= 3; ++beta)
      CHECK(script_P_entry(sp, alpha, beta) == closed_form_P_entry(5, alpha, beta));

  // the twist does not change the polynomials
  ScriptP sp1 = build_script_P(5, 1);
  for (long alpha = -5; alpha <= 5; ++alpha)
    for (long beta = -3; beta <= 3; ++beta)
      CHECK(script_P_entry(sp, alpha, beta) == script_P_entry(sp1, alpha, beta));
  (void)w;
}

TEST_CASE("trinomial coefficients") {
  CHECK(trinomial(2, 1, 1, 0) == 2);
  CHECK(trinomial(3, 1, 1, 1) == 6);
  CHECK(trinomial(3, 2, 1, 1) == 0);
  CHECK(trinomial(4, -1, 3, 2) == 0);
  // oracle: expand the power directly
  const VariableSet V({"X", "Y", "Z"});
  MultiPoly s = MultiPoly::variable(V, "X") + MultiPoly::variable(V, "Y") + MultiPoly::variable(V, "Z");
  MultiPoly p4 = expand_power(s, 4);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j)
      CHECK(p4.coeff({i, j, 4 - i - j}) == from_mpz(trinomial(4, i, j, 4 - i - j)));
}

TEST_CASE("branching of the coefficient matrix in closed form") {
  ScriptP sp = build_script_P(5, 0);
  WeightGL3 w(1, 1, 1);
  for (const WeightGL2& n : xi2_set(w)) {
    for (long alpha = -5; alpha <= 5; ++alpha)
      for (long beta = -3; beta <= 3; ++beta) {
        MultiPoly lhs = nabla_n(n, script_P_entry(sp, alpha, beta), w);
        MultiPoly rhs = closed_form_nabla_P(5, n, alpha, beta);
        CHECK(lhs == rhs);
        if (alpha - beta == n.n1 || alpha - beta == -n.n1)
          CHECK(rhs == closed_form_nabla_P_boundary(5, n, alpha, beta));
      }
  }
}

TEST_CASE("pairing values") {
  const VariableSet& V = gl2_vars();
  WeightGL2 n(2, 0);
  MultiPoly x2 = MultiPoly::variable(V, "X", 2);
  MultiPoly y2 = MultiPoly::variable(V, "Y", 2);
  MultiPoly xy = MultiPoly::variable(V, "X") * MultiPoly::variable(V, "Y");
  CHECK(pairing_n(n, x2, y2) == GaussianRational(1));
  CHECK(pairing_n(n, xy, xy) == GaussianRational(-1, 2));
  CHECK(pairing_n(n, y2, x2) == GaussianRational(1));
  CHECK(pairing_n(n, x2, x2).is_zero());
  CHECK_THROWS_AS(pairing_n(n, MultiPoly::variable(V, "X"), y2), std::invalid_argument);

  for (long e = 0; e <= 6; ++e) {
    GaussianRational want = GaussianRational(mpq_class(0), mpq_class(-2)).pow(e);
    CHECK(pairing_n(WeightGL2(e, 0), st_power(1, e), st_power(-1, e)) == want);
  }
}

TEST_CASE("pairing equivariance") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<long> num(-4, 4);
  const VariableSet& V = gl2_vars();
  for (int t = 0; t < 6; ++t) {
    GMat g(2, 2, GaussianRational(0));
    do {
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) g.at(r, c) = GaussianRational(num(rng));
    } while (g.det().is_zero());
    for (long n1 : {1L, 2L, 3L})
      for (long n2 : {0L, 1L}) {
        WeightGL2 n(n1, n2);
        MultiPoly p(V), q(V);
        for (long i = 0; i <= n1; ++i) {
          p.add_term({int(i), int(n1 - i)}, GaussianRational(num(rng)));
          q.add_term({int(i), int(n1 - i)}, GaussianRational(num(rng)));
        }
        GaussianRational lhs = pairing_n(n, act_gl2(g, p, n), act_gl2(g, q, WeightGL2(n1, 0)));
        CHECK(lhs == g.det().pow(n1 + n2) * pairing_n(n, p, q));
      }
  }
}

TEST_CASE("pairing against the extreme vectors") {
  // lambda3 = 7: w = 2, l3 = 6, l2 = 2 admits the interior points m = 4, 5
  long w = 2;
  for (long m : {4L, 5L}) {
    WeightGL2 nm(1, m - 3);  // (l2 - 1, m - l2 - 1)
    REQUIRE(in_xi2(nm, WeightGL3(w, w, w)));
    GaussianRational C = from_mpz(c_constant(w, nm));
    CHECK(cup_constants(7, 0, 2, m).C == c_constant(w, nm));
    for (long alpha = -7; alpha <= 7; ++alpha) {
      MultiPoly pm = closed_form_nabla_P(7, nm, alpha, -2);
      GaussianRational got = pairing_n(nm, pm, st_power(-1, nm.n1));
      GaussianRational want =
          alpha == -3 ? power_of_i(nm.n1 - nm.n2 + w) * C : GaussianRational(0);
      CHECK(got == want);

      MultiPoly pp = closed_form_nabla_P(7, nm, alpha, 2);
      GaussianRational got2 = pairing_n(nm, pp, st_power(1, nm.n1));
      GaussianRational want2 =
          alpha == 3 ? power_of_i(-nm.n1 + nm.n2 - w) * C : GaussianRational(0);
      CHECK(got2 == want2);
    }
  }
}

TEST_CASE("cup product constants") {
  CupConstants cc = cup_constants(9, 0, 2, 5);
  // l3 = 8, w = 3: binom(3,0) * binom(3,1) = 3
  CHECK(cc.C == 3);
  CHECK(cc.prefactor == power_of_i(8 / 2 + 2 * 2 - 5 - 1));
  CHECK(cc.sign_flip == ((5 + 0 + 1 + 3) % 2 == 0 ? 1 : -1));
  CHECK_THROWS_AS(cup_constants(4, 0, 2, 3), std::invalid_argument);
}
