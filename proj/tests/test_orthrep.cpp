#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "branchkit/glrep.hpp"
#include "branchkit/orthrep.hpp"

using namespace branchkit;

namespace {

MultiPoly zpoly(const std::string& text) { return parse_poly(text, z_vars()); }

GaussianRational rand_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-3, 3), den(1, 4);
  return GaussianRational(mpq_class(num(rng), den(rng)), mpq_class(0));
}

}  // namespace

TEST_CASE("sphere reduction") {
  CHECK(reduce_mod_sphere(zpoly("z3^2")) == zpoly("-z1^2 - z2^2"));
  CHECK(reduce_mod_sphere(zpoly("z1*z2")) == zpoly("z1*z2"));
  CHECK(reduce_mod_sphere(zpoly("(z1^2 + z2^2 + z3^2)*z1")).is_zero());
  CHECK_THROWS_AS(reduce_mod_sphere(zpoly("z1 + z2^2")), std::invalid_argument);
  // idempotent and linear
  MultiPoly p = zpoly("z1*z3^4 - 2*z2^3*z3^2");
  CHECK(reduce_mod_sphere(reduce_mod_sphere(p)) == reduce_mod_sphere(p));
  CHECK(reduce_mod_sphere(GaussianRational(3) * p) == GaussianRational(3) * reduce_mod_sphere(p));
}

TEST_CASE("spherical basis vectors") {
  CHECK(v_basis3(OrthWeight3(1, 0), 0, 1).poly == zpoly("z3"));
  CHECK(v_basis3(OrthWeight3(2, 0), 2, -1).poly == zpoly("z1^2 - 2*i*z1*z2 - z2^2"));
  CHECK(v_basis3(OrthWeight3(2, 0), 0, 1).poly == zpoly("-z1^2 - z2^2"));
  CHECK_THROWS_AS(v_basis3(OrthWeight3(2, 0), 3, 1), std::invalid_argument);
  // reduced monomials span a (2 lambda + 1)-dimensional space
  for (long l = 0; l <= 5; ++l) CHECK(harmonic_monomials(l).size() == size_t(2 * l + 1));
}

TEST_CASE("multiplicativity of basis vectors") {
  for (long l = 0; l <= 4; ++l)
    for (long lp = 0; l + lp <= 6; ++lp)
      for (long mu = 0; mu <= l; ++mu)
        for (long mup = 0; mup <= lp; ++mup)
          for (int sign : {1, -1}) {
            MultiPoly prod = v_basis3(OrthWeight3(l, 0), mu, sign).poly *
                             v_basis3(OrthWeight3(lp, 0), mup, sign).poly;
            CHECK(reduce_mod_sphere(prod) ==
                  v_basis3(OrthWeight3(l + lp, 0), mu + mup, sign).poly);
          }
}

TEST_CASE("rotation matrices on the spherical basis") {
  Matrix<GaussianRational> id3 = Matrix<GaussianRational>::identity(3, GaussianRational(0), GaussianRational(1));
  CHECK(matrix_M(OrthWeight3(1, 0), id3) ==
        Matrix<GaussianRational>::identity(3, GaussianRational(0), GaussianRational(1)));

  Matrix<GaussianRational> rot(3, 3, GaussianRational(0));
  rot.at(0, 1) = GaussianRational(1);
  rot.at(1, 0) = GaussianRational(-1);
  rot.at(2, 2) = GaussianRational(1);
  Matrix<GaussianRational> m = matrix_M(OrthWeight3(1, 0), rot);
  Matrix<GaussianRational> want(3, 3, GaussianRational(0));
  want.at(0, 0) = GaussianRational::i();
  want.at(1, 1) = GaussianRational(1);
  want.at(2, 2) = -GaussianRational::i();
  CHECK(m == want);

  Matrix<GaussianRational> refl = id3;
  refl.at(0, 0) = GaussianRational(-1);
  Matrix<GaussianRational> mr = matrix_M(OrthWeight3(1, 0), refl);
  Matrix<GaussianRational> perm(3, 3, GaussianRational(0));
  perm.at(0, 2) = GaussianRational(1);
  perm.at(1, 1) = GaussianRational(1);
  perm.at(2, 0) = GaussianRational(1);
  CHECK(mr == perm);
  // delta = 1 picks up det u = -1
  CHECK(matrix_M(OrthWeight3(1, 1), refl) == -GaussianRational(1) * perm);

  CHECK_THROWS_AS(matrix_M(OrthWeight3(1, 0), GaussianRational(2) * id3), std::invalid_argument);
}

TEST_CASE("rational rotation generator") {
  CHECK(cayley_so3(GaussianRational(0), GaussianRational(0), GaussianRational(0)) ==
        Matrix<GaussianRational>::identity(3, GaussianRational(0), GaussianRational(1)));
  Matrix<GaussianRational> u = cayley_so3(GaussianRational(1), GaussianRational(0), GaussianRational(0));
  Matrix<GaussianRational> want(3, 3, GaussianRational(0));
  want.at(0, 1) = GaussianRational(-1);
  want.at(1, 0) = GaussianRational(1);
  want.at(2, 2) = GaussianRational(1);
  CHECK(u == want);

  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    Matrix<GaussianRational> g = cayley_so3(rand_rat(rng), rand_rat(rng), rand_rat(rng));
    CHECK(is_orthogonal(g));
    CHECK(g.det() == GaussianRational(1));
  }
}

TEST_CASE("matrix map is a homomorphism") {
  std::mt19937_64 rng(22);
  for (long l = 1; l <= 3; ++l)
    for (int t = 0; t < 3; ++t) {
      Matrix<GaussianRational> u = cayley_so3(rand_rat(rng), rand_rat(rng), rand_rat(rng));
      Matrix<GaussianRational> v = cayley_so3(rand_rat(rng), rand_rat(rng), rand_rat(rng));
      for (int delta : {0, 1}) {
        OrthWeight3 w(l, delta);
        CHECK(matrix_M(w, u * v) == matrix_M(w, u) * matrix_M(w, v));
      }
    }
  // mixed-determinant pair
  Matrix<GaussianRational> refl = Matrix<GaussianRational>::identity(3, GaussianRational(0), GaussianRational(1));
  refl.at(0, 0) = GaussianRational(-1);
  Matrix<GaussianRational> u = cayley_so3(GaussianRational(1, 2), GaussianRational(-1, 3), GaussianRational(2));
  OrthWeight3 w(2, 1);
  CHECK(matrix_M(w, refl * u) == matrix_M(w, refl) * matrix_M(w, u));
}

TEST_CASE("restriction to the plane rotations") {
  // Sigma(lambda) bookkeeping
  auto sig = sigma_set(OrthWeight3(3, 1));
  REQUIRE(sig.size() == 4);
  CHECK((sig[0].lambda == 0 && sig[0].delta == 1));
  CHECK((sig[1].lambda == 1 && sig[1].delta == 0));
  long total = 0;
  for (const auto& mu : sig) total += mu.lambda == 0 ? 1 : 2;
  CHECK(total == 2 * 3 + 1);

  for (int delta : {0, 1}) {
    OrthWeight3 w(3, delta);
    for (long mu = 1; mu <= 3; ++mu) {
      OrthWeight2 m2(mu, 0);
      for (int sign : {1, -1}) {
        MultiPoly v2 = v_basis2(OrthWeight2(mu, 0), sign);
        HarmonicElement h = o3_branch_embed(m2, w, v2);
        GaussianRational factor = sign == 1 ? GaussianRational(1) : sign_power(delta);
        CHECK(h.poly == factor * v_basis3(OrthWeight3(3, delta), mu, sign).poly);
        // section property
        CHECK(embed(o3_branch_project(w, m2, h), gl2_vars()) == embed(v2, gl2_vars()));
      }
    }
    CHECK_THROWS_AS(o3_branch_embed(OrthWeight2(4, 0), w, v_basis2(OrthWeight2(4, 0), 1)),
                    std::invalid_argument);
  }
}

TEST_CASE("branching maps are equivariant") {
  std::mt19937_64 rng(23);
  for (int delta : {0, 1}) {
    OrthWeight3 w(3, delta);
    auto sig = sigma_set(w);
    for (int t = 0; t < 3; ++t) {
      GaussianRational tt = rand_rat(rng);
      Matrix<GaussianRational> u2 = cayley_so2(tt);
      Matrix<GaussianRational> refl2(2, 2, GaussianRational(0));
      refl2.at(0, 0) = GaussianRational(-1);
      refl2.at(1, 1) = GaussianRational(1);
      for (const Matrix<GaussianRational>& g2 : {u2, refl2, u2 * refl2}) {
        Matrix<GaussianRational> g3 = iota_gl2(g2);
        for (const auto& mu : sig) {
          for (int sign : {1, -1}) {
            MultiPoly v2 = v_basis2(OrthWeight2(mu.lambda, 0), sign);
            MultiPoly moved2 = act_gl2(g2, v2, WeightGL2(0, mu.delta));
            HarmonicElement lhs = o3_branch_embed(mu, w, moved2);
            MultiPoly rhs = act_o3(g3, o3_branch_embed(mu, w, v2).poly, w.delta);
            CHECK(lhs.poly == reduce_mod_sphere(rhs));
          }
        }
      }
    }
  }
}
