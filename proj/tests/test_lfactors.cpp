#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "branchkit/escoh.hpp"
#include "branchkit/lfactors.hpp"

using namespace branchkit;

namespace {

WeilParameter random_param(std::mt19937_64& rng, long weight_offset) {
  std::uniform_int_distribution<long> nu(-6, 6), l(0, 9), δcoin(0, 1);
  WeilParameter p;
  const int n = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < n; ++k) {
    if (rng() % 2)
      p.summands.push_back(dim1_summand(mpq_class(nu(rng), 2), static_cast<int>(δcoin(rng))));
    else
      p.summands.push_back(dim2_summand(mpq_class(nu(rng), 2), 2 * l(rng) + weight_offset));
  }
  return p;
}

}  // namespace

TEST_CASE("tensor products of parameters") {
  const PiParams pp(2, 8, 0);
  // nu2 = -1/2, nu3 = -3, sum = -7/2
  const mpq_class nu23(-7, 2);
  WeilParameter expect;
  expect.summands = {dim2_summand(nu23, 10), dim2_summand(nu23, 6), dim2_summand(nu23, 2)};
  CHECK(pp.pair_param() == expect);

  // the trivial character is a unit
  const WeilParameter unit{{dim1_summand(0, 0)}};
  const WeilParameter q{{dim2_summand(mpq_class(3, 2), 4), dim1_summand(-1, 1)}};
  CHECK(tensor(unit, q) == q);
  CHECK(tensor(q, unit) == q);

  // equal-weight two-dimensional products are out of scope
  const WeilParameter a{{dim2_summand(0, 4)}};
  CHECK_THROWS_AS(tensor(a, a), std::domain_error);
}

TEST_CASE("duality") {
  const WeilParameter p{{dim2_summand(-2, 8)}};
  CHECK(dual(p) == WeilParameter{{dim2_summand(2, 8)}});
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    // keep the two weight sets disjoint by parity offset
    const WeilParameter x = random_param(rng, 0), y = random_param(rng, 1);
    CHECK(dual(dual(x)) == x);
    CHECK(dual(tensor(x, y)) == tensor(dual(x), dual(y)));
  }
}

TEST_CASE("gamma factors and epsilon exponents") {
  const PiParams pp(2, 8, 0);
  GammaProduct g2 = gamma_factor(pp.param2());
  REQUIRE(g2.factors.size() == 1);
  CHECK(g2.factors[0].kind == 'C');
  CHECK(g2.factors[0].shift == mpq_class(1, 2));

  GammaProduct g3 = gamma_factor(pp.param3());
  GammaProduct g3want;
  g3want.factors = {{'C', 1}, {'R', -3}};
  CHECK(g3 == g3want);

  GammaProduct gp = gamma_factor(pp.pair_param());
  GammaProduct gpwant;
  gpwant.factors = {{'C', mpq_class(3, 2)}, {'C', mpq_class(-1, 2)}, {'C', mpq_class(-5, 2)}};
  CHECK(gp == gpwant);
  CHECK(gamma_str(g3) == "Gamma_C(s + 1) Gamma_R(s - 3)");

  for (long l3 = 2; l3 <= 12; l3 += 2)
    for (long l2 = 1; l2 < l3; ++l2)
      for (int delta = 0; delta <= 1; ++delta) {
        const PiParams q(l2, l3, delta);
        CHECK(epsilon_exponent(q.param2()) == (l2 + 1) % 4);
        CHECK(epsilon_exponent(q.param3()) == (l3 + 1 + delta) % 4);
        CHECK(epsilon_exponent(q.pair_param()) == (2 * l3 + l2 + 3) % 4);
      }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PiParams(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(PiParams(2, 7), std::invalid_argument);
  CHECK_THROWS_AS(PiParams(8, 8), std::invalid_argument);
  CHECK_THROWS_AS(PiParams(2, 8, 2), std::invalid_argument);
}

TEST_CASE("critical regions") {
  CHECK(critical_points(PiParams(2, 8)) == std::vector<long>{5, 6});
  CHECK(critical_points(PiParams(4, 6)) == std::vector<long>{5, 6});
  CHECK(critical_points(PiParams(2, 4)) == std::vector<long>{3, 4});

  for (long l3 = 2; l3 <= 20; l3 += 2)
    for (long l2 = 1; l2 < l3; ++l2)
      for (int delta = 0; delta <= 1; ++delta) {
        const PiParams pp(l2, l3, delta);
        const std::vector<long> closed = critical_points(pp);
        CHECK(critical_points_by_poles(pp) == closed);
        std::vector<long> hodge;
        for (long m = -(l3 + l2); m <= 2 * (l3 + l2) + 3; ++m)
          if (is_critical_by_hodge(pp, m)) hodge.push_back(m);
        CHECK(hodge == closed);
      }
}

TEST_CASE("hodge types") {
  const PiParams pp(2, 8);
  CHECK(is_critical_by_hodge(pp, 5));
  CHECK_FALSE(is_critical_by_hodge(pp, 7));
  const std::vector<std::pair<long, long>> types = hodge_types(pp, 5);
  const std::vector<std::pair<long, long>> want = {{5, -5}, {3, -3}, {1, -1},
                                                   {-1, 1}, {-3, 3}, {-5, 5}};
  CHECK(types == want);
}

TEST_CASE("pole engine and numeric gamma values") {
  // Gamma_R(s+a) Gamma_R(s+a+1) has the pole set of Gamma_C(s+a)
  for (int anum = -6; anum <= 6; ++anum)
    for (int aden : {1, 2}) {
      const mpq_class a(anum, aden);
      GammaProduct pairR;
      pairR.factors = {{'R', a}, {'R', a + 1}};
      const GammaFactor fc{'C', a};
      for (int snum = -20; snum <= 8; ++snum)
        for (int sden : {1, 2}) {
          const mpq_class s(snum, sden);
          CHECK(has_pole_at(pairR, s) == has_pole_at(fc, s));
        }
    }

  CHECK(std::fabs(gamma_R_value(1.0) - 1.0) < 1e-12);
  CHECK(std::fabs(gamma_C_value(1.0) - 1.0 / M_PI) < 1e-12);
  CHECK(std::fabs(gamma_C_value(2.0) - 1.0 / (2 * M_PI * M_PI)) < 1e-12);
}

TEST_CASE("main constant") {
  const MainConstant c1 = main_constant(PiParams(2, 8, 0), 5);
  CHECK(c1.parity == -1);
  CHECK(c1.scalar == GaussianRational(3));
  CHECK(c1.binoms == GaussianRational(3));
  CHECK(c1.assembly_identity);

  const MainConstant c2 = main_constant(PiParams(2, 8, 0), 6);
  CHECK(c2.parity == 1);
  CHECK(c2.scalar == GaussianRational(-3) * GaussianRational::i());

  CHECK_THROWS_AS(main_constant(PiParams(2, 8, 0), 7), std::domain_error);

  for (long l3 = 2; l3 <= 20; l3 += 2)
    for (long l2 = 1; l2 < l3; ++l2)
      for (int delta = 0; delta <= 1; ++delta) {
        const PiParams pp(l2, l3, delta);
        for (long m : critical_points(pp)) {
          const MainConstant c = main_constant(pp, m);
          CHECK(c.assembly_identity);
          CHECK_FALSE(c.binoms.is_zero());
          // parity agrees with the cup-pairing sign for the same data
          CHECK(c.parity == cup_constants(l3 + 1, delta, l2, m).sign_flip);
        }
      }
}

TEST_CASE("auxiliary constants") {
  const AuxConstants a = aux_constants(PiParams(2, 8, 0), 5);
  CHECK(a.modified_exponent == -9);
  CHECK(a.nabla_coefficient ==
        GaussianRational(0) - GaussianRational::i() * GaussianRational(1, 3));
  CHECK(a.e_infinity == -1);
  CHECK(a.omega2 == -1);
  CHECK(a.omega3 == -1);
  CHECK_THROWS_AS(aux_constants(PiParams(2, 8, 0), 2), std::domain_error);
}
