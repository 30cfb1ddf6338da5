#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "branchkit/matrix.hpp"
#include "branchkit/multipoly.hpp"
#include "branchkit/ratfunc.hpp"
#include "branchkit/scalar.hpp"

using namespace branchkit;

namespace {

GaussianRational rand_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
  return GaussianRational(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

MultiPoly rand_poly(std::mt19937_64& rng, const VariableSet& vars, int nterms, int maxdeg) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  MultiPoly p(vars);
  for (int t = 0; t < nterms; ++t) {
    Expo e(vars.size(), 0);
    for (size_t k = 0; k < vars.size(); ++k) e[k] = deg(rng);
    p.add_term(e, rand_scalar(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("powers of i") {
  CHECK(power_of_i(0) == GaussianRational(1));
  CHECK(power_of_i(2) == GaussianRational(-1));
  CHECK(power_of_i(-1) == -GaussianRational::i());
  CHECK(GaussianRational::i() * power_of_i(-1) == GaussianRational(1));
  for (long a = -8; a <= 8; ++a)
    for (long b = -8; b <= 8; ++b) CHECK(power_of_i(a) * power_of_i(b) == power_of_i(a + b));
}

TEST_CASE("field inverse") {
  CHECK(field_inverse(GaussianRational(2)) == GaussianRational(1, 2));
  CHECK(field_inverse(GaussianRational::i()) == -GaussianRational::i());
  GaussianRational x(1, 1);
  x = x + GaussianRational::i();  // 1 + i
  GaussianRational inv = field_inverse(x);
  CHECK(inv == GaussianRational(mpq_class(1, 2), mpq_class(-1, 2)));
  CHECK(x * inv == GaussianRational(1));
  CHECK_THROWS_AS(field_inverse(GaussianRational(0)), std::domain_error);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    GaussianRational r = rand_scalar(rng);
    if (r.is_zero()) continue;
    CHECK(field_inverse(field_inverse(r)) == r);
    CHECK(r * field_inverse(r) == GaussianRational(1));
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    GaussianRational a = rand_scalar(rng), b = rand_scalar(rng), c = rand_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("scalar text round trip") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    GaussianRational a = rand_scalar(rng);
    CHECK(parse_scalar(a.str()) == a);
  }
  CHECK(GaussianRational(3, 2).str() == "3/2");
  CHECK(parse_scalar("-1/2*i") == GaussianRational(mpq_class(0), mpq_class(-1, 2)));
  CHECK(parse_scalar("2 - i") == GaussianRational(mpq_class(2), mpq_class(-1)));
}

TEST_CASE("partial derivatives") {
  VariableSet V({"X", "Y", "Z", "C"});
  MultiPoly x2y = MultiPoly::variable(V, "X", 2) * MultiPoly::variable(V, "Y");
  CHECK(partial_derivative(x2y, "X", 1) ==
        GaussianRational(2) * MultiPoly::variable(V, "X") * MultiPoly::variable(V, "Y"));
  MultiPoly zc = MultiPoly::variable(V, "Z") * MultiPoly::variable(V, "C");
  CHECK(partial_derivative(partial_derivative(zc, "Z", 1), "C", 1) == MultiPoly::constant(V, GaussianRational(1)));
  CHECK(partial_derivative(MultiPoly::variable(V, "Y"), "X", 1).is_zero());
  CHECK_THROWS_AS(partial_derivative(x2y, "W", 1), std::invalid_argument);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    MultiPoly p = rand_poly(rng, V, 6, 4);
    CHECK(partial_derivative(partial_derivative(p, "X", 1), "Y", 1) ==
          partial_derivative(partial_derivative(p, "Y", 1), "X", 1));
  }
}

TEST_CASE("substitution") {
  VariableSet V({"X", "Y", "A", "B"});
  MultiPoly xb = MultiPoly::variable(V, "X") * MultiPoly::variable(V, "B");
  MultiPoly img = substitute(xb, {{"B", MultiPoly::variable(V, "X")}});
  CHECK(embed(img, V) == MultiPoly::variable(V, "X", 2));

  MultiPoly xa = MultiPoly::variable(V, "X") * MultiPoly::variable(V, "A");
  MultiPoly img2 = substitute(xa, {{"A", -MultiPoly::variable(V, "Y")}});
  CHECK(embed(img2, V) == -(MultiPoly::variable(V, "X") * MultiPoly::variable(V, "Y")));

  VariableSet W({"y2", "u"});
  MultiPoly y2cubed = MultiPoly::variable(W, "y2", 3);
  CHECK(embed(substitute(y2cubed, {{"y2", MultiPoly::variable(W, "u", 2)}}), W) ==
        MultiPoly::variable(W, "u", 6));
}

TEST_CASE("power expansion") {
  VariableSet V({"X", "Y", "Z"});
  MultiPoly s = MultiPoly::variable(V, "X") + MultiPoly::variable(V, "Y") + MultiPoly::variable(V, "Z");
  MultiPoly sq = expand_power(s, 2);
  CHECK(sq.coeff({1, 1, 0}) == from_mpz(factorial(2) / (factorial(1) * factorial(1))));
  CHECK(expand_power(s, 0) == MultiPoly::constant(V, GaussianRational(1)));
  MultiPoly xy = MultiPoly::variable(V, "X") + MultiPoly::variable(V, "Y");
  CHECK(expand_power(xy, 3).coeff({2, 1, 0}) == from_mpz(binom(3, 2)));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    MultiPoly p = rand_poly(rng, V, 3, 2);
    std::map<std::string, MultiPoly> bind = {{"Z", rand_poly(rng, V, 2, 1)}};
    CHECK(embed(substitute(expand_power(p, 3), bind), V) ==
          embed(expand_power(substitute(p, bind), 3), V));
  }
}

TEST_CASE("rational function normalization and equality") {
  VariableSet V({"X", "Y"});
  MultiPoly x = MultiPoly::variable(V, "X"), y = MultiPoly::variable(V, "Y");
  RationalFunction f(x, GaussianRational(2) * y);
  // monic denominator
  CHECK(f.den().leading().second == GaussianRational(1));
  RationalFunction g(x * x, GaussianRational(2) * x * y);
  CHECK(f == g);  // no gcd reduction, equality via cross-multiplication

  std::mt19937_64 rng(6);
  for (int t = 0; t < 12; ++t) {
    MultiPoly a = rand_poly(rng, V, 3, 3), b = rand_poly(rng, V, 3, 3), c = rand_poly(rng, V, 2, 2);
    if (b.is_zero() || c.is_zero()) continue;
    RationalFunction u(a, b);
    RationalFunction v(a * c, b * c);
    CHECK(u == v);
    CHECK(v == u);
    RationalFunction w(a * c * c, b * c * c);
    CHECK(u == w);  // transitivity leg
  }
}

TEST_CASE("rational function calculus") {
  VariableSet V({"X", "Y"});
  MultiPoly x = MultiPoly::variable(V, "X"), y = MultiPoly::variable(V, "Y");
  RationalFunction f(x, y);
  RationalFunction df = derivative(f, "X");
  CHECK(df == RationalFunction(MultiPoly::constant(V, GaussianRational(1)), y));
  RationalFunction dfy = derivative(f, "Y");
  CHECK(dfy == RationalFunction(-x, y * y));
  // quotient rule on a product
  RationalFunction g = f * f;
  CHECK(derivative(g, "Y") == GaussianRational(2) * f * dfy);
}

TEST_CASE("matrix determinants and inverses") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 15; ++t) {
    size_t n = 3 + t % 2;
    Matrix<GaussianRational> m(n, n, GaussianRational(0));
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) m.at(r, c) = rand_scalar(rng);
    if (m.det().is_zero()) continue;
    Matrix<GaussianRational> id = Matrix<GaussianRational>::identity(n, GaussianRational(0), GaussianRational(1));
    CHECK(m * m.inverse() == id);
    CHECK(m.inverse() * m == id);
  }
}

TEST_CASE("matrix compound multiplicativity") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 6; ++t) {
    Matrix<GaussianRational> a(4, 4, GaussianRational(0)), b(4, 4, GaussianRational(0));
    for (size_t r = 0; r < 4; ++r)
      for (size_t c = 0; c < 4; ++c) {
        a.at(r, c) = rand_scalar(rng);
        b.at(r, c) = rand_scalar(rng);
      }
    for (size_t k = 2; k <= 3; ++k) CHECK((a * b).compound(k) == a.compound(k) * b.compound(k));
  }
}

TEST_CASE("matrix kernel") {
  // rank-1 matrix: kernel dimension 2
  Matrix<GaussianRational> m(2, 3, GaussianRational(0));
  m.at(0, 0) = GaussianRational(1);
  m.at(0, 1) = GaussianRational(2);
  m.at(0, 2) = GaussianRational(3);
  m.at(1, 0) = GaussianRational(2);
  m.at(1, 1) = GaussianRational(4);
  m.at(1, 2) = GaussianRational(6);
  auto ker = m.kernel_basis();
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) {
    for (size_t r = 0; r < 2; ++r) {
      GaussianRational acc(0);
      for (size_t c = 0; c < 3; ++c) acc += m.at(r, c) * v[c];
      CHECK(acc.is_zero());
    }
  }
  CHECK(m.rank() == 1);
  // zero-row edge case
  Matrix<GaussianRational> z(0, 4, GaussianRational(0));
  CHECK(z.kernel_basis().size() == 4);
}

TEST_CASE("polynomial text round trip") {
  VariableSet V({"X", "Y"});
  std::mt19937_64 rng(9);
  for (int t = 0; t < 25; ++t) {
    MultiPoly p = rand_poly(rng, V, 5, 4);
    CHECK(parse_poly(p.str(), V) == p);
  }
  CHECK(parse_poly("X^2*Y - 3/2*i*Y + (1 + i)", V).str() == "X^2*Y - 3/2*i*Y + (1 + i)");
}
