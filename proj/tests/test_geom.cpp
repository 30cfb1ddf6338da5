#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "branchkit/geom.hpp"
#include "branchkit/orthrep.hpp"

using namespace branchkit;

namespace {

Real3 to_real(const GMat& m) {
  Real3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m.at(i, j).re().get_d();
  return r;
}

Real3 mul(const Real3& a, const Real3& b) {
  Real3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) c[i][j] += a[i][l] * b[l][j];
  return c;
}

// orthogonal factors around a diagonal with entries in [1/3, 3]; keeps the
// condition number below 9 without having to estimate it
Real3 random_test_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_real_distribution<double> diag(1.0 / 3.0, 3.0);
  GMat q1 = cayley_so3(GaussianRational(num(rng), 7), GaussianRational(num(rng), 7),
                       GaussianRational(num(rng), 7));
  GMat q2 = cayley_so3(GaussianRational(num(rng), 9), GaussianRational(num(rng), 9),
                       GaussianRational(num(rng), 9));
  Real3 d{};
  d[0][0] = diag(rng);
  d[1][1] = diag(rng);
  d[2][2] = diag(rng);
  return mul(to_real(q1), mul(d, to_real(q2)));
}

}  // namespace

TEST_CASE("iwasawa coordinates of simple matrices") {
  const Real3 id = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  IwasawaCoords c = iwasawa_gl3(id);
  CHECK(std::fabs(c.y1 - 1) < 1e-14);
  CHECK(std::fabs(c.y2 - 1) < 1e-14);
  CHECK(std::fabs(c.x1) < 1e-14);
  CHECK(std::fabs(c.x2) < 1e-14);
  CHECK(std::fabs(c.x3) < 1e-14);
  CHECK(std::fabs(c.scale - 1) < 1e-14);

  const Real3 g = {{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  c = iwasawa_gl3(g);
  CHECK(std::fabs(c.y1 - 1) < 1e-14);
  CHECK(std::fabs(c.y2 - 2) < 1e-14);
  CHECK(std::fabs(c.scale - 1) < 1e-14);

  // a triangular matrix returns its own coordinates
  IwasawaCoords t;
  t.y1 = 2, t.y2 = 3, t.x1 = -1, t.x2 = 0.5, t.x3 = 4;
  const IwasawaCoords back = iwasawa_gl3(iwasawa_section(t));
  CHECK(std::fabs(back.y1 - t.y1) < 1e-12);
  CHECK(std::fabs(back.y2 - t.y2) < 1e-12);
  CHECK(std::fabs(back.x1 - t.x1) < 1e-12);
  CHECK(std::fabs(back.x2 - t.x2) < 1e-12);
  CHECK(std::fabs(back.x3 - t.x3) < 1e-12);
  CHECK(std::fabs(back.scale - 1) < 1e-12);
}

TEST_CASE("iwasawa round trip on random well-conditioned matrices") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const Real3 g = random_test_matrix(rng);
    const IwasawaCoords c = iwasawa_gl3(g);
    CHECK(c.y1 > 0);
    CHECK(c.y2 > 0);
    CHECK(c.scale > 0);
    CHECK(orthogonality_defect(orthogonal_part(g, c)) < 1e-10);
    CHECK(reconstruction_error(g, c) < 1e-10);
  }
}

TEST_CASE("iwasawa rejects degenerate input") {
  const Real3 sing = {{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}};
  CHECK_THROWS_AS(iwasawa_gl3(sing), std::domain_error);
  const Real3 zrow = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}};
  CHECK_THROWS_AS(iwasawa_gl3(zrow), std::domain_error);
}

TEST_CASE("differential of the coordinates at the identity") {
  CHECK(dF_matrix_check(1e-5) < 1e-8);
  CHECK(so3_rate_bound(1e-5) < 1e-7);
  // central differences converge at second order
  const double coarse = dF_matrix_check(1e-3);
  const double fine = dF_matrix_check(1e-4);
  CHECK(fine < coarse / 50);
}

TEST_CASE("pullback coframe matrix") {
  CHECK(pullback_matrix_verify());
  CHECK(pullback_chain_check());
  // dy1 responds only to the weight-0 direction
  const RFMat& W = pullback_matrix();
  CHECK(W.at(0, 2) == geomdetail::table_entry(-1, 0, 0, 0, 0, 0, 1, 1, 0));
  for (size_t c : {0, 1, 3, 4}) CHECK(W.at(0, c).is_zero());
}

TEST_CASE("left translation jacobian") {
  CHECK(left_jacobian_symbolic_check());
  IwasawaCoords at;
  at.y1 = 1, at.y2 = 2, at.x1 = 0, at.x2 = 3, at.x3 = 0;
  CHECK(left_jacobian_fd_check(at, 1e-5) < 1e-7);
  IwasawaCoords at2;
  at2.y1 = 0.7, at2.y2 = 1.9, at2.x1 = -2, at2.x2 = 0.3, at2.x3 = 5;
  CHECK(left_jacobian_fd_check(at2, 1e-5) < 1e-6);
}

TEST_CASE("wedge tables match the references") {
  CHECK(q_matrix_verify(2));
  CHECK(q_matrix_verify(3));
  CHECK_THROWS_AS(q_matrix(4), std::invalid_argument);
  CHECK(q_matrix_reference(2).at(0, 1) == geomdetail::table_entry(1, 0, 0, 0, 0, 0, 2, 1, 1));
  // even-weight degree-2 columns carry sign +1, so they agree verbatim
  for (size_t col : {1, 3, 5})
    for (size_t row = 0; row < 10; ++row)
      CHECK(q_matrix(2).at(row, col) == q_matrix_reference(2).at(row, col));
}

TEST_CASE("block restriction identities") {
  CHECK(iota_vanishing_check());
  CHECK(iota_middle_check());
  CHECK(iota_volume_check());
  CHECK(iota_flip_check());

  const RestrictedForms& f = iota_pullback_forms();
  const VariableSet& rv = restricted_vars();
  // weight ±2 restrictions: the dy2^dx2 part cancels exactly and the
  // surviving components sit over 2*y1*u^2
  const MultiPoly den = GaussianRational(2) * (MultiPoly::variable(rv, "y1") *
                                               MultiPoly::variable(rv, "u", 2));
  const GaussianRational I = GaussianRational::i();
  CHECK(f.omega[1].comps[0] == RationalFunction(MultiPoly::constant(rv, GaussianRational(1)), den));
  CHECK(f.omega[1].comps[1] == RationalFunction(MultiPoly::constant(rv, GaussianRational(0) - I), den));
  CHECK(f.omega[1].comps[2].is_zero());
  CHECK(f.omega[5].comps[0] == RationalFunction(MultiPoly::constant(rv, GaussianRational(-1)), den));
  CHECK(f.omega[5].comps[1] == RationalFunction(MultiPoly::constant(rv, GaussianRational(0) - I), den));
  CHECK(f.omega[5].comps[2].is_zero());
  // both volume forms coincide
  CHECK(f.volume_plus.comps[0] == f.volume_minus.comps[0]);
}
