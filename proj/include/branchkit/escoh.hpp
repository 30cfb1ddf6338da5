#pragma once
// Lie bases and adjoint actions, the exterior-power calculus on the 5-dim
// symmetric-traceless space, the hardcoded basis-change matrices with their
// block-diagonalization, the omega-form basis, the big coefficient matrix
// script-P with its closed forms, and the pairing that produces the final
// rational constants.

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "glrep.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"
#include "orthrep.hpp"

namespace branchkit {

using GMat = Matrix<GaussianRational>;

// ---- Lie bases -------------------------------------------------------------

inline GMat lie_E() {
  GMat m(2, 2, GaussianRational(0));
  m.at(0, 1) = GaussianRational(1, 2);
  m.at(1, 0) = GaussianRational(1, 2);
  return m;
}
inline GMat lie_H() {
  GMat m(2, 2, GaussianRational(0));
  m.at(0, 0) = GaussianRational(1, 2);
  m.at(1, 1) = GaussianRational(-1, 2);
  return m;
}

namespace detail {
inline GMat mat3(std::array<std::array<long, 3>, 3> rows) {
  GMat m(3, 3, GaussianRational(0));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.at(r, c) = GaussianRational(rows[r][c]);
  return m;
}
}  // namespace detail

inline GMat lie_A1() { return detail::mat3({{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}}); }
inline GMat lie_A2() { return detail::mat3({{{1, 0, 0}, {0, 1, 0}, {0, 0, -2}}}); }
inline GMat lie_N1() { return detail::mat3({{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}}); }
inline GMat lie_N2() { return detail::mat3({{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}}); }
inline GMat lie_N3() { return detail::mat3({{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}}); }

// Basis (X_2, ..., X_-2) of the complex symmetric traceless 3x3 matrices,
// normalized so that the quadratic form z X_mu t(z) equals the spherical
// basis vector v_mu of degree 2.  With this normalization conjugation by a
// rotation matches the degree-2 representation matrix exactly.
inline std::vector<GMat> lie_X_basis() {
  GaussianRational i = GaussianRational::i(), half(1, 2);
  return {lie_A1() + i * lie_N1(), half * (lie_N2() + i * lie_N3()),
          GaussianRational(-1, 3) * lie_A2(), -half * (lie_N2() - i * lie_N3()),
          lie_A1() - i * lie_N1()};
}

// Coordinates of a complex symmetric traceless 3x3 matrix in the X basis,
// i.e. the v-coordinates of the quadratic form z M t(z).
inline std::vector<GaussianRational> x_coordinates(const GMat& M) {
  GaussianRational i = GaussianRational::i(), half(1, 2);
  GaussianRational a = half * (M.at(0, 0) - M.at(1, 1));
  GaussianRational c = M.at(0, 1);
  GaussianRational d = M.at(0, 2);
  GaussianRational e = M.at(1, 2);
  return {half * (a - i * c), d - i * e, GaussianRational(3, 2) * M.at(2, 2), -(d + i * e),
          half * (a + i * c)};
}

// Ad(u) on span(E, H), column j = coordinates of u E u^-1 (resp. u H u^-1).
inline GMat ad_gl2(const GMat& u) {
  if (u.rows() != 2 || u.cols() != 2 || !is_orthogonal(u) || u.det() != GaussianRational(1))
    throw std::invalid_argument("ad_gl2: need a rational special orthogonal 2x2 matrix");
  GMat uinv = u.inverse();
  GMat R(2, 2, GaussianRational(0));
  GMat basis[2] = {lie_E(), lie_H()};
  for (int j = 0; j < 2; ++j) {
    GMat M = u * basis[j] * uinv;
    // E carries 1/2 off-diagonal, H carries 1/2 diagonal
    R.at(0, j) = GaussianRational(2) * M.at(0, 1);
    R.at(1, j) = GaussianRational(2) * M.at(0, 0);
  }
  return R;
}

// Ad(u) on span(X_2,...,X_-2); equals the degree-2 orthogonal representation
// matrix of u.
inline GMat ad_gl3(const GMat& u) {
  if (u.rows() != 3 || u.cols() != 3 || !is_orthogonal(u) || u.det() != GaussianRational(1))
    throw std::invalid_argument("ad_gl3: need a rational special orthogonal 3x3 matrix");
  GMat uinv = u.inverse();
  std::vector<GMat> X = lie_X_basis();
  GMat R(5, 5, GaussianRational(0));
  for (int j = 0; j < 5; ++j) {
    std::vector<GaussianRational> coords = x_coordinates(u * X[j] * uinv);
    for (int r = 0; r < 5; ++r) R.at(r, j) = coords[r];
  }
  return R;
}

// Matrix of the induced action on the i-th wedge power, lexicographic
// index-pair basis.
inline GMat wedge_ad(size_t i, const GMat& u) { return ad_gl3(u).compound(i); }

// ---- hardcoded basis-change matrices ---------------------------------------

namespace detail {
struct Frac {
  long n, d;
};
inline GMat from_fracs(size_t rows, size_t cols, const Frac* data) {
  GMat m(rows, cols, GaussianRational(0));
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m.at(r, c) = GaussianRational(data[r * cols + c].n, data[r * cols + c].d);
  return m;
}
}  // namespace detail

// Columns split the wedge space into a 3-dim and a 7-dim isotypic block.
inline const GMat& p_tilde(size_t i) {
  using detail::Frac;
  static const Frac t2[100] = {
      {0,1},{0,1},{0,1},{1,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{1,2},{0,1},{0,1},{0,1},{0,1},{0,1},
      {-1,5},{0,1},{0,1},{0,1},{0,1},{1,5},{0,1},{0,1},{0,1},{0,1},
      {0,1},{-1,10},{0,1},{0,1},{0,1},{0,1},{1,20},{0,1},{0,1},{0,1},
      {3,5},{0,1},{0,1},{0,1},{0,1},{2,5},{0,1},{0,1},{0,1},{0,1},
      {0,1},{1,5},{0,1},{0,1},{0,1},{0,1},{2,5},{0,1},{0,1},{0,1},
      {0,1},{0,1},{-1,5},{0,1},{0,1},{0,1},{0,1},{1,5},{0,1},{0,1},
      {0,1},{0,1},{3,5},{0,1},{0,1},{0,1},{0,1},{2,5},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{1,2},{0,1},
      {0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{1,1}};
  static const Frac t3[100] = {
      {0,1},{0,1},{0,1},{3,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{1,1},{0,1},{0,1},{0,1},{0,1},{0,1},
      {1,1},{0,1},{0,1},{0,1},{0,1},{1,5},{0,1},{0,1},{0,1},{0,1},
      {-2,1},{0,1},{0,1},{0,1},{0,1},{3,5},{0,1},{0,1},{0,1},{0,1},
      {0,1},{1,2},{0,1},{0,1},{0,1},{0,1},{3,10},{0,1},{0,1},{0,1},
      {0,1},{0,1},{1,1},{0,1},{0,1},{0,1},{0,1},{1,5},{0,1},{0,1},
      {0,1},{-4,1},{0,1},{0,1},{0,1},{0,1},{3,5},{0,1},{0,1},{0,1},
      {0,1},{0,1},{-2,1},{0,1},{0,1},{0,1},{0,1},{3,5},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{1,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{3,1}};
  static const GMat m2 = detail::from_fracs(10, 10, t2);
  static const GMat m3 = detail::from_fracs(10, 10, t3);
  if (i == 2) return m2;
  if (i == 3) return m3;
  throw std::invalid_argument("p_tilde: degree must be 2 or 3");
}

// Coefficient matrices of the omega-form basis over the dX wedge basis.
inline const GMat& p_matrix(size_t i) {
  using detail::Frac;
  static const Frac t2[70] = {
      {1,1},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{2,1},{0,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{3,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{4,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{1,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{2,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{3,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{1,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{0,1},{2,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{1,1}};
  static const Frac t3[70] = {
      {1,3},{0,1},{0,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{1,1},{0,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{2,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{1,1},{0,1},{0,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{8,3},{0,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{2,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{1,3},{0,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{1,1},{0,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{0,1},{1,1},{0,1},
      {0,1},{0,1},{0,1},{0,1},{0,1},{0,1},{1,3}};
  static const GMat m2 = detail::from_fracs(10, 7, t2);
  static const GMat m3 = detail::from_fracs(10, 7, t3);
  if (i == 2) return m2;
  if (i == 3) return m3;
  throw std::invalid_argument("p_matrix: degree must be 2 or 3");
}

// P^i is t((p_tilde^i)^-1) minus its first three columns.
inline GMat p_matrix_from_tilde(size_t i) {
  return p_tilde(i).inverse().transpose().drop_leading_columns(3);
}

// p_tilde^{-1} Mtilde^i(u) p_tilde == blockdiag(M_(1,0)(u), M_(3,0)(u))
inline bool p_tilde_block_check(size_t i, const GMat& u) {
  GMat conj = p_tilde(i).inverse() * wedge_ad(i, u) * p_tilde(i);
  GMat m1 = matrix_M(OrthWeight3(1, 0), u);
  GMat m3 = matrix_M(OrthWeight3(3, 0), u);
  for (size_t r = 0; r < 10; ++r)
    for (size_t c = 0; c < 10; ++c) {
      GaussianRational want(0);
      if (r < 3 && c < 3) want = m1.at(r, c);
      if (r >= 3 && c >= 3) want = m3.at(r - 3, c - 3);
      if (conj.at(r, c) != want) return false;
    }
  return true;
}

struct WedgeForm {
  size_t degree;
  std::vector<GaussianRational> coeffs;  // over the lexicographic dX wedge basis
};

// (omega_3, ..., omega_-3) = (dX wedge row) * P^i
inline std::vector<WedgeForm> omega_basis(size_t i) {
  const GMat& P = p_matrix(i);
  std::vector<WedgeForm> out;
  for (size_t c = 0; c < 7; ++c) {
    WedgeForm f{i, std::vector<GaussianRational>(10, GaussianRational(0))};
    for (size_t r = 0; r < 10; ++r) f.coeffs[r] = P.at(r, c);
    out.push_back(std::move(f));
  }
  return out;
}

// Dual action on coefficient columns: forms transform by t(M^-1).
inline bool omega_equivariance_check(size_t i, const GMat& u) {
  GMat dual = wedge_ad(i, u).inverse().transpose();
  GMat lhs = dual * p_matrix(i);
  GMat rhs = p_matrix(i) * matrix_M(OrthWeight3(3, 0), u).inverse().transpose();
  return lhs == rhs;
}

// ---- the coefficient matrix script-P ---------------------------------------

struct ScriptP {
  long lambda3;
  int delta;
  long w;                                      // (lambda3 - 3) / 2
  std::vector<std::vector<MultiPoly>> entry;   // (2*lambda3+1) x 7, over X..C
};

namespace detail {

inline const VariableSet& big_vars() {
  static const VariableSet v({"X", "Y", "Z", "A", "B", "C", "z1", "z2", "z3"});
  return v;
}

// z3-exponent reduction inside the 9-variable ring
inline MultiPoly reduce_sphere_big(const MultiPoly& p) {
  const VariableSet& V = p.vars();
  int i3 = V.index_or_throw("z3");
  MultiPoly msphere =
      -(MultiPoly::variable(V, "z1", 2) + MultiPoly::variable(V, "z2", 2));
  MultiPoly out(V);
  for (const auto& [e, c] : p.terms()) {
    int q = e[i3] / 2, r = e[i3] % 2;
    Expo base = e;
    base[i3] = r;
    out += MultiPoly::monomial(V, base, c) * msphere.pow(q);
  }
  return out;
}

}  // namespace detail

// Expands ((X,Y,Z).z)^w ((A,B,C).z)^w v^{(3,delta)}_beta in the degree
// lambda3 v-basis; entry (alpha, beta) is the coefficient polynomial.
inline ScriptP build_script_P(long lambda3, int delta) {
  if (lambda3 < 3 || lambda3 % 2 == 0)
    throw std::invalid_argument("build_script_P: lambda3 must be odd and >= 3");
  long w = (lambda3 - 3) / 2;
  const VariableSet& V = detail::big_vars();
  const auto& vb = detail::v_basis_data(lambda3);

  MultiPoly lin_xyz(V), lin_abc(V);
  const char* xyz[3] = {"X", "Y", "Z"};
  const char* abc[3] = {"A", "B", "C"};
  const char* zs[3] = {"z1", "z2", "z3"};
  for (int k = 0; k < 3; ++k) {
    lin_xyz += MultiPoly::variable(V, xyz[k]) * MultiPoly::variable(V, zs[k]);
    lin_abc += MultiPoly::variable(V, abc[k]) * MultiPoly::variable(V, zs[k]);
  }
  MultiPoly core = lin_xyz.pow(w) * lin_abc.pow(w);

  size_t nrows = 2 * lambda3 + 1;
  ScriptP sp{lambda3, delta, w,
             std::vector<std::vector<MultiPoly>>(
                 nrows, std::vector<MultiPoly>(7, MultiPoly(gl3_vars())))};
  const std::map<Expo, size_t>& mono_index = vb.mono_index;
  int zi1 = V.index_or_throw("z1"), zi2 = V.index_or_throw("z2"), zi3 = V.index_or_throw("z3");
  for (long beta = 3; beta >= -3; --beta) {
    HarmonicElement vb3 = v_basis3(OrthWeight3(3, delta), beta >= 0 ? beta : -beta,
                                   beta >= 0 ? 1 : -1);
    MultiPoly col = detail::reduce_sphere_big(core * embed(vb3.poly, V));
    // coefficients over the reduced z-monomials, still polynomial in X..C
    std::vector<MultiPoly> mono_coeff(nrows, MultiPoly(gl3_vars()));
    for (const auto& [e, c] : col.terms()) {
      Expo ze = {e[zi1], e[zi2], e[zi3]};
      Expo xe(6, 0);
      for (int k = 0; k < 6; ++k) xe[k] = e[k];
      mono_coeff[mono_index.at(ze)].add_term(xe, c);
    }
    // v-coordinates: apply the inverse change of basis over the monomials
    for (size_t r = 0; r < nrows; ++r) {
      MultiPoly acc(gl3_vars());
      for (size_t k = 0; k < nrows; ++k) {
        const GaussianRational& f = vb.from_mono.at(r, k);
        if (!f.is_zero()) acc += f * mono_coeff[k];
      }
      sp.entry[r][3 - beta] = acc;  // row r holds alpha = lambda3 - r
    }
  }
  return sp;
}

inline const MultiPoly& script_P_entry(const ScriptP& sp, long alpha, long beta) {
  if (alpha < -sp.lambda3 || alpha > sp.lambda3 || beta < -3 || beta > 3)
    throw std::invalid_argument("script_P_entry: index out of range");
  return sp.entry[sp.lambda3 - alpha][3 - beta];
}

// True iff every denominator in every entry is a power of two.
inline bool script_P_coeffs_dyadic(const ScriptP& sp) {
  for (const auto& row : sp.entry)
    for (const auto& p : row)
      for (const auto& [e, c] : p.terms()) {
        for (const mpq_class* part : {&c.re(), &c.im()}) {
          mpz_class den = part->get_den();
          while (den % 2 == 0) den /= 2;
          if (den != 1) return false;
        }
      }
  return true;
}

// rho(u) script_P == M_lambda(u)^-1 script_P M_(3,0)(u)
inline bool script_P_equivariance_check(const ScriptP& sp, const GMat& u) {
  WeightGL3 wt(sp.w, sp.w, sp.w);
  size_t nrows = 2 * sp.lambda3 + 1;
  GMat Ml_inv = matrix_M(OrthWeight3(sp.lambda3, 0), u).inverse();
  GMat M3 = matrix_M(OrthWeight3(3, 0), u);
  for (size_t r = 0; r < nrows; ++r)
    for (size_t c = 0; c < 7; ++c) {
      MultiPoly lhs = act_gl3_poly(u, sp.entry[r][c], wt);
      MultiPoly rhs(gl3_vars());
      for (size_t k = 0; k < nrows; ++k) {
        if (Ml_inv.at(r, k).is_zero()) continue;
        for (size_t l = 0; l < 7; ++l) {
          GaussianRational f = Ml_inv.at(r, k) * M3.at(l, c);
          if (!f.is_zero()) rhs += f * sp.entry[k][l];
        }
      }
      if (!(lhs == rhs)) return false;
    }
  return true;
}

// ---- trinomial coefficients and the closed forms ---------------------------

// coefficient of X^i Y^j Z^k in (X+Y+Z)^e; zero off support
inline mpz_class trinomial(long e, long i, long j, long k) {
  if (i < 0 || j < 0 || k < 0 || i + j + k != e) return mpz_class(0);
  return mpz_class(factorial(e) / (factorial(i) * factorial(j) * factorial(k)));
}

namespace detail {
// (-u + iv)^e (u^2 + v^2)^f as a polynomial in the two named variables.
// For e < 0 the factor (-u+iv)(u+iv) = -(u^2+v^2) converts the expression to
// (-1)^|e| (u+iv)^|e| (u^2+v^2)^{f-|e|}; the callers' trinomial supports
// guarantee f - |e| >= 0.
inline MultiPoly conj_pair_power(const VariableSet& V, const char* u, const char* v, long e,
                                 long f) {
  MultiPoly minus = -MultiPoly::variable(V, u) + GaussianRational::i() * MultiPoly::variable(V, v);
  MultiPoly plus = MultiPoly::variable(V, u) + GaussianRational::i() * MultiPoly::variable(V, v);
  MultiPoly norm = MultiPoly::variable(V, u, 2) + MultiPoly::variable(V, v, 2);
  if (e >= 0) return minus.pow(e) * norm.pow(f);
  return sign_power(-e) * (plus.pow(-e) * norm.pow(f + e));
}
}  // namespace detail

// Entry (alpha, beta) via the double-sum closed form. The summation indices
// a, j, b range over all integers; the two trinomial supports are the only
// constraints, and they keep every base exponent of conj_pair_power legal.
inline MultiPoly closed_form_P_entry(long lambda3, long alpha, long beta) {
  if (lambda3 < 3 || lambda3 % 2 == 0)
    throw std::invalid_argument("closed_form_P_entry: lambda3 must be odd and >= 3");
  if (alpha < -lambda3 || alpha > lambda3 || beta < -3 || beta > 3)
    throw std::invalid_argument("closed_form_P_entry: index out of range");
  long w = (lambda3 - 3) / 2;
  const VariableSet& V = gl3_vars();
  MultiPoly Zv = MultiPoly::variable(V, "Z");
  MultiPoly Cv = MultiPoly::variable(V, "C");

  MultiPoly acc(V);
  for (long j = alpha; j <= alpha + w; ++j)  // first trinomial needs j - alpha in [0, w]
    for (long k = 0; k <= w; ++k) {
      long a = 2 * j + k - alpha - w;  // degree constraint on the X,Y,Z side
      mpz_class h1 = trinomial(w, j - a, j - alpha, k);
      if (h1 == 0) continue;
      for (long c = 0; c <= w; ++c) {
        if ((w - a - beta - c) % 2 != 0) continue;
        long b = (w - a - beta - c) / 2;  // degree constraint on the A,B,C side
        mpz_class h2 = trinomial(w, b + a, b + beta, c);
        if (h2 == 0) continue;
        GaussianRational coef = GaussianRational(-1, 4).pow(j + b) * from_mpz(h1) * from_mpz(h2);
        acc += coef * (detail::conj_pair_power(V, "X", "Y", alpha - a, j - alpha) * Zv.pow(k) *
                       detail::conj_pair_power(V, "A", "B", a - beta, b + beta) * Cv.pow(c));
      }
    }
  return GaussianRational(2).pow(alpha - beta) * acc;
}

// nabla^n applied to entry (alpha, beta), as a closed single sum. Vanishes
// unless n1 + alpha - beta is even and both the S and T exponents are
// nonnegative.
inline MultiPoly closed_form_nabla_P(long lambda3, const WeightGL2& n, long alpha, long beta) {
  if (lambda3 < 3 || lambda3 % 2 == 0)
    throw std::invalid_argument("closed_form_nabla_P: lambda3 must be odd and >= 3");
  long w = (lambda3 - 3) / 2;
  if (!in_xi2(n, WeightGL3(w, w, w)))
    throw std::invalid_argument("closed_form_nabla_P: n not in Xi_2");
  if (alpha < -lambda3 || alpha > lambda3 || beta < -3 || beta > 3)
    throw std::invalid_argument("closed_form_nabla_P: index out of range");
  const VariableSet& V = gl2_vars();
  MultiPoly out(V);
  long n1 = n.n1, n2 = n.n2;
  if ((n1 + alpha - beta) % 2 != 0) return out;
  long se = (n1 + alpha - beta) / 2, te = (n1 - alpha + beta) / 2;
  if (se < 0 || te < 0) return out;

  GaussianRational sum(0);
  // the second coefficient forces b + beta in [0, w], so |b| <= w + 3
  for (long b = -w - 3; b <= w + 3; ++b) {
    mpz_class h1 = trinomial(w, b + (n1 + alpha + beta) / 2 + n2 - w,
                             -b + (n1 - alpha - beta) / 2, 2 * w - n1 - n2);
    if (h1 == 0) continue;
    mpz_class h2 = trinomial(w, -(b + beta) + w - n2, b + beta, n2);
    if (h2 == 0) continue;
    sum += sign_power(b) * from_mpz(h1) * from_mpz(h2);
  }
  if (sum.is_zero()) return out;

  MultiPoly S = -MultiPoly::variable(V, "X") + GaussianRational::i() * MultiPoly::variable(V, "Y");
  MultiPoly T = MultiPoly::variable(V, "X") + GaussianRational::i() * MultiPoly::variable(V, "Y");
  GaussianRational front = GaussianRational(1, 2).pow(n1) * sign_power(w + alpha) *
                           power_of_i(n2 + w) * sum;
  return front * (S.pow(se) * T.pow(te));
}

// Single-term form available on the boundary alpha - beta = +-n1.
inline MultiPoly closed_form_nabla_P_boundary(long lambda3, const WeightGL2& n, long alpha,
                                              long beta) {
  long w = (lambda3 - 3) / 2;
  long n1 = n.n1, n2 = n.n2;
  if (alpha - beta != n1 && alpha - beta != -n1)
    throw std::invalid_argument("closed_form_nabla_P_boundary: need alpha - beta = +-n1");
  const VariableSet& V = gl2_vars();
  GaussianRational c = GaussianRational(-1, 2).pow(n1) * power_of_i(n2 + w) *
                       from_mpz(binom(w, n1 + n2 - w)) * from_mpz(binom(w, w - n2));
  if (alpha - beta == -n1) {
    MultiPoly T = MultiPoly::variable(V, "X") + GaussianRational::i() * MultiPoly::variable(V, "Y");
    return (c * sign_power(n2)) * T.pow(n1);
  }
  MultiPoly S = -MultiPoly::variable(V, "X") + GaussianRational::i() * MultiPoly::variable(V, "Y");
  return (c * sign_power(w)) * S.pow(n1);
}

// ---- pairing and cup-product constants -------------------------------------

// [X^i Y^{n1-i}, X^j Y^{n1-j}] = (-1)^i / binom(n1, i) when i + j = n1,
// extended bilinearly; zero otherwise.
inline GaussianRational pairing_n(const WeightGL2& n, const MultiPoly& p, const MultiPoly& q) {
  MultiPoly pe = embed(p, gl2_vars()), qe = embed(q, gl2_vars());
  if (!pe.is_homogeneous({"X", "Y"}, n.n1) || !qe.is_homogeneous({"X", "Y"}, n.n1))
    throw std::invalid_argument("pairing_n: degree mismatch");
  GaussianRational acc(0);
  for (const auto& [ep, cp] : pe.terms()) {
    long i = ep[0];
    for (const auto& [eq, cq] : qe.terms()) {
      long j = eq[0];
      if (i + j != n.n1) continue;
      GaussianRational weight(mpq_class(mpz_class(1), mpz_class(binom(n.n1, i))), mpq_class(0));
      acc += sign_power(i) * weight * cp * cq;
    }
  }
  return acc;
}

// binom(w, n1+n2-w) * binom(w, w-n2)
inline mpz_class c_constant(long w, const WeightGL2& n) {
  return binom(w, n.n1 + n.n2 - w) * binom(w, w - n.n2);
}

struct CupConstants {
  mpz_class C;                  // product of the two binomials
  GaussianRational prefactor;   // power of i
  int sign_flip;                // relates the two pairing branches
};

inline CupConstants cup_constants(long lambda3, int delta, long l2, long m) {
  long l3 = lambda3 - 1;
  if (l3 < 2 || l3 % 2 != 0) throw std::invalid_argument("cup_constants: bad lambda3");
  long w = l3 / 2 - 1;
  CupConstants out;
  out.C = binom(l3 / 2 - 1, m - l3 / 2 - 1) * binom(l3 / 2 - 1, l3 / 2 + l2 - m);
  out.prefactor = power_of_i(l3 / 2 + 2 * l2 - m - 1);
  out.sign_flip = (m + delta + 1 + w) % 2 == 0 ? 1 : -1;
  return out;
}

}  // namespace branchkit
