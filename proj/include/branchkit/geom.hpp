#pragma once
// Iwasawa coordinates (y1, y2, x1, x2, x3) on invertible real 3x3 matrices
// and the differential calculus of the upper-triangular section: the constant
// differential at the identity, the Jacobian of left translation, the exact
// coordinate matrix of the pulled-back coframe, its wedge-power tables, and
// the restriction of the degree-2 table to the embedded 2x2 block.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "escoh.hpp"
#include "ratfunc.hpp"

namespace branchkit {

using Real3 = std::array<std::array<double, 3>, 3>;
using RFMat = Matrix<RationalFunction>;

// ---------------------------------------------------------------------------
// numeric Iwasawa decomposition  g = scale * F(coords) * k,  k in O(3)
// ---------------------------------------------------------------------------

struct IwasawaCoords {
  double y1 = 1, y2 = 1;
  double x1 = 0, x2 = 0, x3 = 0;
  double scale = 1;  // kept positive; any overall sign lands in k
};

inline double det3(const Real3& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
         g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

inline IwasawaCoords iwasawa_gl3(const Real3& g, double tol = 1e-12) {
  if (std::fabs(det3(g)) <= tol) throw std::domain_error("iwasawa_gl3: matrix singular to tolerance");
  const double a = g[0][0], b = g[0][1], c = g[0][2];
  const double d = g[1][0], e = g[1][1], f = g[1][2];
  const double p = g[2][0], q = g[2][1], r = g[2][2];
  const double s2 = p * p + q * q + r * r;
  if (s2 <= tol) throw std::domain_error("iwasawa_gl3: vanishing bottom row");
  IwasawaCoords w;
  w.scale = std::sqrt(s2);
  w.x1 = (d * p + e * q + f * r) / s2;
  w.x3 = (a * p + b * q + c * r) / s2;
  const double r1 = (d * d + e * e + f * f) / s2 - w.x1 * w.x1;
  if (r1 <= tol) throw std::domain_error("iwasawa_gl3: nonpositive radicand for y1");
  w.y1 = std::sqrt(r1);
  w.x2 = ((a * d + b * e + c * f) / s2 - w.x1 * w.x3) / r1;
  const double r2 = (a * a + b * b + c * c) / s2 - w.x3 * w.x3 - w.x2 * w.x2 * r1;
  if (r2 <= tol) throw std::domain_error("iwasawa_gl3: nonpositive radicand for y2");
  w.y2 = std::sqrt(r2) / w.y1;
  return w;
}

// the section matrix F = [[y1 y2, y1 x2, x3], [0, y1, x1], [0, 0, 1]]
inline Real3 iwasawa_section(const IwasawaCoords& c) {
  return {{{c.y1 * c.y2, c.y1 * c.x2, c.x3}, {0, c.y1, c.x1}, {0, 0, 1}}};
}

// k = (scale * F)^{-1} g, via the closed-form inverse of the section
inline Real3 orthogonal_part(const Real3& g, const IwasawaCoords& c) {
  const double iy1 = 1.0 / c.y1, iy12 = 1.0 / (c.y1 * c.y2);
  const Real3 Finv = {{{iy12, -c.x2 * iy12, (c.x2 * c.x1 - c.x3) * iy12},
                       {0, iy1, -c.x1 * iy1},
                       {0, 0, 1}}};
  Real3 k{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int l = 0; l < 3; ++l) s += Finv[i][l] * g[l][j];
      k[i][j] = s / c.scale;
    }
  return k;
}

inline double orthogonality_defect(const Real3& k) {
  double worst = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int l = 0; l < 3; ++l) s += k[l][i] * k[l][j];
      worst = std::max(worst, std::fabs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

// relative residual of scale * F * k against the input
inline double reconstruction_error(const Real3& g, const IwasawaCoords& c) {
  const Real3 F = iwasawa_section(c), k = orthogonal_part(g, c);
  double worst = 0, scalemax = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int l = 0; l < 3; ++l) s += F[i][l] * k[l][j];
      worst = std::max(worst, std::fabs(c.scale * s - g[i][j]));
      scalemax = std::max(scalemax, std::fabs(g[i][j]));
    }
  return worst / scalemax;
}

// ---------------------------------------------------------------------------
// the differential of the coordinates at the identity
// ---------------------------------------------------------------------------

// central difference of the coordinates along t -> 1 + tX at t = 0
inline std::array<double, 5> coordinate_rates(const Real3& X, double h) {
  Real3 plus{}, minus{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double id = (i == j) ? 1.0 : 0.0;
      plus[i][j] = id + h * X[i][j];
      minus[i][j] = id - h * X[i][j];
    }
  const IwasawaCoords cp = iwasawa_gl3(plus), cm = iwasawa_gl3(minus);
  const double ih = 1.0 / (2 * h);
  return {(cp.y1 - cm.y1) * ih, (cp.y2 - cm.y2) * ih, (cp.x1 - cm.x1) * ih,
          (cp.x2 - cm.x2) * ih, (cp.x3 - cm.x3) * ih};
}

// differential of (y1, y2, x1, x2, x3) at the identity along the five
// directions of lie_X_basis() (columns, weights 2..-2)
inline const GMat& dF_matrix() {
  static const GMat J = [] {
    GMat m(5, 5, GaussianRational(0));
    const GaussianRational I = GaussianRational::i();
    m.at(0, 0) = -1;
    m.at(1, 0) = 2;
    m.at(3, 0) = GaussianRational(2) * I;
    m.at(2, 1) = I;
    m.at(4, 1) = 1;
    m.at(0, 2) = -1;
    m.at(2, 3) = I;
    m.at(4, 3) = -1;
    m.at(0, 4) = -1;
    m.at(1, 4) = 2;
    m.at(3, 4) = GaussianRational(-2) * I;
    return m;
  }();
  return J;
}

// Runs central differences along the real and imaginary parts of each basis
// direction, assembles the complex columns, and returns the largest
// deviation from dF_matrix().
inline double dF_matrix_check(double h) {
  const std::vector<GMat> X = lie_X_basis();
  double worst = 0;
  for (size_t col = 0; col < 5; ++col) {
    Real3 re{}, im{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        re[i][j] = X[col].at(i, j).re().get_d();
        im[i][j] = X[col].at(i, j).im().get_d();
      }
    const std::array<double, 5> rr = coordinate_rates(re, h), ri = coordinate_rates(im, h);
    for (size_t row = 0; row < 5; ++row) {
      const GaussianRational& want = dF_matrix().at(row, col);
      worst = std::max(worst, std::fabs(rr[row] - want.re().get_d()));
      worst = std::max(worst, std::fabs(ri[row] - want.im().get_d()));
    }
  }
  return worst;
}

// the coordinates are constant to first order along antisymmetric directions
inline double so3_rate_bound(double h) {
  const Real3 L12 = {{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  const Real3 L13 = {{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}};
  const Real3 L23 = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}};
  double worst = 0;
  for (const Real3& L : {L12, L13, L23})
    for (double r : coordinate_rates(L, h)) worst = std::max(worst, std::fabs(r));
  return worst;
}

// ---------------------------------------------------------------------------
// exact symbolic calculus over the coordinate field
// ---------------------------------------------------------------------------

inline const std::array<const char*, 5>& coord_names() {
  static const std::array<const char*, 5> n = {"y1", "y2", "x1", "x2", "x3"};
  return n;
}

inline const VariableSet& coord_vars() {
  static const VariableSet v({"y1", "y2", "x1", "x2", "x3"});
  return v;
}

namespace geomdetail {

inline RationalFunction rfc(const VariableSet& v, long n, long d = 1) {
  return RationalFunction::constant(v, GaussianRational(n, d));
}
inline RationalFunction rfv(const VariableSet& v, const std::string& n) {
  return RationalFunction::variable(v, n);
}

// numerator p + q*x2 + r*y2 with Gaussian-integer p, q, r; denominator d*y1^a*y2^b
inline RationalFunction table_entry(long pre, long pim, long qre, long qim, long rre, long rim,
                                    long d, int a, int b) {
  const VariableSet& v = coord_vars();
  const GaussianRational i = GaussianRational::i();
  MultiPoly num =
      MultiPoly::constant(v, GaussianRational(pre) + i * GaussianRational(pim)) +
      (GaussianRational(qre) + i * GaussianRational(qim)) * MultiPoly::variable(v, "x2") +
      (GaussianRational(rre) + i * GaussianRational(rim)) * MultiPoly::variable(v, "y2");
  MultiPoly den =
      GaussianRational(d) * (MultiPoly::variable(v, "y1", a) * MultiPoly::variable(v, "y2", b));
  return RationalFunction(num, den);
}

// the section over an arbitrary variable set, coordinate names supplied in
// (y1, y2, x1, x2, x3) order
inline RFMat section_over(const VariableSet& v, const std::array<std::string, 5>& n) {
  RFMat F(3, 3, rfc(v, 0));
  F.at(0, 0) = rfv(v, n[0]) * rfv(v, n[1]);
  F.at(0, 1) = rfv(v, n[0]) * rfv(v, n[3]);
  F.at(0, 2) = rfv(v, n[4]);
  F.at(1, 1) = rfv(v, n[0]);
  F.at(1, 2) = rfv(v, n[2]);
  F.at(2, 2) = rfc(v, 1);
  return F;
}

// weight-basis coordinates of a symmetric traceless matrix, mirroring
// x_coordinates over rational-function entries
inline std::vector<RationalFunction> x_coordinates_rf(const RFMat& M) {
  const VariableSet& v = M.at(0, 0).vars();
  const RationalFunction half = rfc(v, 1, 2);
  const RationalFunction i = RationalFunction::constant(v, GaussianRational::i());
  const RationalFunction a = half * (M.at(0, 0) - M.at(1, 1));
  const RationalFunction c = M.at(0, 1), d = M.at(0, 2), e = M.at(1, 2);
  return {half * (a - i * c), d - i * e, rfc(v, 3, 2) * M.at(2, 2), rfc(v, 0) - (d + i * e),
          half * (a + i * c)};
}

// Iwasawa coordinates of an upper-triangular matrix, read off the entries
inline std::array<RationalFunction, 5> triangular_coords(const RFMat& T) {
  return {T.at(1, 1) / T.at(2, 2), T.at(0, 0) / T.at(1, 1), T.at(1, 2) / T.at(2, 2),
          T.at(0, 1) / T.at(1, 1), T.at(0, 2) / T.at(2, 2)};
}

inline RFMat lift(const GMat& m, const VariableSet& v) {
  return m.map([&](const GaussianRational& c) { return RationalFunction::constant(v, c); });
}

// numeric value at a coordinate tuple, indexed like the variable set
inline std::complex<double> rf_eval(const RationalFunction& f, const std::array<double, 5>& vals) {
  auto poly = [&](const MultiPoly& p) {
    std::complex<double> acc(0, 0);
    for (const auto& [e, c] : p.terms()) {
      double mono = 1;
      for (size_t k = 0; k < e.size(); ++k)
        if (e[k] != 0) mono *= std::pow(vals[k], e[k]);
      acc += std::complex<double>(c.re().get_d(), c.im().get_d()) * mono;
    }
    return acc;
  };
  return poly(f.num()) / poly(f.den());
}

}  // namespace geomdetail

inline RFMat section_matrix() {
  return geomdetail::section_over(coord_vars(), {"y1", "y2", "x1", "x2", "x3"});
}

// Rows (dy1, dy2, dx1, dx2, dx3), columns the weight-basis directions
// (weights 2..-2): the weight coordinates of the symmetric-traceless
// projection of F^{-1} dF/dy_r, i.e. the coordinate matrix of the
// pulled-back coframe.
inline const RFMat& pullback_matrix() {
  static const RFMat W = [] {
    const VariableSet& v = coord_vars();
    const RFMat F = section_matrix();
    const RFMat Finv = F.inverse();
    RFMat W0(5, 5, geomdetail::rfc(v, 0));
    for (size_t r = 0; r < 5; ++r) {
      RFMat dF = F.map([&](const RationalFunction& e) { return derivative(e, coord_names()[r]); });
      RFMat G = Finv * dF;
      RFMat sym = geomdetail::rfc(v, 1, 2) * (G + G.transpose());
      RationalFunction tr3 =
          geomdetail::rfc(v, 1, 3) * (sym.at(0, 0) + sym.at(1, 1) + sym.at(2, 2));
      for (size_t k = 0; k < 3; ++k) sym.at(k, k) = sym.at(k, k) - tr3;
      const std::vector<RationalFunction> x = geomdetail::x_coordinates_rf(sym);
      for (size_t mu = 0; mu < 5; ++mu) W0.at(r, mu) = x[mu];
    }
    return W0;
  }();
  return W;
}

// Reference table for the same matrix.  The table orients the even-weight
// basis directions with the opposite sign (the involution diag(-1,1,-1,1,-1)
// on the weight basis); pullback_column_signs() records the correction.
inline const RFMat& pullback_matrix_reference() {
  static const RFMat W = [] {
    using geomdetail::table_entry;
    RFMat m(5, 5, geomdetail::rfc(coord_vars(), 0));
    m.at(0, 2) = table_entry(1, 0, 0, 0, 0, 0, 1, 1, 0);
    m.at(1, 0) = table_entry(-1, 0, 0, 0, 0, 0, 4, 0, 1);
    m.at(1, 2) = table_entry(1, 0, 0, 0, 0, 0, 2, 0, 1);
    m.at(1, 4) = table_entry(-1, 0, 0, 0, 0, 0, 4, 0, 1);
    m.at(2, 1) = table_entry(0, 0, -1, 0, 0, -1, 2, 1, 1);
    m.at(2, 3) = table_entry(0, 0, 1, 0, 0, -1, 2, 1, 1);
    m.at(3, 0) = table_entry(0, 1, 0, 0, 0, 0, 4, 0, 1);
    m.at(3, 4) = table_entry(0, -1, 0, 0, 0, 0, 4, 0, 1);
    m.at(4, 1) = table_entry(1, 0, 0, 0, 0, 0, 2, 1, 1);
    m.at(4, 3) = table_entry(-1, 0, 0, 0, 0, 0, 2, 1, 1);
    return m;
  }();
  return W;
}

inline const std::array<int, 5>& pullback_column_signs() {
  static const std::array<int, 5> s = {-1, 1, -1, 1, -1};
  return s;
}

inline bool pullback_matrix_verify() {
  const RFMat& W = pullback_matrix();
  const RFMat& R = pullback_matrix_reference();
  const VariableSet& v = coord_vars();
  for (size_t r = 0; r < 5; ++r)
    for (size_t c = 0; c < 5; ++c) {
      const RationalFunction want =
          pullback_column_signs()[c] < 0 ? geomdetail::rfc(v, 0) - W.at(r, c) : W.at(r, c);
      if (!(want == R.at(r, c))) return false;
    }
  return true;
}

// Jacobian of left translation: entry (r, s) is the derivative of the s-th
// coordinate of F(y)^{-1} F(y') along y'_r at y' = y
inline const RFMat& left_jacobian() {
  static const RFMat M = [] {
    using geomdetail::table_entry;
    RFMat m(5, 5, geomdetail::rfc(coord_vars(), 0));
    m.at(0, 0) = table_entry(1, 0, 0, 0, 0, 0, 1, 1, 0);
    m.at(1, 1) = table_entry(1, 0, 0, 0, 0, 0, 1, 0, 1);
    m.at(2, 2) = table_entry(1, 0, 0, 0, 0, 0, 1, 1, 0);
    m.at(2, 4) = table_entry(0, 0, -1, 0, 0, 0, 1, 1, 1);
    m.at(3, 3) = table_entry(1, 0, 0, 0, 0, 0, 1, 0, 1);
    m.at(4, 4) = table_entry(1, 0, 0, 0, 0, 0, 1, 1, 1);
    return m;
  }();
  return M;
}

// exact check by symbolic composition: differentiate the coordinates of
// F(y)^{-1} F(w) in w, substitute w = y, compare entrywise
inline bool left_jacobian_symbolic_check() {
  const VariableSet v10({"y1", "y2", "x1", "x2", "x3", "w1", "w2", "w3", "w4", "w5"});
  const std::array<std::string, 5> wn = {"w1", "w2", "w3", "w4", "w5"};
  const RFMat Fy = geomdetail::section_over(v10, {"y1", "y2", "x1", "x2", "x3"});
  const RFMat Fw = geomdetail::section_over(v10, wn);
  const RFMat T = Fy.inverse() * Fw;
  const std::array<RationalFunction, 5> coords = geomdetail::triangular_coords(T);
  std::map<std::string, RationalFunction> back, embed;
  for (int k = 0; k < 5; ++k) {
    back[wn[k]] = geomdetail::rfv(v10, coord_names()[k]);
    embed[coord_names()[k]] = geomdetail::rfv(v10, coord_names()[k]);
  }
  for (size_t r = 0; r < 5; ++r)
    for (size_t s = 0; s < 5; ++s) {
      const RationalFunction got = substitute_rf(derivative(coords[s], wn[r]), back);
      const RationalFunction want = substitute_rf(left_jacobian().at(r, s), embed);
      if (!(got == want)) return false;
    }
  return true;
}

// finite-difference check of left_jacobian() at a sample point
inline double left_jacobian_fd_check(const IwasawaCoords& at, double h) {
  const std::array<double, 5> base = {at.y1, at.y2, at.x1, at.x2, at.x3};
  auto section_at = [](const std::array<double, 5>& y) {
    IwasawaCoords c;
    c.y1 = y[0], c.y2 = y[1], c.x1 = y[2], c.x2 = y[3], c.x3 = y[4];
    return iwasawa_section(c);
  };
  auto ut_coords = [](const Real3& T) -> std::array<double, 5> {
    return {T[1][1] / T[2][2], T[0][0] / T[1][1], T[1][2] / T[2][2], T[0][1] / T[1][1],
            T[0][2] / T[2][2]};
  };
  IwasawaCoords c0 = at;
  c0.scale = 1;
  double worst = 0;
  for (int r = 0; r < 5; ++r) {
    std::array<double, 5> yp = base, ym = base;
    yp[r] += h;
    ym[r] -= h;
    const std::array<double, 5> cp = ut_coords(orthogonal_part(section_at(yp), c0));
    const std::array<double, 5> cm = ut_coords(orthogonal_part(section_at(ym), c0));
    for (int s = 0; s < 5; ++s) {
      const double fd = (cp[s] - cm[s]) / (2 * h);
      const std::complex<double> want = geomdetail::rf_eval(left_jacobian().at(r, s), base);
      worst = std::max(worst, std::abs(std::complex<double>(fd, 0) - want));
    }
  }
  return worst;
}

// pullback_matrix() factors through the constant differential:
// W = left_jacobian * transpose(dF_matrix)^{-1}
inline bool pullback_chain_check() {
  const RFMat rhs =
      left_jacobian() * geomdetail::lift(dF_matrix().inverse().transpose(), coord_vars());
  return rhs == pullback_matrix();
}

// ---------------------------------------------------------------------------
// wedge-power coordinate tables
// ---------------------------------------------------------------------------

// Rows are lexicographic wedge pairs/triples of (dy1, dy2, dx1, dx2, dx3);
// columns are the degree-i form basis, weights 3..-3.
inline const RFMat& q_matrix(size_t i) {
  static const RFMat q2 = pullback_matrix().compound(2) * geomdetail::lift(p_matrix(2), coord_vars());
  static const RFMat q3 = pullback_matrix().compound(3) * geomdetail::lift(p_matrix(3), coord_vars());
  if (i == 2) return q2;
  if (i == 3) return q3;
  throw std::invalid_argument("q_matrix: degree must be 2 or 3");
}

// Reference tables for the same matrices, in the orientation of
// pullback_matrix_reference(); q_column_signs() records the induced
// per-column correction.
inline const RFMat& q_matrix_reference(size_t i) {
  using geomdetail::table_entry;
  static const RFMat q2 = [] {
    RFMat m(10, 7, geomdetail::rfc(coord_vars(), 0));
    m.at(0, 1) = table_entry(1, 0, 0, 0, 0, 0, 2, 1, 1);
    m.at(0, 5) = table_entry(-1, 0, 0, 0, 0, 0, 2, 1, 1);
    m.at(1, 2) = table_entry(0, 0, 1, 0, 0, 1, 2, 2, 1);
    m.at(1, 4) = table_entry(0, 0, 1, 0, 0, -1, 2, 2, 1);
    m.at(2, 1) = table_entry(0, -1, 0, 0, 0, 0, 2, 1, 1);
    m.at(2, 5) = table_entry(0, -1, 0, 0, 0, 0, 2, 1, 1);
    m.at(3, 2) = table_entry(-1, 0, 0, 0, 0, 0, 2, 2, 1);
    m.at(3, 4) = table_entry(-1, 0, 0, 0, 0, 0, 2, 2, 1);
    m.at(4, 0) = table_entry(0, 0, 1, 0, 0, 1, 8, 1, 2);
    m.at(4, 2) = table_entry(0, 0, -1, 0, 0, 5, 8, 1, 2);
    m.at(4, 4) = table_entry(0, 0, -1, 0, 0, -5, 8, 1, 2);
    m.at(4, 6) = table_entry(0, 0, 1, 0, 0, -1, 8, 1, 2);
    m.at(5, 1) = table_entry(0, -1, 0, 0, 0, 0, 4, 0, 2);
    m.at(5, 3) = table_entry(0, 1, 0, 0, 0, 0, 2, 0, 2);
    m.at(5, 5) = table_entry(0, -1, 0, 0, 0, 0, 4, 0, 2);
    m.at(6, 0) = table_entry(-1, 0, 0, 0, 0, 0, 8, 1, 2);
    m.at(6, 2) = table_entry(1, 0, 0, 0, 0, 0, 8, 1, 2);
    m.at(6, 4) = table_entry(1, 0, 0, 0, 0, 0, 8, 1, 2);
    m.at(6, 6) = table_entry(-1, 0, 0, 0, 0, 0, 8, 1, 2);
    m.at(7, 0) = table_entry(0, 0, 0, 1, -1, 0, 8, 1, 2);
    m.at(7, 2) = table_entry(0, 0, 0, -3, -3, 0, 8, 1, 2);
    m.at(7, 4) = table_entry(0, 0, 0, 3, -3, 0, 8, 1, 2);
    m.at(7, 6) = table_entry(0, 0, 0, -1, -1, 0, 8, 1, 2);
    m.at(8, 3) = table_entry(0, 1, 0, 0, 0, 0, 1, 2, 1);
    m.at(9, 0) = table_entry(0, 1, 0, 0, 0, 0, 8, 1, 2);
    m.at(9, 2) = table_entry(0, -3, 0, 0, 0, 0, 8, 1, 2);
    m.at(9, 4) = table_entry(0, 3, 0, 0, 0, 0, 8, 1, 2);
    m.at(9, 6) = table_entry(0, -1, 0, 0, 0, 0, 8, 1, 2);
    return m;
  }();
  static const RFMat q3 = [] {
    RFMat m(10, 7, geomdetail::rfc(coord_vars(), 0));
    m.at(0, 0) = table_entry(0, 0, 1, 0, 0, 1, 24, 2, 2);
    m.at(0, 2) = table_entry(0, 0, 1, 0, 0, -1, 8, 2, 2);
    m.at(0, 4) = table_entry(0, 0, 1, 0, 0, 1, 8, 2, 2);
    m.at(0, 6) = table_entry(0, 0, 1, 0, 0, -1, 24, 2, 2);
    m.at(1, 3) = table_entry(0, -1, 0, 0, 0, 0, 3, 1, 2);
    m.at(2, 0) = table_entry(-1, 0, 0, 0, 0, 0, 24, 2, 2);
    m.at(2, 2) = table_entry(-1, 0, 0, 0, 0, 0, 8, 2, 2);
    m.at(2, 4) = table_entry(-1, 0, 0, 0, 0, 0, 8, 2, 2);
    m.at(2, 6) = table_entry(-1, 0, 0, 0, 0, 0, 24, 2, 2);
    m.at(3, 0) = table_entry(0, 0, 0, 1, -1, 0, 24, 2, 2);
    m.at(3, 2) = table_entry(0, 0, 0, 1, 1, 0, 8, 2, 2);
    m.at(3, 4) = table_entry(0, 0, 0, -1, 1, 0, 8, 2, 2);
    m.at(3, 6) = table_entry(0, 0, 0, -1, -1, 0, 24, 2, 2);
    m.at(4, 3) = table_entry(0, -1, 0, 0, 0, 0, 6, 3, 1);
    m.at(5, 0) = table_entry(0, 1, 0, 0, 0, 0, 24, 2, 2);
    m.at(5, 2) = table_entry(0, 1, 0, 0, 0, 0, 8, 2, 2);
    m.at(5, 4) = table_entry(0, -1, 0, 0, 0, 0, 8, 2, 2);
    m.at(5, 6) = table_entry(0, -1, 0, 0, 0, 0, 24, 2, 2);
    m.at(6, 0) = table_entry(0, 0, 0, 1, -1, 0, 48, 1, 3);
    m.at(6, 2) = table_entry(0, 0, 0, -1, 3, 0, 16, 1, 3);
    m.at(6, 4) = table_entry(0, 0, 0, 1, 3, 0, 16, 1, 3);
    m.at(6, 6) = table_entry(0, 0, 0, -1, -1, 0, 48, 1, 3);
    m.at(7, 1) = table_entry(0, -1, 0, 0, 0, 0, 8, 2, 2);
    m.at(7, 3) = table_entry(0, -1, 0, 0, 0, 0, 12, 2, 2);
    m.at(7, 5) = table_entry(0, -1, 0, 0, 0, 0, 8, 2, 2);
    m.at(8, 0) = table_entry(0, 1, 0, 0, 0, 0, 48, 1, 3);
    m.at(8, 2) = table_entry(0, -1, 0, 0, 0, 0, 16, 1, 3);
    m.at(8, 4) = table_entry(0, 1, 0, 0, 0, 0, 16, 1, 3);
    m.at(8, 6) = table_entry(0, -1, 0, 0, 0, 0, 48, 1, 3);
    m.at(9, 1) = table_entry(1, 0, 0, 0, 0, 0, 8, 2, 2);
    m.at(9, 5) = table_entry(-1, 0, 0, 0, 0, 0, 8, 2, 2);
    return m;
  }();
  if (i == 2) return q2;
  if (i == 3) return q3;
  throw std::invalid_argument("q_matrix_reference: degree must be 2 or 3");
}

// Per-column signs relating q_matrix to q_matrix_reference.  The wedge power
// of the orientation involution scales a column of weight j by (-1)^j in
// degree 2 and by -(-1)^j in degree 3.
inline std::array<int, 7> q_column_signs(size_t i) {
  if (i == 2) return {-1, 1, -1, 1, -1, 1, -1};
  if (i == 3) return {1, -1, 1, -1, 1, -1, 1};
  throw std::invalid_argument("q_column_signs: degree must be 2 or 3");
}

inline bool q_matrix_verify(size_t i) {
  const RFMat& Q = q_matrix(i);
  const RFMat& R = q_matrix_reference(i);
  const std::array<int, 7> sg = q_column_signs(i);
  const VariableSet& v = coord_vars();
  for (size_t r = 0; r < Q.rows(); ++r)
    for (size_t c = 0; c < Q.cols(); ++c) {
      const RationalFunction want =
          sg[c] < 0 ? geomdetail::rfc(v, 0) - Q.at(r, c) : Q.at(r, c);
      if (!(want == R.at(r, c))) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// restriction to the embedded 2x2 block
// ---------------------------------------------------------------------------
//
// On the image of the block embedding, x1 = x3 = 0, the third coordinate pair
// collapses, and the first diagonal coordinate equals y1 / sqrt(y2).  The
// square root is carried by the formal variable u with y2 = u^2: coefficients
// substitute as y1 -> y1/u, y2 -> u^2, and the differentials as
// dy1 -> dy1/u - (y1/(2u^3)) dy2, dy2 -> dy2, dx2 -> dx2, dx1 -> 0, dx3 -> 0.

inline const VariableSet& restricted_vars() {
  static const VariableSet v({"y1", "y2", "x2", "u"});
  return v;
}

// a form over the restricted coordinates; components in lexicographic order:
// degree 1 over (dy1, dy2, dx2), degree 2 over (dy1^dy2, dy1^dx2, dy2^dx2),
// degree 3 the single component dy1^dy2^dx2
struct CoordForm {
  size_t degree = 1;
  std::vector<RationalFunction> comps;
};

struct RestrictedForms {
  std::array<CoordForm, 7> omega;  // restrictions of the q_matrix(2) columns, weights 3..-3
  CoordForm xi_plus, xi_minus;     // (+dx2 + i dy2)/u^2 and (-dx2 + i dy2)/u^2
  CoordForm volume_plus;           // weight 2 column wedged with xi_minus
  CoordForm volume_minus;          // weight -2 column wedged with xi_plus
};

inline const RestrictedForms& iota_pullback_forms() {
  static const RestrictedForms forms = [] {
    const VariableSet& rv = restricted_vars();
    auto rc = [&](long n, long d = 1) { return geomdetail::rfc(rv, n, d); };
    const RationalFunction zero = rc(0);
    const RationalFunction iu = RationalFunction::constant(rv, GaussianRational::i());
    const RationalFunction y1 = geomdetail::rfv(rv, "y1");
    const RationalFunction u = geomdetail::rfv(rv, "u");

    std::map<std::string, RationalFunction> sub;
    sub["y1"] = y1 / u;
    sub["y2"] = u * u;
    sub["x1"] = zero;
    sub["x2"] = geomdetail::rfv(rv, "x2");
    sub["x3"] = zero;

    // images of the five coordinate differentials over (dy1, dy2, dx2)
    const std::array<std::array<RationalFunction, 3>, 5> d = {{
        {rc(1) / u, zero - y1 / (rc(2) * u.pow(3)), zero},
        {zero, rc(1), zero},
        {zero, zero, zero},
        {zero, zero, rc(1)},
        {zero, zero, zero},
    }};
    static const int pairs[10][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
                                     {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

    RestrictedForms out;
    const RFMat& Q = q_matrix(2);
    for (size_t col = 0; col < 7; ++col) {
      std::vector<RationalFunction> g(3, zero);
      for (size_t row = 0; row < 10; ++row) {
        const RationalFunction& entry = Q.at(row, col);
        if (entry.is_zero()) continue;
        const RationalFunction f = substitute_rf(entry, sub);
        const int r = pairs[row][0], s = pairs[row][1];
        g[0] += f * (d[r][0] * d[s][1] - d[r][1] * d[s][0]);
        g[1] += f * (d[r][0] * d[s][2] - d[r][2] * d[s][0]);
        g[2] += f * (d[r][1] * d[s][2] - d[r][2] * d[s][1]);
      }
      out.omega[col] = CoordForm{2, g};
    }

    const RationalFunction u2 = u * u;
    out.xi_plus = CoordForm{1, {zero, iu / u2, rc(1) / u2}};
    out.xi_minus = CoordForm{1, {zero, iu / u2, zero - rc(1) / u2}};

    auto wedge = [&](const CoordForm& g, const CoordForm& h) {
      RationalFunction c =
          g.comps[0] * h.comps[2] - g.comps[1] * h.comps[1] + g.comps[2] * h.comps[0];
      return CoordForm{3, {c}};
    };
    out.volume_plus = wedge(out.omega[1], out.xi_minus);
    out.volume_minus = wedge(out.omega[5], out.xi_plus);
    return out;
  }();
  return forms;
}

// the odd-weight columns restrict to zero
inline bool iota_vanishing_check() {
  const RestrictedForms& f = iota_pullback_forms();
  for (size_t col : {0, 2, 4, 6})
    for (const RationalFunction& c : f.omega[col].comps)
      if (!c.is_zero()) return false;
  return true;
}

// the weight-0 column restricts to (i / (2 u^4)) dy2 ^ dx2
inline bool iota_middle_check() {
  const RestrictedForms& f = iota_pullback_forms();
  const VariableSet& rv = restricted_vars();
  const RationalFunction want(MultiPoly::constant(rv, GaussianRational::i()),
                              GaussianRational(2) * MultiPoly::variable(rv, "u", 4));
  return f.omega[3].comps[0].is_zero() && f.omega[3].comps[1].is_zero() &&
         f.omega[3].comps[2] == want;
}

// both volume forms equal -(1/(y1 u^4)) dy1^dy2^dx2, i.e. the invariant
// density dy1 ^ dx2 ^ dy2 / (y1 y2^2) under y2 = u^2
inline bool iota_volume_check() {
  const RestrictedForms& f = iota_pullback_forms();
  const VariableSet& rv = restricted_vars();
  const RationalFunction want(MultiPoly::constant(rv, GaussianRational(-1)),
                              MultiPoly::variable(rv, "y1") * MultiPoly::variable(rv, "u", 4));
  return f.volume_plus.comps[0] == want && f.volume_minus.comps[0] == want;
}

// every restricted output contains only even powers of u, so the branch
// choice of the formal square root does not matter
inline bool iota_flip_check() {
  const VariableSet& rv = restricted_vars();
  std::map<std::string, RationalFunction> flip;
  flip["u"] = geomdetail::rfc(rv, 0) - geomdetail::rfv(rv, "u");
  auto fixed = [&](const RationalFunction& c) { return substitute_rf(c, flip) == c; };
  const RestrictedForms& f = iota_pullback_forms();
  for (const CoordForm* form : {&f.xi_plus, &f.xi_minus, &f.volume_plus, &f.volume_minus})
    for (const RationalFunction& c : form->comps)
      if (!fixed(c)) return false;
  for (const CoordForm& form : f.omega)
    for (const RationalFunction& c : form.comps)
      if (!fixed(c)) return false;
  return true;
}

}  // namespace branchkit
