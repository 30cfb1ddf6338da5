#pragma once
// Harmonic-polynomial models of O(2)/O(3) irreducibles: the quotient by the
// sphere relation with a canonical z3-reduced representative, the v-bases,
// exact representation matrices at rational orthogonal points, Cayley
// parametrizations, and the O(3) -> O(2) branching maps.

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "glrep.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"

namespace branchkit {

struct OrthWeight2 {
  long lambda = 0;
  int delta = 0;
  OrthWeight2() = default;
  OrthWeight2(long l, int d) : lambda(l), delta(d) {
    bool ok = (lambda == 0 && (delta == 0 || delta == 1)) || (lambda >= 1 && delta == 0);
    if (!ok) throw std::invalid_argument("OrthWeight2: not in Lambda_2");
  }
};

struct OrthWeight3 {
  long lambda = 0;
  int delta = 0;
  OrthWeight3() = default;
  OrthWeight3(long l, int d) : lambda(l), delta(d) {
    if (lambda < 0 || (delta != 0 && delta != 1))
      throw std::invalid_argument("OrthWeight3: not in Lambda_3");
  }
};

inline const VariableSet& z_vars() {
  static const VariableSet v({"z1", "z2", "z3"});
  return v;
}

// Canonical representative modulo (z1^2+z2^2+z3^2): push every z3 exponent
// below 2 via z3^2 -> -(z1^2+z2^2), applied once per monomial with exponent
// arithmetic (the rewrite is confluent).
inline MultiPoly reduce_mod_sphere(const MultiPoly& p) {
  if (p.vars() != z_vars()) throw std::invalid_argument("reduce_mod_sphere: expected z variables");
  if (!p.is_zero() && p.homogeneous_degree({"z1", "z2", "z3"}) < 0)
    throw std::invalid_argument("reduce_mod_sphere: non-homogeneous input");
  const VariableSet& V = z_vars();
  MultiPoly out(V);
  MultiPoly msphere = -(MultiPoly::variable(V, "z1", 2) + MultiPoly::variable(V, "z2", 2));
  for (const auto& [e, c] : p.terms()) {
    int q = e[2] / 2, r = e[2] % 2;
    MultiPoly base = MultiPoly::monomial(V, {e[0], e[1], r}, c);
    out += base * msphere.pow(q);
  }
  return out;
}

struct HarmonicElement {
  MultiPoly poly;  // always z3-reduced
  OrthWeight3 weight;

  HarmonicElement(const MultiPoly& p, OrthWeight3 w) : poly(reduce_mod_sphere(p)), weight(w) {
    if (!poly.is_zero() && poly.homogeneous_degree({"z1", "z2", "z3"}) != w.lambda)
      throw std::invalid_argument("HarmonicElement: wrong degree");
  }
};

// The 2*lambda+1 reduced monomials, ascending lex order.
inline std::vector<Expo> harmonic_monomials(long lambda) {
  std::vector<Expo> out;
  for (int a = 0; a <= lambda; ++a) out.push_back({a, static_cast<int>(lambda) - a, 0});
  for (int a = 0; a + 1 <= lambda; ++a) out.push_back({a, static_cast<int>(lambda) - 1 - a, 1});
  std::sort(out.begin(), out.end());
  return out;
}

// v^{(3),(lambda,delta)}_{+mu} or _{-mu}; the two coincide at mu = 0.
inline HarmonicElement v_basis3(const OrthWeight3& w, long mu, int sign) {
  if (mu < 0 || mu > w.lambda) throw std::invalid_argument("v_basis3: mu out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("v_basis3: sign must be +-1");
  const VariableSet& V = z_vars();
  MultiPoly lead = GaussianRational(sign) * MultiPoly::variable(V, "z1") +
                   GaussianRational::i() * MultiPoly::variable(V, "z2");
  MultiPoly p = lead.pow(mu) * MultiPoly::variable(V, "z3").pow(w.lambda - mu);
  return HarmonicElement(p, w);
}

// v^{(2),(lambda,delta)}_{+-lambda} = (+-X + iY)^lambda
inline MultiPoly v_basis2(const OrthWeight2& w, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("v_basis2: sign must be +-1");
  const VariableSet& V = gl2_vars();
  MultiPoly lead = GaussianRational(sign) * MultiPoly::variable(V, "X") +
                   GaussianRational::i() * MultiPoly::variable(V, "Y");
  return lead.pow(w.lambda);
}

// tau_{(lambda,delta)}(u) P = (det u)^delta P((z1,z2,z3) u)
inline MultiPoly act_o3(const Matrix<GaussianRational>& u, const MultiPoly& p, int delta) {
  if (u.rows() != 3 || u.cols() != 3) throw std::invalid_argument("act_o3: need 3x3 matrix");
  const VariableSet& V = z_vars();
  const char* names[3] = {"z1", "z2", "z3"};
  std::map<std::string, MultiPoly> bind;
  for (int j = 0; j < 3; ++j) {
    MultiPoly img(V);
    for (int k = 0; k < 3; ++k) img += u.at(k, j) * MultiPoly::variable(V, names[k]);
    bind[names[j]] = img;
  }
  MultiPoly out = embed(substitute(p, bind), V);
  GaussianRational det = u.det();
  return (delta == 1 ? det : GaussianRational(1)) * out;
}

inline bool is_orthogonal(const Matrix<GaussianRational>& u) {
  Matrix<GaussianRational> prod = u.transpose() * u;
  return prod == Matrix<GaussianRational>::identity(u.rows(), GaussianRational(0),
                                                    GaussianRational(1));
}

namespace detail {

// Columns express (v_lambda, ..., v_{-lambda}) over the reduced monomials.
struct VBasisData {
  Matrix<GaussianRational> to_mono;    // (2l+1) x (2l+1)
  Matrix<GaussianRational> from_mono;  // inverse
  std::map<Expo, size_t> mono_index;
};

inline const VBasisData& v_basis_data(long lambda) {
  static std::map<long, VBasisData> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(lambda);
  if (it != cache.end()) return it->second;

  std::vector<Expo> monos = harmonic_monomials(lambda);
  VBasisData data{Matrix<GaussianRational>(monos.size(), monos.size(), GaussianRational(0)),
                  Matrix<GaussianRational>(0, 0, GaussianRational(0)),
                  {}};
  for (size_t r = 0; r < monos.size(); ++r) data.mono_index[monos[r]] = r;
  OrthWeight3 w(lambda, 0);
  for (long j = lambda; j >= -lambda; --j) {
    size_t col = static_cast<size_t>(lambda - j);
    HarmonicElement v = v_basis3(w, j >= 0 ? j : -j, j >= 0 ? 1 : -1);
    for (const auto& [e, c] : v.poly.terms()) data.to_mono.at(data.mono_index.at(e), col) = c;
  }
  data.from_mono = data.to_mono.inverse();
  return cache.emplace(lambda, std::move(data)).first->second;
}

}  // namespace detail

// Coordinates of a harmonic element in the basis (v_lambda, ..., v_{-lambda}).
inline std::vector<GaussianRational> v_coordinates(const HarmonicElement& h) {
  const auto& data = detail::v_basis_data(h.weight.lambda);
  size_t n = 2 * h.weight.lambda + 1;
  Matrix<GaussianRational> col(n, 1, GaussianRational(0));
  for (const auto& [e, c] : h.poly.terms()) col.at(data.mono_index.at(e), 0) = c;
  Matrix<GaussianRational> coords = data.from_mono * col;
  std::vector<GaussianRational> out(n);
  for (size_t k = 0; k < n; ++k) out[k] = coords.at(k, 0);
  return out;
}

// M_lambda(u): j-th column holds the v-coordinates of tau(u) v_{lambda - j}.
inline Matrix<GaussianRational> matrix_M(const OrthWeight3& w, const Matrix<GaussianRational>& u) {
  if (!is_orthogonal(u)) throw std::invalid_argument("matrix_M: matrix is not orthogonal");
  size_t n = 2 * w.lambda + 1;
  Matrix<GaussianRational> M(n, n, GaussianRational(0));
  for (long j = w.lambda; j >= -w.lambda; --j) {
    HarmonicElement v = v_basis3(w, j >= 0 ? j : -j, j >= 0 ? 1 : -1);
    HarmonicElement image(act_o3(u, v.poly, w.delta), w);
    std::vector<GaussianRational> coords = v_coordinates(image);
    for (size_t r = 0; r < n; ++r) M.at(r, static_cast<size_t>(w.lambda - j)) = coords[r];
  }
  return M;
}

// Rational rotations via the Cayley transform u = (1 - S)(1 + S)^{-1}.
inline Matrix<GaussianRational> cayley_so3(const GaussianRational& a, const GaussianRational& b,
                                           const GaussianRational& c) {
  Matrix<GaussianRational> S(3, 3, GaussianRational(0));
  S.at(0, 1) = a;
  S.at(0, 2) = b;
  S.at(1, 2) = c;
  S.at(1, 0) = -a;
  S.at(2, 0) = -b;
  S.at(2, 1) = -c;
  auto I = Matrix<GaussianRational>::identity(3, GaussianRational(0), GaussianRational(1));
  return (I - S) * (I + S).inverse();
}

inline Matrix<GaussianRational> cayley_so2(const GaussianRational& t) {
  GaussianRational d = (GaussianRational(1) + t * t).inverse();
  Matrix<GaussianRational> u(2, 2, GaussianRational(0));
  u.at(0, 0) = d * (GaussianRational(1) - t * t);
  u.at(0, 1) = d * (GaussianRational(-2) * t);
  u.at(1, 0) = d * (GaussianRational(2) * t);
  u.at(1, 1) = u.at(0, 0);
  return u;
}

// Sigma(lambda): the O(2)-types appearing in the restriction.
inline std::vector<OrthWeight2> sigma_set(const OrthWeight3& w) {
  std::vector<OrthWeight2> out;
  out.emplace_back(0, w.delta);
  for (long mu = 1; mu <= w.lambda; ++mu) out.emplace_back(mu, 0);
  return out;
}

inline bool in_sigma(const OrthWeight2& mu, const OrthWeight3& w) {
  if (mu.lambda == 0) return mu.delta == w.delta;
  return mu.delta == 0 && mu.lambda <= w.lambda;
}

// v^{(2),mu}_{+-mu} |-> (+-1)^delta v^{(3),lambda}_{+-mu}
inline HarmonicElement o3_branch_embed(const OrthWeight2& mu, const OrthWeight3& w,
                                       const MultiPoly& v) {
  if (!in_sigma(mu, w)) throw std::invalid_argument("o3_branch_embed: mu not in Sigma(lambda)");
  if (!v.is_zero() && v.homogeneous_degree({"X", "Y"}) != mu.lambda)
    throw std::invalid_argument("o3_branch_embed: wrong degree");
  // solve v = c_plus v_{+mu} + c_minus v_{-mu} in C[X,Y]_mu
  MultiPoly vp = v_basis2(OrthWeight2(mu.lambda, mu.delta), 1);
  MultiPoly vm = v_basis2(OrthWeight2(mu.lambda, mu.delta), -1);
  size_t dim = mu.lambda + 1;
  Matrix<GaussianRational> A(dim, 2, GaussianRational(0));
  Matrix<GaussianRational> rhs(dim, 1, GaussianRational(0));
  auto put = [&](const MultiPoly& src, size_t col, Matrix<GaussianRational>& dst) {
    for (const auto& [e, c] : src.terms()) dst.at(static_cast<size_t>(e[0]), col) = c;
  };
  put(vp, 0, A);
  put(vm, 1, A);
  put(embed(v, gl2_vars()), 0, rhs);
  // two-unknown exact solve on the X^mu and X^{mu-1}Y rows (their 2x2 block
  // has determinant 2*mu*i*(-1)^{mu-1}, never zero for mu >= 1), then a full
  // consistency check; inconsistency means v was outside V^{(2)}_mu
  GaussianRational cp(0), cm(0);
  if (mu.lambda == 0) {
    cp = rhs.at(0, 0);
  } else {
    size_t r0 = static_cast<size_t>(mu.lambda), r1 = static_cast<size_t>(mu.lambda - 1);
    Matrix<GaussianRational> block = A.submatrix({r0, r1}, {0, 1});
    Matrix<GaussianRational> small = rhs.submatrix({r0, r1}, {0});
    Matrix<GaussianRational> sol = block.inverse() * small;
    cp = sol.at(0, 0);
    cm = sol.at(1, 0);
    if (!(A * sol == rhs)) throw std::invalid_argument("o3_branch_embed: input not in V^(2)_mu");
  }
  MultiPoly out = cp * v_basis3(OrthWeight3(w.lambda, w.delta), mu.lambda, 1).poly;
  if (mu.lambda > 0)
    out += (w.delta == 1 ? -cm : cm) * v_basis3(OrthWeight3(w.lambda, w.delta), mu.lambda, -1).poly;
  return HarmonicElement(out, w);
}

inline MultiPoly o3_branch_project(const OrthWeight3& w, const OrthWeight2& mu,
                                   const HarmonicElement& h) {
  if (!in_sigma(mu, w)) throw std::invalid_argument("o3_branch_project: mu not in Sigma(lambda)");
  std::vector<GaussianRational> coords = v_coordinates(h);
  size_t idx_p = static_cast<size_t>(w.lambda - mu.lambda);
  size_t idx_m = static_cast<size_t>(w.lambda + mu.lambda);
  GaussianRational cp = coords[idx_p];
  MultiPoly out = cp * v_basis2(OrthWeight2(mu.lambda, mu.delta), 1);
  if (mu.lambda > 0) {
    GaussianRational cm = coords[idx_m];
    out += (w.delta == 1 ? -cm : cm) * v_basis2(OrthWeight2(mu.lambda, mu.delta), -1);
  }
  return out;
}

}  // namespace branchkit
