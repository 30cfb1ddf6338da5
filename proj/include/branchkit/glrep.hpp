#pragma once
// Polynomial models of irreducible GL2/GL3 representations, the contraction
// operator cutting out the GL3 module, and the explicit GL3 -> GL2 branching
// operators with their index set.

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "multipoly.hpp"

namespace branchkit {

struct WeightGL2 {
  long n1 = 0, n2 = 0;  // highest weight (n1 + n2, n2)
  WeightGL2() = default;
  WeightGL2(long a, long b) : n1(a), n2(b) {
    if (n1 < 0) throw std::invalid_argument("WeightGL2: n1 < 0");
  }
  friend bool operator==(const WeightGL2& a, const WeightGL2& b) {
    return a.n1 == b.n1 && a.n2 == b.n2;
  }
  friend bool operator<(const WeightGL2& a, const WeightGL2& b) {
    return a.n1 != b.n1 ? a.n1 < b.n1 : a.n2 < b.n2;
  }
};

struct WeightGL3 {
  long w1p = 0, w1m = 0, w2 = 0;  // highest weight (w1p + w2, w2, -w1m + w2)
  WeightGL3() = default;
  WeightGL3(long p, long m, long t) : w1p(p), w1m(m), w2(t) {
    if (w1p < 0 || w1m < 0) throw std::invalid_argument("WeightGL3: negative part");
  }
  bool is_cohomological_diagonal() const { return w1p == w1m && w1m == w2; }
  friend bool operator==(const WeightGL3& a, const WeightGL3& b) {
    return a.w1p == b.w1p && a.w1m == b.w1m && a.w2 == b.w2;
  }
  friend bool operator<(const WeightGL3& a, const WeightGL3& b) {
    if (a.w1p != b.w1p) return a.w1p < b.w1p;
    if (a.w1m != b.w1m) return a.w1m < b.w1m;
    return a.w2 < b.w2;
  }
};

inline const VariableSet& gl3_vars() {
  static const VariableSet v({"X", "Y", "Z", "A", "B", "C"});
  return v;
}
inline const VariableSet& gl2_vars() {
  static const VariableSet v({"X", "Y"});
  return v;
}

inline long dim_L3(const WeightGL3& w) {
  return (w.w1p + 1) * (w.w1m + 1) * (w.w1p + w.w1m + 2) / 2;
}
inline long dim_L2(const WeightGL2& n) { return n.n1 + 1; }

inline long central_exponent_gl3(const WeightGL3& w) { return w.w1p - w.w1m + 3 * w.w2; }
inline long central_exponent_gl2(const WeightGL2& n) { return n.n1 + 2 * n.n2; }

inline bool is_bihomogeneous(const MultiPoly& p, long dxyz, long dabc) {
  return p.is_homogeneous({"X", "Y", "Z"}, static_cast<int>(dxyz)) &&
         p.is_homogeneous({"A", "B", "C"}, static_cast<int>(dabc));
}

// All monomials of bi-degree (dxyz, dabc), in ascending lex order of the
// (X,Y,Z,A,B,C) exponent vector.
inline std::vector<Expo> bihomogeneous_monomials(long dxyz, long dabc) {
  std::vector<Expo> out;
  for (int x = 0; x <= dxyz; ++x)
    for (int y = 0; x + y <= dxyz; ++y) {
      int z = static_cast<int>(dxyz) - x - y;
      for (int a = 0; a <= dabc; ++a)
        for (int b = 0; a + b <= dabc; ++b) {
          int c = static_cast<int>(dabc) - a - b;
          out.push_back({x, y, z, a, b, c});
        }
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline MultiPoly contraction(const MultiPoly& p, const WeightGL3& w) {
  if (!is_bihomogeneous(p, w.w1p, w.w1m))
    throw std::invalid_argument("contraction: wrong bi-degree");
  MultiPoly out(p.vars());
  const char* pairs[3][2] = {{"X", "A"}, {"Y", "B"}, {"Z", "C"}};
  for (auto& pr : pairs)
    out += partial_derivative(partial_derivative(p, pr[0]), pr[1]);
  return out;
}

struct RepElementGL3 {
  MultiPoly poly;
  WeightGL3 weight;

  RepElementGL3(MultiPoly p, WeightGL3 w) : poly(std::move(p)), weight(w) {
    if (!is_bihomogeneous(poly, weight.w1p, weight.w1m))
      throw std::invalid_argument("RepElementGL3: wrong bi-degree");
    if (!contraction(poly, weight).is_zero())
      throw std::invalid_argument("RepElementGL3: not annihilated by the contraction");
  }
};

// rho_w(g) P = (det g)^{w2} P((X,Y,Z)g ; (A,B,C) t(g^-1))
inline MultiPoly act_gl3_poly(const Matrix<GaussianRational>& g, const MultiPoly& p,
                              const WeightGL3& w) {
  if (g.rows() != 3 || g.cols() != 3) throw std::invalid_argument("act_gl3: need 3x3 matrix");
  GaussianRational det = g.det();
  if (det.is_zero()) throw std::domain_error("act_gl3: singular matrix");
  Matrix<GaussianRational> ginv = g.inverse();
  const VariableSet& V = gl3_vars();
  const char* row_names[3] = {"X", "Y", "Z"};
  const char* dual_names[3] = {"A", "B", "C"};
  std::map<std::string, MultiPoly> bind;
  for (int j = 0; j < 3; ++j) {
    MultiPoly img(V), dual_img(V);
    for (int k = 0; k < 3; ++k) {
      img += g.at(k, j) * MultiPoly::variable(V, row_names[k]);
      // (A,B,C) t(g^-1) has j-th component sum_k (g^-1)_{jk} (A,B,C)_k
      dual_img += ginv.at(j, k) * MultiPoly::variable(V, dual_names[k]);
    }
    bind[row_names[j]] = img;
    bind[dual_names[j]] = dual_img;
  }
  MultiPoly out = embed(substitute(p, bind), V);
  return det.pow(w.w2) * out;
}

inline RepElementGL3 act_gl3(const Matrix<GaussianRational>& g, const RepElementGL3& p) {
  return RepElementGL3(act_gl3_poly(g, p.poly, p.weight), p.weight);
}

// block-diagonal embedding diag(g, 1) of a 2x2 matrix into 3x3
inline Matrix<GaussianRational> iota_gl2(const Matrix<GaussianRational>& g) {
  if (g.rows() != 2 || g.cols() != 2) throw std::invalid_argument("iota_gl2: need 2x2 matrix");
  Matrix<GaussianRational> out(3, 3, GaussianRational(0));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = g.at(r, c);
  out.at(2, 2) = GaussianRational(1);
  return out;
}

// rho_n(g) P = (det g)^{n2} P((X,Y)g)
inline MultiPoly act_gl2(const Matrix<GaussianRational>& g, const MultiPoly& p,
                         const WeightGL2& n) {
  if (g.rows() != 2 || g.cols() != 2) throw std::invalid_argument("act_gl2: need 2x2 matrix");
  GaussianRational det = g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0);
  if (det.is_zero()) throw std::domain_error("act_gl2: singular matrix");
  const VariableSet& V = gl2_vars();
  std::map<std::string, MultiPoly> bind;
  const char* names[2] = {"X", "Y"};
  for (int j = 0; j < 2; ++j) {
    MultiPoly img(V);
    for (int k = 0; k < 2; ++k) img += g.at(k, j) * MultiPoly::variable(V, names[k]);
    bind[names[j]] = img;
  }
  MultiPoly out = embed(substitute(embed(p, V), bind), V);
  return det.pow(n.n2) * out;
}

// (nabla_{k,l} P)(X,Y) = 1/(k! l!) d^{k+l} P / dZ^k dC^l  at (X,Y,0; -Y,X,0)
inline MultiPoly nabla_kl(long k, long l, const MultiPoly& p, const WeightGL3& w) {
  if (k < 0 || k > w.w1p || l < 0 || l > w.w1m)
    throw std::invalid_argument("nabla_kl: index out of range");
  if (!is_bihomogeneous(p, w.w1p, w.w1m))
    throw std::invalid_argument("nabla_kl: wrong bi-degree");
  MultiPoly d = partial_derivative(partial_derivative(p, "Z", static_cast<int>(k)), "C",
                                   static_cast<int>(l));
  const VariableSet& V2 = gl2_vars();
  std::map<std::string, MultiPoly> bind;
  bind["Z"] = MultiPoly::constant(V2, GaussianRational(0));
  bind["C"] = MultiPoly::constant(V2, GaussianRational(0));
  bind["A"] = -MultiPoly::variable(V2, "Y");
  bind["B"] = MultiPoly::variable(V2, "X");
  MultiPoly out = embed(substitute(d, bind), V2);
  GaussianRational scale(mpq_class(mpz_class(1), mpz_class(factorial(k) * factorial(l))),
                         mpq_class(0));
  return scale * out;
}

inline MultiPoly nabla_kl(long k, long l, const RepElementGL3& p) {
  return nabla_kl(k, l, p.poly, p.weight);
}

// Xi_2(w) = { (n1,n2) : w2 <= n1+n2 <= w1p+w2, w2-w1m <= n2 <= w2 },
// listed with n1 ascending, then n2 ascending.
inline std::vector<WeightGL2> xi2_set(const WeightGL3& w) {
  std::vector<WeightGL2> out;
  for (long n2 = w.w2 - w.w1m; n2 <= w.w2; ++n2)
    for (long n1 = w.w2 - n2; n1 <= w.w1p + w.w2 - n2; ++n1) out.emplace_back(n1, n2);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool in_xi2(const WeightGL2& n, const WeightGL3& w) {
  return w.w2 <= n.n1 + n.n2 && n.n1 + n.n2 <= w.w1p + w.w2 && w.w2 - w.w1m <= n.n2 &&
         n.n2 <= w.w2;
}

// nabla^n = nabla_{w1p + w2 - n1 - n2, w1m - w2 + n2}
inline MultiPoly nabla_n(const WeightGL2& n, const MultiPoly& p, const WeightGL3& w) {
  if (!in_xi2(n, w)) throw std::invalid_argument("nabla_n: index not in Xi_2(w)");
  return nabla_kl(w.w1p + w.w2 - n.n1 - n.n2, w.w1m - w.w2 + n.n2, p, w);
}

inline MultiPoly nabla_n(const WeightGL2& n, const RepElementGL3& p) {
  return nabla_n(n, p.poly, p.weight);
}

// Exact kernel basis of the contraction on the bi-degree (w1p, w1m) monomial
// space; computed once per (w1p, w1m) and shared. The Tate-twist part w2 is
// metadata and does not change the polynomials.
inline const std::vector<MultiPoly>& L3_basis(const WeightGL3& w) {
  static std::map<std::pair<long, long>, std::vector<MultiPoly>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(w.w1p, w.w1m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const VariableSet& V = gl3_vars();
  std::vector<Expo> source = bihomogeneous_monomials(w.w1p, w.w1m);
  std::vector<Expo> target =
      (w.w1p == 0 || w.w1m == 0) ? std::vector<Expo>{}
                                 : bihomogeneous_monomials(w.w1p - 1, w.w1m - 1);
  std::map<Expo, size_t> target_index;
  for (size_t r = 0; r < target.size(); ++r) target_index[target[r]] = r;

  Matrix<GaussianRational> M(target.size(), source.size(), GaussianRational(0));
  for (size_t c = 0; c < source.size(); ++c) {
    MultiPoly mono = MultiPoly::monomial(V, source[c], GaussianRational(1));
    MultiPoly img = contraction(mono, WeightGL3(w.w1p, w.w1m, 0));
    for (const auto& [e, coef] : img.terms()) M.at(target_index.at(e), c) = coef;
  }
  std::vector<MultiPoly> basis;
  for (const auto& vec : M.kernel_basis()) {
    MultiPoly p(V);
    for (size_t c = 0; c < source.size(); ++c) p.add_term(source[c], vec[c]);
    basis.push_back(p);
  }
  return cache.emplace(key, std::move(basis)).first->second;
}

}  // namespace branchkit
