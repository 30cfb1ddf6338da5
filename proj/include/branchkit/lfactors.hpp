#pragma once
// Archimedean L-factor bookkeeping: parameter algebra for direct sums of one-
// and two-dimensional summands, Gamma- and epsilon-factors, critical-point
// regions computed three independent ways, Hodge types, and the exact scalar
// constants attached to the critical values.
//
// Critical points are exposed at the motivic normalization s = m; the
// automorphic evaluation point is m - 3/2.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace branchkit {

// mpq_class(num, den) does not canonicalize; every internal ratio goes
// through here
inline mpq_class exact_ratio(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// parameter algebra
// ---------------------------------------------------------------------------

// dim 1: character with exponent nu and sign delta; dim 2: induced from the
// exponent nu and nonnegative weight l
struct WeilSummand {
  int dim = 1;
  mpq_class nu = 0;
  long l = 0;     // dim 2 only
  int delta = 0;  // dim 1 only
};

inline WeilSummand dim1_summand(const mpq_class& nu, int delta) {
  if (delta != 0 && delta != 1) throw std::invalid_argument("dim1_summand: delta must be 0 or 1");
  WeilSummand s;
  s.dim = 1, s.nu = nu, s.delta = delta;
  s.nu.canonicalize();
  return s;
}

inline WeilSummand dim2_summand(const mpq_class& nu, long l) {
  if (l < 0) throw std::invalid_argument("dim2_summand: weight must be nonnegative");
  WeilSummand s;
  s.dim = 2, s.nu = nu, s.l = l;
  s.nu.canonicalize();
  return s;
}

inline bool operator==(const WeilSummand& a, const WeilSummand& b) {
  return a.dim == b.dim && a.nu == b.nu && a.l == b.l && a.delta == b.delta;
}

inline bool summand_less(const WeilSummand& a, const WeilSummand& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.nu != b.nu) return a.nu < b.nu;
  if (a.l != b.l) return a.l < b.l;
  return a.delta < b.delta;
}

// a multiset of summands; order is not significant
struct WeilParameter {
  std::vector<WeilSummand> summands;
};

inline WeilParameter normalized(WeilParameter p) {
  std::sort(p.summands.begin(), p.summands.end(), summand_less);
  return p;
}

inline bool operator==(const WeilParameter& a, const WeilParameter& b) {
  return normalized(a).summands == normalized(b).summands;
}

inline WeilParameter dual(const WeilParameter& p) {
  WeilParameter d = p;
  for (WeilSummand& s : d.summands) s.nu = -s.nu;
  return d;
}

inline WeilParameter tensor(const WeilParameter& p, const WeilParameter& q) {
  WeilParameter out;
  for (const WeilSummand& a : p.summands)
    for (const WeilSummand& b : q.summands) {
      const mpq_class nu = a.nu + b.nu;
      if (a.dim == 1 && b.dim == 1) {
        out.summands.push_back(dim1_summand(nu, (a.delta + b.delta) % 2));
      } else if (a.dim == 1) {
        out.summands.push_back(dim2_summand(nu, b.l));
      } else if (b.dim == 1) {
        out.summands.push_back(dim2_summand(nu, a.l));
      } else {
        if (a.l == b.l)
          throw std::domain_error("tensor: equal-weight two-dimensional product is degenerate");
        out.summands.push_back(dim2_summand(nu, a.l + b.l));
        out.summands.push_back(dim2_summand(nu, std::labs(a.l - b.l)));
      }
    }
  return normalized(out);
}

// ---------------------------------------------------------------------------
// Gamma- and epsilon-factors
// ---------------------------------------------------------------------------

struct GammaFactor {
  char kind = 'C';  // 'R' for Gamma_R(s + shift), 'C' for Gamma_C(s + shift)
  mpq_class shift = 0;
};

inline bool operator==(const GammaFactor& a, const GammaFactor& b) {
  return a.kind == b.kind && a.shift == b.shift;
}

struct GammaProduct {
  std::vector<GammaFactor> factors;
};

inline GammaProduct normalized(GammaProduct g) {
  std::sort(g.factors.begin(), g.factors.end(), [](const GammaFactor& a, const GammaFactor& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.shift < b.shift;
  });
  return g;
}

inline bool operator==(const GammaProduct& a, const GammaProduct& b) {
  return normalized(a).factors == normalized(b).factors;
}

inline GammaProduct gamma_factor(const WeilParameter& p) {
  GammaProduct g;
  for (const WeilSummand& s : p.summands) {
    GammaFactor f;
    if (s.dim == 2) {
      f.kind = 'C';
      f.shift = s.nu + exact_ratio(s.l, 2);
    } else {
      f.kind = 'R';
      f.shift = s.nu + s.delta;
    }
    g.factors.push_back(f);
  }
  return normalized(g);
}

// exponent of i in the archimedean epsilon factor, mod 4
inline int epsilon_exponent(const WeilParameter& p) {
  long e = 0;
  for (const WeilSummand& s : p.summands) e += (s.dim == 2) ? s.l + 1 : s.delta;
  return static_cast<int>(((e % 4) + 4) % 4);
}

inline std::string gamma_str(const GammaProduct& g) {
  std::string out;
  for (const GammaFactor& f : normalized(g).factors) {
    if (!out.empty()) out += " ";
    out += (f.kind == 'C') ? "Gamma_C(s" : "Gamma_R(s";
    if (f.shift > 0) out += " + " + f.shift.get_str();
    if (f.shift < 0) out += " - " + mpq_class(-f.shift).get_str();
    out += ")";
  }
  return out.empty() ? "1" : out;
}

// pole sets: Gamma_C(s + b) has poles at s = -b - k for integers k >= 0;
// Gamma_R(s + a) at s = -a - 2k
inline bool has_pole_at(const GammaFactor& f, const mpq_class& s) {
  mpq_class t = s + f.shift;
  if (t.get_den() != 1 || t > 0) return false;
  if (f.kind == 'C') return true;
  return mpz_even_p(t.get_num().get_mpz_t()) != 0;
}

inline bool has_pole_at(const GammaProduct& g, const mpq_class& s) {
  for (const GammaFactor& f : g.factors)
    if (has_pole_at(f, s)) return true;
  return false;
}

// numeric values:  Gamma_R(s) = pi^{-s/2} Gamma(s/2),  Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)
inline double gamma_R_value(double s) { return std::pow(M_PI, -s / 2) * std::tgamma(s / 2); }
inline double gamma_C_value(double s) {
  return 2.0 * std::pow(2 * M_PI, -s) * std::tgamma(s);
}

// ---------------------------------------------------------------------------
// the parameter pair under study
// ---------------------------------------------------------------------------

// two-dimensional weight l2 against the three-dimensional one built from the
// even weight l3 and sign delta, with the central normalizations
// nu2 = (1 - l2)/2 and nu3 = (2 - l3)/2
struct PiParams {
  long l2 = 1;
  long l3 = 2;
  int delta = 0;

  PiParams(long l2_, long l3_, int delta_ = 0) : l2(l2_), l3(l3_), delta(delta_) {
    if (l2 < 1) throw std::invalid_argument("PiParams: l2 must be at least 1");
    if (l3 < 2 || l3 % 2 != 0) throw std::invalid_argument("PiParams: l3 must be even and at least 2");
    if (l2 >= l3) throw std::invalid_argument("PiParams: l2 < l3 is required");
    if (delta != 0 && delta != 1) throw std::invalid_argument("PiParams: delta must be 0 or 1");
  }

  mpq_class nu2() const { return exact_ratio(1 - l2, 2); }
  mpq_class nu3() const { return exact_ratio(2 - l3, 2); }

  WeilParameter param2() const { return {{dim2_summand(nu2(), l2)}}; }
  WeilParameter param3() const { return {{dim2_summand(nu3(), l3), dim1_summand(nu3(), delta)}}; }
  WeilParameter pair_param() const { return tensor(param3(), param2()); }
};

// ---------------------------------------------------------------------------
// critical points, three ways
// ---------------------------------------------------------------------------

// closed form: {l3/2 + 1, ..., l3/2 + l2} when l2 <= l3/2, else {l2 + 1, ..., l3}
inline std::vector<long> critical_points(const PiParams& pp) {
  const long half = pp.l3 / 2;
  const long lo = (pp.l2 <= half) ? half + 1 : pp.l2 + 1;
  const long hi = (pp.l2 <= half) ? half + pp.l2 : pp.l3;
  std::vector<long> out;
  for (long m = lo; m <= hi; ++m) out.push_back(m);
  return out;
}

// pole-set characterization: m is critical iff neither the pair Gamma factor
// at the automorphic point m - 3/2 nor its dual at 1 - (m - 3/2) has a pole
inline bool is_critical_by_poles(const PiParams& pp, long m) {
  const GammaProduct g = gamma_factor(pp.pair_param());
  const GammaProduct gd = gamma_factor(dual(pp.pair_param()));
  const mpq_class s = exact_ratio(2 * m - 3, 2);  // m - 3/2
  return !has_pole_at(g, s) && !has_pole_at(gd, 1 - s);
}

inline std::vector<long> critical_points_by_poles(const PiParams& pp) {
  std::vector<long> out;
  for (long m = -(pp.l3 + pp.l2); m <= 2 * (pp.l3 + pp.l2) + 3; ++m)
    if (is_critical_by_poles(pp, m)) out.push_back(m);
  return out;
}

// the six Hodge types of the pair at the twist m
inline std::vector<std::pair<long, long>> hodge_types(const PiParams& pp, long m) {
  const long l2 = pp.l2, l3 = pp.l3, half = pp.l3 / 2;
  return {{l3 + l2 - m, -m},          {l3 - m, l2 - m}, {half + l2 - m, half - m},
          {half - m, half + l2 - m},  {l2 - m, l3 - m}, {-m, l3 + l2 - m}};
}

// critical iff no Hodge type meets the closed diagonal quadrant: every pair
// must satisfy (p <= -1 and q >= 0) or (p >= 0 and q <= -1)
inline bool is_critical_by_hodge(const PiParams& pp, long m) {
  for (const auto& [p, q] : hodge_types(pp, m))
    if (!((p <= -1 && q >= 0) || (p >= 0 && q <= -1))) return false;
  return true;
}

inline bool is_critical(const PiParams& pp, long m) {
  const std::vector<long> cp = critical_points(pp);
  return std::find(cp.begin(), cp.end(), m) != cp.end();
}

// ---------------------------------------------------------------------------
// exact constants at a critical point
// ---------------------------------------------------------------------------

inline GaussianRational binomial_product(const PiParams& pp, long m) {
  const long w = pp.l3 / 2 - 1;
  const mpz_class c = binom(w, m - pp.l3 / 2 - 1) * binom(w, pp.l3 / 2 + pp.l2 - m);
  return GaussianRational(mpq_class(c), mpq_class(0));
}

struct MainConstant {
  int parity = 1;              // (-1)^{m + delta + l3/2}
  GaussianRational scalar;     // (-1)^delta i^{l3/2 - m + 1} * binomial product
  GaussianRational binoms;     // the binomial product alone
  bool assembly_identity = false;  // (-1)^{delta+l2+1} i^{l3/2+2l2-m-1} == (-1)^delta i^{l3/2-m+1}
};

inline MainConstant main_constant(const PiParams& pp, long m) {
  if (!is_critical(pp, m)) throw std::domain_error("main_constant: m is not critical");
  MainConstant out;
  const long half = pp.l3 / 2;
  out.parity = ((m + pp.delta + half) % 2 == 0) ? 1 : -1;
  out.binoms = binomial_product(pp, m);
  out.scalar = sign_power(pp.delta) * power_of_i(half - m + 1) * out.binoms;
  const GaussianRational lhs = sign_power(pp.delta + pp.l2 + 1) * power_of_i(half + 2 * pp.l2 - m - 1);
  const GaussianRational rhs = sign_power(pp.delta) * power_of_i(half - m + 1);
  out.assembly_identity = (lhs == rhs);
  return out;
}

struct AuxConstants {
  long modified_exponent = 0;          // i-power exponent l3/2 + l2 - 3m of the modified factor
  GaussianRational nabla_coefficient;  // (-1)^{delta+m} i^{l2-1} / binomial product
  int e_infinity = 1;                  // (-1)^{delta + l2 + 1}
  int omega2 = 1;                      // central sign (-1)^{l2+1}
  int omega3 = 1;                      // central sign -(-1)^delta
};

inline AuxConstants aux_constants(const PiParams& pp, long m) {
  if (!is_critical(pp, m)) throw std::domain_error("aux_constants: m is not critical");
  AuxConstants out;
  out.modified_exponent = pp.l3 / 2 + pp.l2 - 3 * m;
  const GaussianRational c = binomial_product(pp, m);
  if (c.is_zero()) throw std::domain_error("aux_constants: vanishing binomial product");
  out.nabla_coefficient = sign_power(pp.delta + m) * power_of_i(pp.l2 - 1) * c.inverse();
  out.e_infinity = ((pp.delta + pp.l2 + 1) % 2 == 0) ? 1 : -1;
  out.omega2 = ((pp.l2 + 1) % 2 == 0) ? 1 : -1;
  out.omega3 = (pp.delta % 2 == 0) ? -1 : 1;
  return out;
}

}  // namespace branchkit
