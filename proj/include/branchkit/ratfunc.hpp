#pragma once
// Quotients of MultiPoly. No gcd reduction: the representation is only
// normalized so the denominator's lex-leading coefficient is 1, and equality
// is decided by cross-multiplication.

#include <map>
#include <stdexcept>
#include <string>

#include "multipoly.hpp"

namespace branchkit {

class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(const MultiPoly& num)
      : num_(num), den_(MultiPoly::constant(num.vars(), GaussianRational(1))) {}
  RationalFunction(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.vars() != den_.vars()) throw std::invalid_argument("variable-set mismatch");
    normalize();
  }

  static RationalFunction constant(const VariableSet& vars, const GaussianRational& c) {
    return RationalFunction(MultiPoly::constant(vars, c));
  }
  static RationalFunction variable(const VariableSet& vars, const std::string& name) {
    return RationalFunction(MultiPoly::variable(vars, name));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const VariableSet& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const {
    return den_ == MultiPoly::constant(num_.vars(), GaussianRational(1));
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const GaussianRational& c, const RationalFunction& p) {
    return RationalFunction(c * p.num_, p.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction pow(long e) const {
    if (e < 0) {
      if (is_zero()) throw std::domain_error("inverse of zero rational function");
      return RationalFunction(den_, num_).pow(-e);
    }
    return RationalFunction(num_.pow(e), den_.pow(e));
  }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  void normalize() {
    GaussianRational lead = den_.leading().second;
    if (lead != GaussianRational(1)) {
      GaussianRational inv = lead.inverse();
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

  MultiPoly num_, den_;
};

inline RationalFunction derivative(const RationalFunction& f, const std::string& var) {
  // quotient rule; no cancellation attempted
  MultiPoly dn = partial_derivative(f.num(), var);
  MultiPoly dd = partial_derivative(f.den(), var);
  return RationalFunction(dn * f.den() - f.num() * dd, f.den() * f.den());
}

// Composition with rational-function images. All images must share one
// variable set; unbound variables of p must exist there by name.
inline RationalFunction substitute_rf(const MultiPoly& p,
                                      const std::map<std::string, RationalFunction>& bindings) {
  if (bindings.empty()) throw std::invalid_argument("substitute_rf: no bindings");
  const VariableSet& target = bindings.begin()->second.vars();
  for (const auto& [name, img] : bindings) {
    p.vars().index_or_throw(name);
    if (img.vars() != target) throw std::invalid_argument("substitute_rf: image variable sets differ");
  }
  std::vector<RationalFunction> images;
  for (const auto& n : p.vars().names) {
    auto it = bindings.find(n);
    images.push_back(it == bindings.end() ? RationalFunction::variable(target, n) : it->second);
  }
  RationalFunction r = RationalFunction::constant(target, GaussianRational(0));
  for (const auto& [e, c] : p.terms()) {
    RationalFunction term = RationalFunction::constant(target, c);
    for (size_t k = 0; k < e.size(); ++k)
      if (e[k] > 0) term *= images[k].pow(e[k]);
    r += term;
  }
  return r;
}

inline RationalFunction substitute_rf(const RationalFunction& f,
                                      const std::map<std::string, RationalFunction>& bindings) {
  return substitute_rf(f.num(), bindings) / substitute_rf(f.den(), bindings);
}

}  // namespace branchkit
