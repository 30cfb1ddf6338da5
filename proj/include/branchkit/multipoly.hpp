#pragma once
// Sparse multivariate polynomials over GaussianRational. Monomials are
// exponent vectors against a fixed, ordered variable list; the monomial
// order everywhere is lexicographic in that list order.

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace branchkit {

struct VariableSet {
  std::vector<std::string> names;

  VariableSet() = default;
  explicit VariableSet(std::vector<std::string> n) : names(std::move(n)) {
    for (size_t a = 0; a < names.size(); ++a)
      for (size_t b = a + 1; b < names.size(); ++b)
        if (names[a] == names[b]) throw std::invalid_argument("duplicate variable " + names[a]);
  }

  size_t size() const { return names.size(); }
  int index(const std::string& name) const {
    for (size_t k = 0; k < names.size(); ++k)
      if (names[k] == name) return static_cast<int>(k);
    return -1;
  }
  int index_or_throw(const std::string& name) const {
    int k = index(name);
    if (k < 0) throw std::invalid_argument("unknown variable " + name);
    return k;
  }
  friend bool operator==(const VariableSet& a, const VariableSet& b) { return a.names == b.names; }
  friend bool operator!=(const VariableSet& a, const VariableSet& b) { return !(a == b); }
};

using Expo = std::vector<int>;

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(VariableSet vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(const VariableSet& vars, const GaussianRational& c) {
    MultiPoly p(vars);
    if (!c.is_zero()) p.terms_[Expo(vars.size(), 0)] = c;
    return p;
  }
  static MultiPoly variable(const VariableSet& vars, const std::string& name, int power = 1) {
    MultiPoly p(vars);
    Expo e(vars.size(), 0);
    e[vars.index_or_throw(name)] = power;
    p.terms_[e] = GaussianRational(1);
    return p;
  }
  static MultiPoly monomial(const VariableSet& vars, const Expo& e, const GaussianRational& c) {
    if (e.size() != vars.size()) throw std::invalid_argument("exponent size mismatch");
    MultiPoly p(vars);
    if (!c.is_zero()) p.terms_[e] = c;
    return p;
  }

  const VariableSet& vars() const { return vars_; }
  const std::map<Expo, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  GaussianRational coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussianRational(0) : it->second;
  }
  GaussianRational constant_term() const { return coeff(Expo(vars_.size(), 0)); }

  // Lex-greatest monomial; only meaningful on nonzero polynomials.
  const std::pair<const Expo, GaussianRational>& leading() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  void add_term(const Expo& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    a.check_same_vars(b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    a.check_same_vars(b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_same_vars(b);
    MultiPoly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Expo e(ea);
        for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const GaussianRational& c, const MultiPoly& p) {
    MultiPoly r(p.vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, pc] : p.terms_) r.terms_[e] = c * pc;
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
  // Lexicographic on the term maps; canonical orderings only.
  friend bool operator<(const MultiPoly& a, const MultiPoly& b) { return a.terms_ < b.terms_; }

  MultiPoly pow(long e) const {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    MultiPoly acc = constant(vars_, GaussianRational(1));
    MultiPoly base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  int degree_in(const std::string& name) const {
    int k = vars_.index_or_throw(name);
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }
  // Exact homogeneous degree in a subset of variables, or -1 if mixed.
  int homogeneous_degree(const std::vector<std::string>& subset) const {
    std::vector<int> idx;
    for (const auto& n : subset) idx.push_back(vars_.index_or_throw(n));
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : idx) s += e[k];
      if (d < 0)
        d = s;
      else if (d != s)
        return -1;
    }
    return d;
  }
  bool is_homogeneous(const std::vector<std::string>& subset, int want) const {
    return is_zero() || homogeneous_degree(subset) == want;
  }

  std::string str() const;

 private:
  void check_same_vars(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw std::invalid_argument("variable-set mismatch");
  }

  VariableSet vars_;
  std::map<Expo, GaussianRational> terms_;
};

inline MultiPoly partial_derivative(const MultiPoly& p, const std::string& var, int order = 1) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  int k = p.vars().index_or_throw(var);
  MultiPoly cur = p;
  for (int step = 0; step < order; ++step) {
    MultiPoly next(p.vars());
    for (const auto& [e, c] : cur.terms()) {
      if (e[k] == 0) continue;
      Expo d(e);
      d[k] -= 1;
      next.add_term(d, GaussianRational(e[k]) * c);
    }
    cur = next;
  }
  return cur;
}

inline MultiPoly expand_power(const MultiPoly& base, long e) { return base.pow(e); }

// Embeds p into `target`, which must contain every variable p actually uses.
inline MultiPoly embed(const MultiPoly& p, const VariableSet& target) {
  std::vector<int> where(p.vars().size(), -1);
  for (size_t k = 0; k < p.vars().size(); ++k) where[k] = target.index(p.vars().names[k]);
  MultiPoly r(target);
  for (const auto& [e, c] : p.terms()) {
    Expo t(target.size(), 0);
    for (size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (where[k] < 0) throw std::invalid_argument("embed: missing variable " + p.vars().names[k]);
      t[where[k]] = e[k];
    }
    r.add_term(t, c);
  }
  return r;
}

// Composition: every variable either bound to an image polynomial or kept.
// The result lives over the remaining variables followed by any new image
// variables, in first-appearance order.
inline MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings) {
  for (const auto& [name, img] : bindings) p.vars().index_or_throw(name);
  std::vector<std::string> out_names;
  for (const auto& n : p.vars().names)
    if (!bindings.count(n)) out_names.push_back(n);
  for (const auto& [name, img] : bindings)
    for (const auto& n : img.vars().names)
      if (std::find(out_names.begin(), out_names.end(), n) == out_names.end())
        out_names.push_back(n);
  VariableSet target(out_names);

  std::vector<MultiPoly> images;
  for (const auto& n : p.vars().names) {
    auto it = bindings.find(n);
    images.push_back(it == bindings.end() ? MultiPoly::variable(target, n)
                                          : embed(it->second, target));
  }
  MultiPoly r(target);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(target, c);
    for (size_t k = 0; k < e.size(); ++k)
      if (e[k] > 0) term *= images[k].pow(e[k]);
    r += term;
  }
  return r;
}

// ---- canonical text form ------------------------------------------------
// Terms render lex-descending. Coefficients with both real and imaginary
// parts are parenthesized so the output stays inside the parser grammar.

inline std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Expo& e = it->first;
    const GaussianRational& c = it->second;
    std::string mono;
    for (size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_.names[k];
      if (e[k] != 1) mono += "^" + std::to_string(e[k]);
    }
    std::string cs;
    bool negative = false;
    bool mixed = c.re() != 0 && c.im() != 0;
    if (!mono.empty() && c == GaussianRational(1)) {
      cs = "";
    } else if (!mono.empty() && c == -GaussianRational(1)) {
      cs = "";
      negative = true;
    } else if (mixed) {
      cs = "(" + c.str() + ")";
    } else {
      cs = c.str();
      if (cs[0] == '-') {
        negative = true;
        cs = cs.substr(1);
      }
    }
    std::string body = cs.empty() ? mono : (mono.empty() ? cs : cs + "*" + mono);
    if (out.empty())
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

// ---- parser ---------------------------------------------------------------
// expr := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := rational | 'i' | name ['^' int] | '(' expr ')'.

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& text, const VariableSet& vars) : s_(text), vars_(vars) {}

  MultiPoly parse() {
    MultiPoly r = expr();
    skip();
    if (pos_ != s_.size()) throw std::invalid_argument("trailing input in polynomial: " + s_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    bool neg = false;
    skip();
    if (eat('-')) neg = true;
    else eat('+');
    MultiPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  MultiPoly factor() {
    skip();
    if (pos_ >= s_.size()) throw std::invalid_argument("truncated polynomial: " + s_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!eat(')')) throw std::invalid_argument("missing ')' in polynomial: " + s_);
      return inner;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      mpq_class q = parse_rat(s_, pos_);
      return MultiPoly::constant(vars_, GaussianRational(q, mpq_class(0)));
    }
    std::string name = ident();
    if (name == "i" && vars_.index("i") < 0)
      return MultiPoly::constant(vars_, GaussianRational::i());
    int power = 1;
    if (eat('^')) {
      skip();
      size_t start = pos_;
      if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
      while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start) throw std::invalid_argument("missing exponent: " + s_);
      power = std::stoi(s_.substr(start, pos_ - start));
      if (power < 0) throw std::invalid_argument("negative exponent in polynomial: " + s_);
    }
    return MultiPoly::variable(vars_, name, power);
  }

  std::string ident() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) throw std::invalid_argument("expected name in polynomial: " + s_);
    return s_.substr(start, pos_ - start);
  }

  const std::string& s_;
  const VariableSet& vars_;
  size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly parse_poly(const std::string& text, const VariableSet& vars) {
  return detail::PolyParser(text, vars).parse();
}

}  // namespace branchkit
