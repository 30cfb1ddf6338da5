#pragma once
// Exact Gaussian-rational arithmetic: values a + b*i with reduced rational
// parts. This is the coefficient field for every polynomial and matrix in
// the library.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace branchkit {

class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(long n) : re_(n), im_(0) {}
  GaussianRational(long num, long den) : re_(num, den), im_(0) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    re_.canonicalize();
  }
  GaussianRational(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }
  static GaussianRational rational(long num, long den) { return GaussianRational(num, den); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
  }
  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_,
                            a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
  // Lexicographic (re, im); used only for canonical orderings, not a field order.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
  }

  GaussianRational inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    mpq_class n = re_ * re_ + im_ * im_;
    return GaussianRational(re_ / n, -im_ / n);
  }

  GaussianRational conj() const { return GaussianRational(re_, -im_); }

  GaussianRational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    GaussianRational acc(1), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  double re_double() const { return re_.get_d(); }
  double im_double() const { return im_.get_d(); }

  // "a/b + c/d*i" with zero parts suppressed; ±i coefficients abbreviated.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out = re_.get_str();
    if (im_ != 0) {
      std::string im_part;
      if (im_ == 1)
        im_part = "i";
      else if (im_ == -1)
        im_part = "-i";
      else
        im_part = im_.get_str() + "*i";
      if (out.empty()) {
        out = im_part;
      } else if (im_part[0] == '-') {
        out += " - " + im_part.substr(1);
      } else {
        out += " + " + im_part;
      }
    }
    return out;
  }

 private:
  mpq_class re_, im_;
};

inline GaussianRational power_of_i(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return GaussianRational(1);
    case 1: return GaussianRational::i();
    case 2: return GaussianRational(-1);
    default: return -GaussianRational::i();
  }
}

inline GaussianRational field_inverse(const GaussianRational& x) { return x.inverse(); }

inline GaussianRational sign_power(long k) { return (k % 2 + 2) % 2 == 0 ? GaussianRational(1) : GaussianRational(-1); }

inline mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// binom(n, k) with the usual convention: 0 when k < 0 or k > n.
inline mpz_class binom(long n, long k) {
  if (k < 0 || k > n || n < 0) return mpz_class(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline GaussianRational from_mpz(const mpz_class& z) {
  return GaussianRational(mpq_class(z), mpq_class(0));
}

// Parses the renderer's grammar: [+-] rat [*i] [+- rat [*i]], where rat is
// "p" or "p/q"; lone "i" allowed. Whitespace around tokens is skipped.
GaussianRational parse_scalar(const std::string& text);

namespace detail {
inline void skip_ws(const std::string& s, size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

inline mpq_class parse_rat(const std::string& s, size_t& pos) {
  size_t start = pos;
  while (pos < s.size() && (isdigit(s[pos]) || s[pos] == '/')) ++pos;
  if (pos == start) throw std::invalid_argument("expected number in scalar: " + s);
  mpq_class q(s.substr(start, pos - start));
  q.canonicalize();
  return q;
}
}  // namespace detail

inline GaussianRational parse_scalar(const std::string& text) {
  size_t pos = 0;
  mpq_class re(0), im(0);
  detail::skip_ws(text, pos);
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      detail::skip_ws(text, pos);
    } else if (!first) {
      throw std::invalid_argument("expected +/- in scalar: " + text);
    }
    first = false;
    mpq_class mag(1);
    bool have_mag = false;
    if (pos < text.size() && isdigit(text[pos])) {
      mag = detail::parse_rat(text, pos);
      have_mag = true;
      detail::skip_ws(text, pos);
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        detail::skip_ws(text, pos);
      }
    }
    if (pos < text.size() && text[pos] == 'i') {
      ++pos;
      im += sign * mag;
    } else if (have_mag) {
      re += sign * mag;
    } else {
      throw std::invalid_argument("malformed scalar: " + text);
    }
    detail::skip_ws(text, pos);
  }
  if (first) throw std::invalid_argument("empty scalar");
  return GaussianRational(re, im);
}

}  // namespace branchkit
