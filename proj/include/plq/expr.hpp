#pragma once

// Small expression language for command-line parameters.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | implicit unary)*
//   unary   := '-' unary | factor
//   factor  := primary ('^' integer)?
//   primary := integer | 'p' | 't' | 'a' | '(' expr ')'
//
// "3p" and "2(t+a)" multiply implicitly.  Values are polynomials in a with
// rational coefficients; p and t are substituted by numbers.

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plq {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& input, size_t pos, const std::string& what)
      : std::invalid_argument("cannot parse '" + input + "' at position " + std::to_string(pos) + " ('" +
                              (pos < input.size() ? input.substr(pos, 8) : std::string("<end>")) + "'): " + what) {}
};

/// Coefficients c_0, c_1, ... of a polynomial in a.
using RationalPoly = std::vector<mpq_class>;

namespace detail {

inline void trim(RationalPoly& x) {
  while (x.size() > 1 && x.back() == 0) x.pop_back();
  if (x.empty()) x.emplace_back(0);
}

inline RationalPoly poly_add(const RationalPoly& x, const RationalPoly& y, int sign) {
  RationalPoly r(std::max(x.size(), y.size()), mpq_class(0));
  for (size_t i = 0; i < x.size(); ++i) r[i] += x[i];
  for (size_t i = 0; i < y.size(); ++i) r[i] += sign * y[i];
  trim(r);
  return r;
}

inline RationalPoly poly_mul(const RationalPoly& x, const RationalPoly& y) {
  RationalPoly r(x.size() + y.size() - 1, mpq_class(0));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  trim(r);
  return r;
}

class ExprParser {
 public:
  ExprParser(const std::string& s, long p, std::optional<mpq_class> t, bool allow_a)
      : s_(s), p_(p), t_(std::move(t)), allow_a_(allow_a) {}

  RationalPoly parse() {
    RationalPoly v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(s_, pos_, "unexpected token");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  RationalPoly expr() {
    RationalPoly v = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        v = poly_add(v, term(), 1);
      } else if (peek('-')) {
        ++pos_;
        v = poly_add(v, term(), -1);
      } else {
        return v;
      }
    }
  }

  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || c == 'p' || c == 't' || c == 'a';
  }

  RationalPoly term() {
    RationalPoly v = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        v = poly_mul(v, unary());
      } else if (peek('/')) {
        const size_t at = ++pos_;
        RationalPoly d = unary();
        if (d.size() != 1) throw ParseError(s_, at, "division by a polynomial in a");
        if (d[0] == 0) throw ParseError(s_, at, "division by zero");
        for (auto& c : v) c /= d[0];
      } else if (starts_primary()) {
        v = poly_mul(v, factor());
      } else {
        return v;
      }
    }
  }

  RationalPoly unary() {
    if (peek('-')) {
      ++pos_;
      RationalPoly v = unary();
      for (auto& c : v) c = -c;
      return v;
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return factor();
  }

  RationalPoly factor() {
    RationalPoly base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError(s_, start, "expected a non-negative integer exponent");
      const long e = std::stol(s_.substr(start, pos_ - start));
      RationalPoly r{mpq_class(1)};
      for (long i = 0; i < e; ++i) r = poly_mul(r, base);
      return r;
    }
    return base;
  }

  RationalPoly primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(s_, pos_, "unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {mpq_class(mpz_class(s_.substr(start, pos_ - start)))};
    }
    if (c == '(') {
      ++pos_;
      RationalPoly v = expr();
      if (!peek(')')) throw ParseError(s_, pos_, "expected ')'");
      ++pos_;
      return v;
    }
    if (c == 'p') {
      ++pos_;
      return {mpq_class(p_)};
    }
    if (c == 't') {
      if (!t_) throw ParseError(s_, pos_, "'t' is not allowed here");
      ++pos_;
      return {*t_};
    }
    if (c == 'a') {
      if (!allow_a_) throw ParseError(s_, pos_, "'a' is not allowed here");
      ++pos_;
      return {mpq_class(0), mpq_class(1)};
    }
    throw ParseError(s_, pos_, "unexpected token");
  }

  std::string s_;
  size_t pos_ = 0;
  long p_;
  std::optional<mpq_class> t_;
  bool allow_a_;
};

}  // namespace detail

/// A rational number written in terms of p, e.g. "1+p^2", "-3", "7/2", "2+3p".
inline mpq_class parse_rational(const std::string& s, long p) {
  return detail::ExprParser(s, p, std::nullopt, false).parse()[0];
}

/// A polynomial in a with t substituted, e.g. "(t+a)^3", "a^2 - 2a".
inline RationalPoly parse_polynomial(const std::string& s, long p, const mpq_class& t) {
  return detail::ExprParser(s, p, t, true).parse();
}

}  // namespace plq
