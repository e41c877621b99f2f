#pragma once

// Scalar backends shared by the q-Euler, measure and l-function code.
// Algorithms are written once against a Field and run either in exact
// rationals (the oracle backend) or in Q_p at finite precision.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

#include "plq/dirichlet.hpp"
#include "plq/padic.hpp"

namespace plq {

inline mpq_class power(const mpq_class& x, long n) {
  if (n < 0) {
    if (x == 0) throw std::domain_error("power: zero to a negative exponent");
    return power(mpq_class(x.get_den(), x.get_num()), -n);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), static_cast<unsigned long>(n));
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

/// Exact rationals.  Carries p only to validate parameters and to measure
/// p-adic agreement.
struct RationalField {
  using value_type = mpq_class;

  long p = 0;

  value_type from(long n) const { return mpq_class(n); }
  value_type from(const mpz_class& n) const { return mpq_class(n); }
  value_type from(const mpq_class& r) const { return r; }

  value_type chi(const DirichletCharacter& c, long a) const { return mpq_class(c.sign(a)); }

  long valuation(const value_type& x) const { return plq::valuation(x, p); }

  /// v_p(x - y); kInfinity when equal.
  long agreement(const value_type& x, const value_type& y) const { return plq::valuation(mpq_class(x - y), p); }

  static std::string str(const value_type& x) { return x.get_str(); }
};

/// Q_p at the context's precision.
struct PadicField {
  using value_type = PadicNum;

  PadicContext ctx;

  value_type from(long n) const { return PadicNum(ctx, n); }
  value_type from(const mpz_class& n) const { return PadicNum::from_integer(ctx, n); }
  value_type from(const mpq_class& r) const { return PadicNum::from_rational(ctx, r); }
  value_type from(const PadicNum& x) const { return x.rebase(ctx); }

  value_type chi(const DirichletCharacter& c, long a) const { return c(a, ctx); }

  long valuation(const value_type& x) const { return x.valuation(); }
  long agreement(const value_type& x, const value_type& y) const { return plq::agreement(x, y); }

  static std::string str(const value_type& x) { return x.to_string(); }
};

inline long field_prime(const RationalField& f) { return f.p; }
inline long field_prime(const PadicField& f) { return f.ctx.prime(); }

}  // namespace plq
