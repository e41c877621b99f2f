#pragma once

/**
 * @file padic.hpp
 * @brief Capped-relative-precision p-adic numbers.
 *
 * A PadicNum stores p^v * u where u is a p-unit known modulo p^r.  The
 * relative precision r never exceeds the context cap N.  Every operation
 * propagates precision conservatively, so a result never claims digits its
 * inputs did not determine.  Zero is special: an exact zero has infinite
 * valuation, while a cancelled result is "zero to absolute precision k",
 * i.e. only known to lie in p^k Z_p.
 *
 * Also provides the Teichmuller lift, the principal-unit projection
 * <a + p t>, and the binomial-series power x^s for x in 1 + pZ_p.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace plq {

/// Valuation of exact zero; also "unbounded" absolute precision.
inline constexpr long kInfinity = std::numeric_limits<long>::max();

namespace detail {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Strips every factor p from n (n != 0) and returns how many were removed.
inline long strip(mpz_class& n, long p) {
  if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) == 0) return 0;
  mpz_class f(p);
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), f.get_mpz_t()));
}

inline mpz_class pow_ui(long p, long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

inline void mod_into(mpz_class& x, const mpz_class& m) {
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
}

}  // namespace detail

/// v_p of a nonzero integer; kInfinity for 0.
inline long valuation(const mpz_class& n, long p) {
  if (n == 0) return kInfinity;
  mpz_class m = abs(n);
  return detail::strip(m, p);
}

/// v_p of a rational; kInfinity for 0.
inline long valuation(const mpq_class& r, long p) {
  if (r == 0) return kInfinity;
  return valuation(mpz_class(r.get_num()), p) - valuation(mpz_class(r.get_den()), p);
}

/// v_p(m!) by Legendre's formula.
inline long factorial_valuation(long m, long p) {
  long v = 0;
  for (long pk = p; pk <= m; pk *= p) {
    v += m / pk;
    if (pk > m / p) break;
  }
  return v;
}

/// Shared, immutable description of a p-adic working field: the prime and
/// the relative precision cap.
class PadicContext {
 public:
  PadicContext(long p, long precision) {
    if (p < 3 || !detail::is_prime(p))
      throw std::invalid_argument("PadicContext: p must be an odd prime, got " + std::to_string(p));
    if (precision < 1)
      throw std::invalid_argument("PadicContext: precision must be >= 1");
    auto d = std::make_shared<Data>();
    d->p = p;
    d->N = precision;
    d->pow.reserve(static_cast<size_t>(2 * precision + 2));
    mpz_class x = 1;
    for (long k = 0; k <= 2 * precision + 1; ++k) {
      d->pow.push_back(x);
      x *= p;
    }
    data_ = std::move(d);
  }

  long prime() const noexcept { return data_->p; }
  long precision() const noexcept { return data_->N; }

  /// p^k for 0 <= k <= 2N+1, without allocation.
  const mpz_class& cached_power(long k) const { return data_->pow.at(static_cast<size_t>(k)); }

  mpz_class power(long k) const {
    if (k >= 0 && k < static_cast<long>(data_->pow.size())) return data_->pow[static_cast<size_t>(k)];
    return detail::pow_ui(data_->p, k);
  }

  /// Same prime, different cap.
  PadicContext with_precision(long precision) const { return PadicContext(prime(), precision); }

  friend bool operator==(const PadicContext& a, const PadicContext& b) noexcept {
    return a.data_ == b.data_ || (a.data_->p == b.data_->p && a.data_->N == b.data_->N);
  }

 private:
  struct Data {
    long p = 0;
    long N = 0;
    std::vector<mpz_class> pow;
  };
  std::shared_ptr<const Data> data_;
};

class PadicNum {
 public:
  /// Exact zero.
  explicit PadicNum(PadicContext ctx) : ctx_(std::move(ctx)), val_(kInfinity), prec_(0) {}

  PadicNum(PadicContext ctx, long n) : PadicNum(from_integer(std::move(ctx), mpz_class(n))) {}

  static PadicNum exact_zero(const PadicContext& ctx) { return PadicNum(ctx); }

  /// Zero known only modulo p^abs_prec.
  static PadicNum zero(const PadicContext& ctx, long abs_prec) {
    PadicNum z(ctx);
    z.val_ = abs_prec;
    return z;
  }

  static PadicNum from_integer(PadicContext ctx, const mpz_class& n) {
    if (n == 0) return PadicNum(std::move(ctx));
    mpz_class u = n;
    long v = detail::strip(u, ctx.prime());
    return normalized(std::move(ctx), v, std::move(u), ctx.precision());
  }

  static PadicNum from_rational(PadicContext ctx, const mpq_class& r) {
    if (r == 0) return PadicNum(std::move(ctx));
    mpz_class num = r.get_num();
    mpz_class den = r.get_den();
    long v = detail::strip(num, ctx.prime()) - detail::strip(den, ctx.prime());
    const mpz_class& m = ctx.cached_power(ctx.precision());
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    mpz_class u = num * inv;
    detail::mod_into(u, m);
    PadicNum out(std::move(ctx));
    out.val_ = v;
    out.prec_ = out.ctx_.precision();
    out.unit_ = std::move(u);
    return out;
  }

  /// Value p^v * s known modulo p^(v+k); s need not be a unit or reduced.
  static PadicNum from_parts(PadicContext ctx, long v, mpz_class s, long k) {
    return normalized(std::move(ctx), v, std::move(s), k);
  }

  /// Inverse of digits(): p^valuation * sum d_i p^i, known to digits.size() places.
  static PadicNum from_digits(PadicContext ctx, long valuation, const std::vector<long>& digits) {
    if (digits.empty()) return zero(ctx, valuation);
    mpz_class s = 0;
    for (size_t i = digits.size(); i-- > 0;) {
      if (digits[i] < 0 || digits[i] >= ctx.prime())
        throw std::invalid_argument("PadicNum::from_digits: digit out of range");
      s = s * ctx.prime() + digits[i];
    }
    return normalized(std::move(ctx), valuation, std::move(s), static_cast<long>(digits.size()));
  }

  const PadicContext& context() const noexcept { return ctx_; }
  long prime() const noexcept { return ctx_.prime(); }

  bool is_zero() const noexcept { return prec_ == 0; }
  bool is_exact_zero() const noexcept { return prec_ == 0 && val_ == kInfinity; }

  /// For nonzero values the true valuation.  For a zero, the known lower
  /// bound (its absolute precision), kInfinity when exact.
  long valuation() const noexcept { return val_; }
  long relative_precision() const noexcept { return prec_; }
  long absolute_precision() const noexcept { return is_zero() ? val_ : val_ + prec_; }
  const mpz_class& unit() const noexcept { return unit_; }

  /// Forget every digit at or beyond p^abs_prec.
  PadicNum reduce(long abs_prec) const {
    if (abs_prec >= absolute_precision()) return *this;
    if (is_zero() || abs_prec <= val_) return zero(ctx_, abs_prec);
    PadicNum out = *this;
    out.prec_ = abs_prec - val_;
    detail::mod_into(out.unit_, ctx_.cached_power(out.prec_));
    return out;
  }

  /// Move into another context over the same prime.  Digits beyond the new
  /// cap are dropped; no digits are invented when the cap grows.
  PadicNum rebase(const PadicContext& ctx) const {
    if (ctx.prime() != prime())
      throw std::invalid_argument("PadicNum::rebase: prime mismatch");
    PadicNum out = *this;
    out.ctx_ = ctx;
    if (out.prec_ > ctx.precision()) {
      out.prec_ = ctx.precision();
      detail::mod_into(out.unit_, ctx.cached_power(out.prec_));
    }
    return out;
  }

  /// The value modulo p^k as an integer in [0, p^k).  Requires an integral
  /// value and k no larger than the absolute precision.
  mpz_class residue(long k) const {
    if (k > absolute_precision())
      throw std::domain_error("PadicNum::residue: requested " + std::to_string(k) +
                              " digits, only " + std::to_string(absolute_precision()) + " known");
    if (is_zero() || val_ >= k) return 0;
    if (val_ < 0) throw std::domain_error("PadicNum::residue: value is not integral");
    mpz_class pk = ctx_.power(k);
    mpz_class r = unit_ * ctx_.power(val_);
    detail::mod_into(r, pk);
    return r;
  }

  /// Base-p digits of the unit part, least significant first.
  std::vector<long> digits() const {
    std::vector<long> out;
    out.reserve(static_cast<size_t>(prec_));
    mpz_class u = unit_;
    for (long i = 0; i < prec_; ++i) {
      out.push_back(static_cast<long>(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(),
                                                    static_cast<unsigned long>(prime()))));
    }
    return out;
  }

  PadicNum operator-() const {
    if (is_zero()) return *this;
    PadicNum out = *this;
    out.unit_ = ctx_.cached_power(prec_) - unit_;
    return out;
  }

  friend PadicNum operator+(const PadicNum& x, const PadicNum& y) {
    check_same(x, y);
    if (x.is_exact_zero()) return y;
    if (y.is_exact_zero()) return x;
    const long A = std::min(x.absolute_precision(), y.absolute_precision());
    if (x.is_zero()) return y.reduce(A);
    if (y.is_zero()) return x.reduce(A);
    const long v = std::min(x.val_, y.val_);
    if (A <= v) return zero(x.ctx_, A);
    const long k = A - v;
    const PadicContext& ctx = x.ctx_;
    mpz_class s;
    auto accumulate = [&](const PadicNum& z) {
      const long shift = z.val_ - v;
      if (shift >= k) return;
      if (shift == 0)
        s += z.unit_;
      else
        s += z.unit_ * ctx.cached_power(shift);
    };
    accumulate(x);
    accumulate(y);
    return normalized(ctx, v, std::move(s), k);
  }

  friend PadicNum operator-(const PadicNum& x, const PadicNum& y) { return x + (-y); }

  friend PadicNum operator*(const PadicNum& x, const PadicNum& y) {
    check_same(x, y);
    if (x.is_exact_zero() || y.is_exact_zero()) return exact_zero(x.ctx_);
    if (x.is_zero() || y.is_zero()) {
      // x*y lies in p^(vx+vy) Z_p, where a zero contributes its precision.
      return zero(x.ctx_, x.val_ + y.val_);
    }
    PadicNum out(x.ctx_);
    out.val_ = x.val_ + y.val_;
    out.prec_ = std::min(x.prec_, y.prec_);
    out.unit_ = x.unit_ * y.unit_;
    detail::mod_into(out.unit_, x.ctx_.cached_power(out.prec_));
    return out;
  }

  friend PadicNum operator/(const PadicNum& x, const PadicNum& y) {
    check_same(x, y);
    if (y.is_zero()) throw std::domain_error("PadicNum: division by zero");
    if (x.is_exact_zero()) return x;
    if (x.is_zero()) return zero(x.ctx_, x.val_ - y.val_);
    PadicNum out(x.ctx_);
    out.val_ = x.val_ - y.val_;
    out.prec_ = std::min(x.prec_, y.prec_);
    const mpz_class& m = x.ctx_.cached_power(out.prec_);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), y.unit_.get_mpz_t(), m.get_mpz_t());
    out.unit_ = x.unit_ * inv;
    detail::mod_into(out.unit_, m);
    return out;
  }

  PadicNum& operator+=(const PadicNum& y) { return *this = *this + y; }
  PadicNum& operator-=(const PadicNum& y) { return *this = *this - y; }
  PadicNum& operator*=(const PadicNum& y) { return *this = *this * y; }
  PadicNum& operator/=(const PadicNum& y) { return *this = *this / y; }

  PadicNum inverse() const { return PadicNum(ctx_, 1) / *this; }

  /// Integer power by repeated squaring; negative exponents invert first.
  PadicNum pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    PadicNum result(ctx_, 1);
    PadicNum base = *this;
    while (n > 0) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n > 0) base *= base;
    }
    return result;
  }

  std::string to_string() const {
    if (is_exact_zero()) return "0";
    if (is_zero()) return "O(" + std::to_string(prime()) + "^" + std::to_string(val_) + ")";
    std::string s = unit_.get_str();
    if (val_ != 0) s += "*" + std::to_string(prime()) + "^" + std::to_string(val_);
    s += " + O(" + std::to_string(prime()) + "^" + std::to_string(absolute_precision()) + ")";
    return s;
  }

 private:
  static void check_same(const PadicNum& x, const PadicNum& y) {
    if (!(x.ctx_ == y.ctx_)) throw std::invalid_argument("PadicNum: context mismatch");
  }

  static PadicNum normalized(PadicContext ctx, long v, mpz_class s, long k) {
    if (k <= 0) return zero(ctx, v + std::max(k, 0L));
    const long p = ctx.prime();
    if (k <= ctx.precision() * 2 + 1)
      detail::mod_into(s, ctx.cached_power(k));
    else
      detail::mod_into(s, detail::pow_ui(p, k));
    if (s == 0) return zero(ctx, v + k);
    long e = detail::strip(s, p);
    PadicNum out(std::move(ctx));
    out.val_ = v + e;
    out.prec_ = k - e;
    if (out.prec_ > out.ctx_.precision()) {
      out.prec_ = out.ctx_.precision();
      detail::mod_into(s, out.ctx_.cached_power(out.prec_));
    }
    out.unit_ = std::move(s);
    return out;
  }

  PadicContext ctx_;
  long val_;
  long prec_;
  mpz_class unit_;
};

/// min(v(x - y), precision of x, precision of y): the number of leading
/// absolute digits on which x and y provably agree.  Contexts may differ as
/// long as the prime matches.
inline long agreement(const PadicNum& x, const PadicNum& y) {
  if (x.prime() != y.prime()) throw std::invalid_argument("agreement: prime mismatch");
  const PadicContext& big =
      x.context().precision() >= y.context().precision() ? x.context() : y.context();
  const PadicNum d = x.rebase(big) - y.rebase(big);
  return d.valuation();
}

/// True when x and y agree modulo p^k and both are known that far.
inline bool equal_at(const PadicNum& x, const PadicNum& y, long k) { return agreement(x, y) >= k; }

inline PadicNum power(const PadicNum& x, long n) { return x.pow(n); }

/// omega(a): the (p-1)-th root of unity congruent to a mod p, obtained by
/// iterating x <- x^p to its fixed point modulo p^N.
inline PadicNum teichmuller(const PadicContext& ctx, const mpz_class& a) {
  const long p = ctx.prime();
  if (mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(p)) != 0)
    throw std::invalid_argument("teichmuller: argument " + a.get_str() + " is divisible by p");
  const mpz_class& m = ctx.cached_power(ctx.precision());
  mpz_class x = a;
  detail::mod_into(x, m);
  mpz_class pz(p);
  for (long round = 0; round <= ctx.precision(); ++round) {
    mpz_class y;
    mpz_powm(y.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t(), m.get_mpz_t());
    if (y == x) break;
    x = std::move(y);
  }
  return PadicNum::from_integer(ctx, x);
}

inline PadicNum teichmuller(const PadicContext& ctx, long a) { return teichmuller(ctx, mpz_class(a)); }

/// <a + p t> = omega(a)^(-1) (a + p t), a principal unit.
inline PadicNum angle(long a, const PadicNum& t) {
  const PadicContext& ctx = t.context();
  if (a % ctx.prime() == 0)
    throw std::invalid_argument("angle: a = " + std::to_string(a) + " is not a p-unit");
  if (!t.is_zero() && t.valuation() < 0)
    throw std::domain_error("angle: t must satisfy |t|_p <= 1");
  PadicNum base = PadicNum(ctx, a) + PadicNum(ctx, ctx.prime()) * t;
  return base / teichmuller(ctx, a);
}

inline PadicNum angle(long a, const PadicContext& ctx) { return angle(a, PadicNum::exact_zero(ctx)); }

enum class BinomSign { plus, minus };

/// binom(+-s, m) = (+-s)(+-s - 1)...(+-s - m + 1) / m!.  Any digits lost to
/// cancellation are reflected in the precision of the result.
inline PadicNum binom_at(const PadicNum& s, long m, BinomSign sign = BinomSign::plus) {
  if (m < 0) throw std::invalid_argument("binom_at: m must be non-negative");
  const PadicContext& ctx = s.context();
  const PadicNum x = sign == BinomSign::plus ? s : -s;
  PadicNum num(ctx, 1);
  for (long j = 0; j < m; ++j) num *= x - PadicNum(ctx, j);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
  return num / PadicNum::from_integer(ctx, fact);
}

/// x^s for x in 1 + pZ_p and s in Z_p, by the binomial series
/// sum_m binom(s, m) (x - 1)^m.  Term m has valuation >= m v(x - 1), so the
/// sum stops once that bound reaches the context cap, and the result is
/// capped at the first omitted term's bound.
inline PadicNum pow_s(const PadicNum& x, const PadicNum& s) {
  const PadicContext& ctx = x.context();
  if (!(ctx == s.context())) throw std::invalid_argument("pow_s: context mismatch");
  const PadicNum one(ctx, 1);
  const PadicNum y = x - one;
  if (!y.is_zero() && y.valuation() < 1)
    throw std::domain_error("pow_s: base must be congruent to 1 mod p");
  if (!s.is_zero() && s.valuation() < 0) throw std::domain_error("pow_s: exponent must satisfy |s|_p <= 1");
  if (s.is_exact_zero() || y.is_exact_zero()) return one;

  const long vy = y.valuation();  // for an inexact zero, its known bound
  const long terms = (ctx.precision() + vy - 1) / vy;
  PadicNum acc = one;
  PadicNum coeff = one;
  PadicNum ym = one;
  for (long m = 1; m < terms; ++m) {
    coeff = coeff * (s - PadicNum(ctx, m - 1)) / PadicNum(ctx, m);
    ym *= y;
    acc += coeff * ym;
  }
  return acc.reduce(terms * vy);
}

}  // namespace plq
