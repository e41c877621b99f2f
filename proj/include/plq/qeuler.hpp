#pragma once

/**
 * @file qeuler.hpp
 * @brief q-Euler numbers and polynomials and their character-twisted
 * generalizations.
 *
 * E*_{n,q} are the coefficients of [2]_q / (q e^x + 1) and
 * E*_{n,q}(t) = sum_m C(n,m) t^(n-m) E*_{m,q}.  For a character chi of odd
 * period d,
 *
 *   sum_n E*_{n,chi,q}(t) x^n/n!
 *       = [2]_q sum_{a=1}^{d} (-1)^a q^a chi(a) e^{(t+a)x} / (q^d e^{dx} + 1),
 *
 * which for any odd multiple F of d equals
 *
 *   F^n [2]_q/[2]_{q^F} sum_{a=1}^{F} (-1)^a q^a chi(a) E*_{n,q^F}((a+t)/F).
 *
 * The a-sum starts at 1, so for the trivial character (d = 1)
 * E*_{n,chi,q}(t) = E*_{n,q}(t) - [2]_q t^n.
 */

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plq/dirichlet.hpp"
#include "plq/field.hpp"

namespace plq {

/// A q value with v_p(q - 1) >= 1, so that 1 + q is a p-unit.
template <class Field>
class QParam {
 public:
  using value_type = typename Field::value_type;

  QParam(Field field, value_type q) : field_(std::move(field)), q_(std::move(q)) {
    const value_type d = q_ - field_.from(1L);
    const long vd = field_.valuation(d);
    if (vd < 1)
      throw std::domain_error("QParam: q must satisfy |1 - q|_p < 1, got q = " + Field::str(q_));
    const value_type two = field_.from(1L) + q_;
    if (field_.valuation(two) != 0) throw std::domain_error("QParam: 1 + q is not a p-unit");
  }

  const Field& field() const noexcept { return field_; }
  const value_type& value() const noexcept { return q_; }

  /// [2]_q = 1 + q.
  value_type two() const { return field_.from(1L) + q_; }

  /// q^k as a parameter in its own right.
  QParam pow(long k) const { return QParam(field_, power(q_, k)); }

 private:
  Field field_;
  value_type q_;
};

template <class Field>
QParam<Field> make_qparam(const Field& field, const mpq_class& q) {
  return QParam<Field>(field, field.from(q));
}

enum class BracketKind { plain, minus };

/// [x]_q = (1 - q^x)/(1 - q) and [x]_{-q} = (1 - (-q)^x)/(1 + q), both
/// evaluated as finite geometric sums so that q = 1 is allowed.  This form
/// takes any q, with no condition on |1 - q|_p.
template <class Field>
typename Field::value_type bracket(long x, const Field& f, const typename Field::value_type& q,
                                   BracketKind kind = BracketKind::plain) {
  using V = typename Field::value_type;
  const V r = kind == BracketKind::plain ? q : V(-q);
  const long n = x < 0 ? -x : x;
  V s = f.from(0L);
  V rk = f.from(1L);
  for (long j = 0; j < n; ++j) {
    s += rk;
    rk *= r;
  }
  if (x < 0) return -(power(r, x) * s);  // [x] = -r^x [-x]
  return s;
}

template <class Field>
typename Field::value_type bracket(long x, const QParam<Field>& q, BracketKind kind = BracketKind::plain) {
  return bracket(x, q.field(), q.value(), kind);
}

namespace detail {

/// C(n, 0..n).
inline std::vector<mpz_class> binomial_row(long n) {
  std::vector<mpz_class> row(static_cast<size_t>(n + 1));
  row[0] = 1;
  for (long k = 1; k <= n; ++k) row[static_cast<size_t>(k)] = row[static_cast<size_t>(k - 1)] * (n - k + 1) / k;
  return row;
}

}  // namespace detail

/// Memoized E*_{0..M,q} for one q.  Grows monotonically; extend() before
/// sharing across threads, reads are const.
template <class Field>
class QEulerCache {
 public:
  using value_type = typename Field::value_type;

  explicit QEulerCache(QParam<Field> q, long max_index = 0) : q_(std::move(q)) { extend(max_index); }

  const QParam<Field>& q() const noexcept { return q_; }

  /// Highest cached index.
  long max_index() const noexcept { return static_cast<long>(values_.size()) - 1; }

  const value_type& operator[](long n) const {
    if (n < 0 || n > max_index())
      throw std::out_of_range("QEulerCache: index " + std::to_string(n) + " not cached");
    return values_[static_cast<size_t>(n)];
  }

  const std::vector<value_type>& values() const noexcept { return values_; }

  /// Ensures E*_0..E*_M are available.  E*_0 = 1 and for n >= 1
  /// (1 + q) E*_n = -q sum_{k<n} C(n,k) E*_k.
  void extend(long M) {
    const Field& f = q_.field();
    const value_type two = q_.two();
    const value_type& q = q_.value();
    if (values_.empty()) values_.push_back(f.from(1L));
    for (long n = max_index() + 1; n <= M; ++n) {
      const auto row = detail::binomial_row(n);
      value_type s = f.from(0L);
      for (long k = 0; k < n; ++k) s += f.from(row[static_cast<size_t>(k)]) * values_[static_cast<size_t>(k)];
      values_.push_back(-(q * s) / two);
    }
  }

 private:
  QParam<Field> q_;
  std::vector<value_type> values_;
};

template <class Field>
QEulerCache<Field> q_euler_numbers(const QParam<Field>& q, long M) {
  if (M < 0) throw std::invalid_argument("q_euler_numbers: M must be >= 0");
  return QEulerCache<Field>(q, M);
}

/// E*_{n,q}(t) = sum_m C(n,m) t^(n-m) E*_{m,q}.  t may have any valuation.
template <class Field>
typename Field::value_type q_euler_poly(const QEulerCache<Field>& cache, long n,
                                        const typename Field::value_type& t) {
  using V = typename Field::value_type;
  if (n < 0) throw std::invalid_argument("q_euler_poly: n must be >= 0");
  const Field& f = cache.q().field();
  const auto row = detail::binomial_row(n);
  V s = f.from(0L);
  V tp = f.from(1L);  // t^(n-m), m descending
  for (long m = n; m >= 0; --m) {
    s += f.from(row[static_cast<size_t>(m)]) * tp * cache[m];
    if (m > 0) tp *= t;
  }
  return s;
}

template <class Field>
typename Field::value_type q_euler_poly(const QParam<Field>& q, long n, const typename Field::value_type& t) {
  return q_euler_poly(QEulerCache<Field>(q, n), n, t);
}

namespace detail {

inline void check_level(const DirichletCharacter& chi, long F) {
  if (F < 1 || F % 2 == 0)
    throw std::invalid_argument("F must be an odd positive integer, got " + std::to_string(F));
  if (F % chi.modulus() != 0)
    throw std::invalid_argument("F = " + std::to_string(F) + " is not a multiple of the character modulus " +
                                std::to_string(chi.modulus()));
}

}  // namespace detail

/// E*_{n,chi,q}(t) through the level-F expansion in E*_{n,q^F}.  cacheF must
/// hold E*_{m,q^F} for m <= n.
template <class Field>
typename Field::value_type gen_q_euler_poly(const DirichletCharacter& chi, const QParam<Field>& q, long n,
                                            const typename Field::value_type& t, long F,
                                            const QEulerCache<Field>& cacheF) {
  using V = typename Field::value_type;
  detail::check_level(chi, F);
  if (n < 0) throw std::invalid_argument("gen_q_euler_poly: n must be >= 0");
  const Field& f = q.field();
  const V Fv = f.from(F);
  const V minus_q = -q.value();
  V weight = f.from(1L);  // (-q)^a
  V sum = f.from(0L);
  for (long a = 1; a <= F; ++a) {
    weight *= minus_q;
    const V c = f.chi(chi, a);
    if (f.valuation(c) == kInfinity) continue;
    sum += weight * c * q_euler_poly(cacheF, n, (f.from(a) + t) / Fv);
  }
  return power(Fv, n) * q.two() / cacheF.q().two() * sum;
}

template <class Field>
typename Field::value_type gen_q_euler_poly(const DirichletCharacter& chi, const QParam<Field>& q, long n,
                                            const typename Field::value_type& t, long F) {
  detail::check_level(chi, F);
  return gen_q_euler_poly(chi, q, n, t, F, QEulerCache<Field>(q.pow(F), n));
}

/// gen_q_euler_poly at the smallest level, F = modulus of chi.
template <class Field>
typename Field::value_type gen_q_euler_poly(const DirichletCharacter& chi, const QParam<Field>& q, long n,
                                            const typename Field::value_type& t) {
  return gen_q_euler_poly(chi, q, n, t, chi.modulus());
}

template <class V>
struct IdentityCheck {
  V lhs;
  V rhs;
  long agreement;  ///< v_p(lhs - rhs), capped by precision; kInfinity if exactly equal
};

/// Alternating power sum over one block of dn terms:
///   sum_{a=1}^{dn} (-1)^a q^a chi(a) (t+a)^m
///     = (E*_{m,chi,q}(t) + (-1)^(n+1) q^(dn) E*_{m,chi,q}(t+dn)) / [2]_q
template <class Field>
IdentityCheck<typename Field::value_type> sum_identity_check(const DirichletCharacter& chi,
                                                             const QParam<Field>& q, long m, long n,
                                                             const typename Field::value_type& t) {
  using V = typename Field::value_type;
  if (m < 1 || n < 1) throw std::invalid_argument("sum_identity_check: m and n must be >= 1");
  const Field& f = q.field();
  const long d = chi.modulus();
  const long dn = d * n;

  V lhs = f.from(0L);
  V weight = f.from(1L);
  for (long a = 1; a <= dn; ++a) {
    weight *= -q.value();
    const V c = f.chi(chi, a);
    if (f.valuation(c) == kInfinity) continue;
    lhs += weight * c * power(V(t + f.from(a)), m);
  }

  const QEulerCache<Field> cache(q.pow(d), m);
  const V e0 = gen_q_euler_poly(chi, q, m, t, d, cache);
  const V e1 = gen_q_euler_poly(chi, q, m, V(t + f.from(dn)), d, cache);
  V tail = power(q.value(), dn) * e1;
  if (n % 2 == 0) tail = -tail;  // (-1)^(n+1)
  V rhs = (e0 + tail) / q.two();
  const long agree = f.agreement(lhs, rhs);
  return {std::move(lhs), std::move(rhs), agree};
}

/// Ordinary Euler numbers E_n = 2^n E_n(1/2) (1, 0, -1, 0, 5, ...) from
/// sum_{k even} C(n,k) E_k = 0 for even n >= 2.
inline std::vector<mpq_class> ordinary_euler_numbers(long M) {
  std::vector<mpq_class> E;
  for (long n = 0; n <= M; ++n) {
    if (n == 0) {
      E.emplace_back(1);
    } else if (n % 2 == 1) {
      E.emplace_back(0);
    } else {
      const auto row = detail::binomial_row(n);
      mpq_class s = 0;
      for (long k = 0; k < n; k += 2) s += mpq_class(row[static_cast<size_t>(k)]) * E[static_cast<size_t>(k)];
      E.push_back(-s);
    }
  }
  return E;
}

/// Checks E_n = sum_{m<=n} 2^m C(n,m) E*_m at q = 1, for n <= M.
inline bool classical_relation_check(long M) {
  if (M < 0) throw std::invalid_argument("classical_relation_check: M must be >= 0");
  const RationalField field{3};
  const QEulerCache<RationalField> cache(make_qparam(field, mpq_class(1)), M);
  const auto E = ordinary_euler_numbers(M);
  for (long n = 0; n <= M; ++n) {
    const auto row = detail::binomial_row(n);
    mpq_class s = 0;
    mpz_class two_m = 1;
    for (long m = 0; m <= n; ++m) {
      s += mpq_class(two_m * row[static_cast<size_t>(m)]) * cache[m];
      two_m *= 2;
    }
    if (s != E[static_cast<size_t>(n)]) return false;
  }
  return true;
}

}  // namespace plq
