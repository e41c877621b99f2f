#pragma once

/**
 * @file qmeasure.hpp
 * @brief Finite-level fermionic p-adic q-integrals.
 *
 * Level L of the integral of f is
 *
 *   I^(L)(f) = (1/[m]_{-q}) sum_{a=0}^{m-1} f(a) (-q)^a,   m = d p^L,
 *
 * with d the prime-to-p part of the character modulus (1 without a
 * character).  m is odd, so [m]_{-q} = (1 + q^m)/(1 + q) is a p-unit.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plq/dirichlet.hpp"
#include "plq/field.hpp"
#include "plq/padic.hpp"
#include "plq/qeuler.hpp"

namespace plq {

/// f(a) = chi(a + shift) * sum_j coeffs[j] (t + shift + a)^j.  Without a
/// character the weight is 1.
template <class Field>
struct IntegrandSpec {
  using value_type = typename Field::value_type;

  std::vector<value_type> coeffs;
  std::optional<DirichletCharacter> chi;
  value_type t;
  long shift = 0;

  /// a -> f(a + k).
  IntegrandSpec shifted(long k) const {
    IntegrandSpec g = *this;
    g.shift += k;
    return g;
  }
};

/// (t + a)^n as an integrand.
template <class Field>
IntegrandSpec<Field> monomial_integrand(const Field& f, long n, const typename Field::value_type& t,
                                        std::optional<DirichletCharacter> chi = std::nullopt) {
  std::vector<typename Field::value_type> c(static_cast<size_t>(n + 1), f.from(0L));
  c.back() = f.from(1L);
  return IntegrandSpec<Field>{std::move(c), std::move(chi), t, 0};
}

/// d p^L, d the prime-to-p part of the modulus of chi.
inline long level_modulus(const std::optional<DirichletCharacter>& chi, long p, long L) {
  if (L < 0) throw std::invalid_argument("level must be >= 0");
  long d = chi ? chi->modulus() : 1;
  while (d % p == 0) d /= p;
  for (long i = 0; i < L; ++i) d *= p;
  return d;
}

/// (1/[m]_{-q}) sum_{a=0}^{m-1} term(a) (-q)^a for odd m.
template <class Field, class Term>
typename Field::value_type fermionic_level_sum(const QParam<Field>& q, long m, Term&& term) {
  using V = typename Field::value_type;
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("fermionic_level_sum: modulus must be odd");
  const Field& f = q.field();
  const V minus_q = -q.value();
  V weight = f.from(1L);
  V sum = f.from(0L);
  for (long a = 0; a < m; ++a) {
    sum += term(a) * weight;
    weight *= minus_q;
  }
  const V one = f.from(1L);
  return sum * q.two() / (one + power(q.value(), m));
}

namespace detail {

template <class Field>
class IntegrandEvaluator {
 public:
  using V = typename Field::value_type;

  IntegrandEvaluator(const Field& f, const IntegrandSpec<Field>& spec) : f_(f), spec_(spec) {
    if (spec_.chi) {
      const long d = spec_.chi->modulus();
      chi_values_.reserve(static_cast<size_t>(d));
      for (long r = 0; r < d; ++r) chi_values_.push_back(f_.chi(*spec_.chi, r));
    }
  }

  V operator()(long a) const {
    const long x = a + spec_.shift;
    if (spec_.chi) {
      const V& c = chi_values_[static_cast<size_t>(detail::mod_floor(x, spec_.chi->modulus()))];
      if (f_.valuation(c) == kInfinity) return f_.from(0L);
      return c * poly(x);
    }
    return poly(x);
  }

 private:
  V poly(long x) const {
    const V base = spec_.t + f_.from(x);
    V acc = f_.from(0L);
    for (size_t j = spec_.coeffs.size(); j-- > 0;) acc = acc * base + spec_.coeffs[j];
    return acc;
  }

  const Field& f_;
  const IntegrandSpec<Field>& spec_;
  std::vector<V> chi_values_;
};

}  // namespace detail

/// I^(L)(f).  Tends to the fermionic q-integral as L grows.
template <class Field>
typename Field::value_type fermionic_integral_approx(const IntegrandSpec<Field>& f, const QParam<Field>& q,
                                                     long L) {
  if (L < 1) throw std::invalid_argument("fermionic_integral_approx: level must be >= 1");
  const long m = level_modulus(f.chi, field_prime(q.field()), L);
  detail::IntegrandEvaluator<Field> eval(q.field(), f);
  return fermionic_level_sum(q, m, eval);
}

/// q I^(L)(f_1) + I^(L)(f) - [2]_q f(0), which tends to zero with L.
template <class Field>
typename Field::value_type functional_eq_residual(const IntegrandSpec<Field>& f, const QParam<Field>& q, long L) {
  using V = typename Field::value_type;
  const V shifted = fermionic_integral_approx(f.shifted(1), q, L);
  const V plain = fermionic_integral_approx(f, q, L);
  detail::IntegrandEvaluator<Field> eval(q.field(), f);
  return q.value() * shifted + plain - q.two() * eval(0);
}

/// q^D I^(L)(f_D) + I^(L)(f) - [2]_q sum_{a=0}^{D-1} (-1)^a q^a f(a), D odd.
template <class Field>
typename Field::value_type shift_eq_residual(const IntegrandSpec<Field>& f, const QParam<Field>& q, long dshift,
                                             long L) {
  using V = typename Field::value_type;
  if (dshift < 1 || dshift % 2 == 0)
    throw std::invalid_argument("shift_eq_residual: shift must be an odd positive integer, got " +
                                std::to_string(dshift));
  const Field& fld = q.field();
  const V shifted = fermionic_integral_approx(f.shifted(dshift), q, L);
  const V plain = fermionic_integral_approx(f, q, L);
  detail::IntegrandEvaluator<Field> eval(fld, f);
  V boundary = fld.from(0L);
  V weight = fld.from(1L);
  for (long a = 0; a < dshift; ++a) {
    boundary += weight * eval(a);
    weight *= -q.value();
  }
  return power(q.value(), dshift) * shifted + plain - q.two() * boundary;
}

/// Level sums over the units of X of chi(a) <a + pt>^(-s), for levels
/// 1..max_level.  Entry L-1 is the level-L value.  s and t are moved into
/// the context of q.
inline std::vector<PadicNum> lq_via_integral_levels(const PadicNum& s, const PadicNum& t,
                                                    const DirichletCharacter& chi, const QParam<PadicField>& q,
                                                    long max_level) {
  if (max_level < 1) throw std::invalid_argument("lq_via_integral: level must be >= 1");
  const PadicContext& ctx = q.field().ctx;
  const long p = ctx.prime();
  if (chi.prime() != p) throw std::invalid_argument("lq_via_integral: character prime mismatch");
  const PadicNum sc = s.rebase(ctx);
  const PadicNum tc = t.rebase(ctx);
  if (!sc.is_zero() && sc.valuation() < 0) throw std::domain_error("lq_via_integral: need |s|_p <= 1");
  if (!tc.is_zero() && tc.valuation() < 0) throw std::domain_error("lq_via_integral: need |t|_p <= 1");
  const PadicNum neg_s = -sc;
  const PadicNum pt = PadicNum(ctx, p) * tc;

  std::vector<PadicNum> omega_inv;
  omega_inv.push_back(PadicNum::exact_zero(ctx));
  for (long r = 1; r < p; ++r) omega_inv.push_back(teichmuller(ctx, r).inverse());
  const std::vector<PadicNum> chi_values = chi.table(ctx);
  const long d = chi.modulus();

  const PadicNum minus_q = -q.value();
  const PadicNum one(ctx, 1);
  PadicNum weight = one;
  PadicNum sum = PadicNum::exact_zero(ctx);
  std::vector<PadicNum> out;
  long a = 0;
  for (long L = 1; L <= max_level; ++L) {
    const long m = level_modulus(chi, p, L);
    for (; a < m; ++a, weight *= minus_q) {
      if (a % p == 0) continue;
      const PadicNum& c = chi_values[static_cast<size_t>(a % d)];
      if (c.is_exact_zero()) continue;
      const PadicNum base = omega_inv[static_cast<size_t>(a % p)] * (PadicNum(ctx, a) + pt);
      sum += c * pow_s(base, neg_s) * weight;
    }
    out.push_back(sum * q.two() / (one + power(q.value(), m)));
  }
  return out;
}

/// Level-L approximation to the integral of chi(a) <a + pt>^(-s) over the
/// units of X.
inline PadicNum lq_via_integral(const PadicNum& s, const PadicNum& t, const DirichletCharacter& chi,
                                const QParam<PadicField>& q, long L) {
  return lq_via_integral_levels(s, t, chi, q, L).back();
}

}  // namespace plq
