#pragma once

/**
 * @file lfunc.hpp
 * @brief The two-variable p-adic l_q-function.
 *
 * For chi of odd conductor d, F an odd common multiple of p and d, s and t
 * in Z_p:
 *
 *   l_{p,q}(s,t,chi) = sum_{a=1..F, p !| a} chi(a) h(s,t,a|F),
 *   h(s,t,a|F) = (-1)^a q^a <a+pt>^(-s) [2]_q/[2]_{q^F}
 *                * sum_m binom(-s,m) (F/(a+pt))^m E*_{m,q^F}.
 *
 * The inner power uses the base a + pt, not <a + pt>: only that form gives
 * h(-n,t,a|F) = omega^(-n)(a) (-1)^a q^a F^n [2]_q/[2]_{q^F}
 * E*_{n,q^F}((a+pt)/F) and hence the interpolation formula
 *
 *   l_{p,q}(-n,t,chi) = E*_{n,chi_n,q}(pt)
 *                       - p^n chi_n(p) [2]_q/[2]_{q^p} E*_{n,chi_n,q^p}(t),
 *
 * chi_n the primitive character inducing chi omega^(-n).
 *
 * Term m of the inner series has valuation >= m v_p(F), so M terms leave a
 * tail below p^(M v_p(F)).  All series run in a working context with guard
 * digits covering v_p(M!), and results are cut back to the target.
 */

#include <gmpxx.h>

#include <numeric>
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

struct LqOptions {
  std::optional<long> F;        ///< level; default lcm(p, conductor)
  std::optional<long> m_terms;  ///< inner series length; default ceil(target / v_p(F)) + 2
  long extra_guard = 0;         ///< guard digits on top of v_p(M!) + 2
};

/// A value cut to the target precision, with the number of absolute digits
/// actually known.
struct LqValue {
  PadicNum value;
  long achieved_prec;
};

struct InterpolationCheck {
  LqValue lhs;
  LqValue rhs;
  long agreement;  ///< digits on which lhs and rhs agree
  long guard;      ///< target - min(achieved precision of both sides)
};

/// -q + q^p (1+q)/(1+q^p): l_{p,q}(0,t,trivial) with the a = 1..d convention.
template <class Field>
typename Field::value_type lq_trivial_at_zero(const QParam<Field>& q) {
  using V = typename Field::value_type;
  const Field& f = q.field();
  const long p = field_prime(f);
  const V qp = power(q.value(), p);
  return -q.value() + qp * q.two() / (f.from(1L) + qp);
}

class LqEvaluator {
 public:
  LqEvaluator(DirichletCharacter chi, const mpq_class& q, long target_prec, const LqOptions& opts = {})
      : chi_(std::move(chi)),
        q_rational_(q),
        p_(chi_.prime()),
        F_(choose_level(chi_, opts)),
        target_(check_target(target_prec)),
        m_terms_(opts.m_terms ? *opts.m_terms : default_terms(target_, valuation(mpz_class(F_), p_))),
        work_prec_(target_ + factorial_valuation(m_terms_, p_) + 2 + opts.extra_guard),
        work_(p_, work_prec_),
        target_ctx_(p_, target_),
        field_{work_},
        q_(make_qparam(field_, q)),
        cacheF_(q_.pow(F_), std::max(m_terms_, 1L)),
        chi_table_(chi_.table(work_)) {
    if (m_terms_ < 1) throw std::invalid_argument("LqEvaluator: m_terms must be >= 1");
    omega_.push_back(PadicNum::exact_zero(work_));
    for (long r = 1; r < p_; ++r) omega_.push_back(teichmuller(work_, r));
  }

  const DirichletCharacter& character() const noexcept { return chi_; }
  const QParam<PadicField>& q() const noexcept { return q_; }
  const mpq_class& q_rational() const noexcept { return q_rational_; }
  long prime() const noexcept { return p_; }
  long level() const noexcept { return F_; }
  long m_terms() const noexcept { return m_terms_; }
  long target_precision() const noexcept { return target_; }
  long working_precision() const noexcept { return work_prec_; }
  const PadicContext& context() const noexcept { return work_; }
  const PadicContext& target_context() const noexcept { return target_ctx_; }

  /// An exact rational as a working-precision p-adic number.
  PadicNum make(const mpq_class& r) const { return PadicNum::from_rational(work_, r); }

  /// h(s,t,a|F) at target precision.
  LqValue h_term(const PadicNum& s, const PadicNum& t, long a) const { return finish(h_work(in(s), in(t), a)); }

  /// h(-n,t,a|F) through F^n E*_{n,q^F}((a+pt)/F), without any series in s.
  LqValue h_term_at_negative_integer(long n, const PadicNum& t, long a) const {
    check_unit(a);
    const PadicNum tw = in(t);
    const PadicNum x = PadicNum(work_, a) + PadicNum(work_, p_) * tw;
    QEulerCache<PadicField> cache = cacheF_;
    cache.extend(n);
    const PadicNum Fv(work_, F_);
    const PadicNum poly = q_euler_poly(cache, n, x / Fv);
    const PadicNum sign_qa = power(-q_.value(), a);
    return finish(omega_[static_cast<size_t>(a % p_)].pow(-n) * sign_qa * Fv.pow(n) * ratio_F() * poly);
  }

  /// l_{p,q}(s,t,chi) by the series definition.
  LqValue lq_eval(const PadicNum& s, const PadicNum& t) const {
    const PadicNum sw = in(s), tw = in(t);
    PadicNum sum = PadicNum::exact_zero(work_);
    const long d = chi_.modulus();
    for (long a = 1; a <= F_; ++a) {
      if (a % p_ == 0) continue;
      const PadicNum& c = chi_table_[static_cast<size_t>(a % d)];
      if (c.is_exact_zero()) continue;
      sum += c * h_work(sw, tw, a);
    }
    return finish(sum);
  }

  LqValue lq_eval(const mpq_class& s, const mpq_class& t) const { return lq_eval(make(s), make(t)); }

  /// E*_{n,chi_n,q}(pt) - p^n chi_n(p) [2]_q/[2]_{q^p} E*_{n,chi_n,q^p}(t).
  LqValue interpolation_rhs(long n, const PadicNum& t) const {
    if (n < 0) throw std::invalid_argument("interpolation_rhs: n must be >= 0");
    const PadicNum tw = in(t);
    const DirichletCharacter chi_n = twist_teichmuller(chi_, n);
    const PadicNum pv(work_, p_);

    const long F1 = admissible(F_, chi_n);
    const PadicNum first = gen_q_euler_poly(chi_n, q_, n, pv * tw, F1, cache_for(q_, F1, n));

    PadicNum second = PadicNum::exact_zero(work_);
    const PadicNum chi_p = chi_n(p_, work_);
    if (!chi_p.is_exact_zero()) {
      const QParam<PadicField> qp = q_.pow(p_);
      const long F2 = admissible(F_ / p_, chi_n);
      const PadicNum e = gen_q_euler_poly(chi_n, qp, n, tw, F2, cache_for(qp, F2, n));
      second = pv.pow(n) * chi_p * q_.two() / qp.two() * e;
    }
    return finish(first - second);
  }

  /// The t = 0 value E*_{n,chi w^-n,q} - [2]_q/[2]_{q^p} p^n chi w^-n(p) E*_{n,chi w^-n,q^p},
  /// evaluated at the smallest level (the modulus of chi_n).
  LqValue one_variable_value(long n) const {
    if (n < 0) throw std::invalid_argument("one_variable_value: n must be >= 0");
    const DirichletCharacter chi_n = twist_teichmuller(chi_, n);
    const PadicNum zero = PadicNum::exact_zero(work_);
    const PadicNum first = gen_q_euler_poly(chi_n, q_, n, zero);
    PadicNum second = PadicNum::exact_zero(work_);
    const PadicNum chi_p = chi_n(p_, work_);
    if (!chi_p.is_exact_zero()) {
      const QParam<PadicField> qp = q_.pow(p_);
      second = q_.two() / qp.two() * PadicNum(work_, p_).pow(n) * chi_p * gen_q_euler_poly(chi_n, qp, n, zero);
    }
    return finish(first - second);
  }

  InterpolationCheck verify_interpolation(long n, const PadicNum& t) const {
    LqValue lhs = lq_eval(PadicNum(work_, -n), t);
    LqValue rhs = interpolation_rhs(n, t);
    const long agree = std::min(agreement(lhs.value, rhs.value), target_);
    const long guard = target_ - std::min(lhs.achieved_prec, rhs.achieved_prec);
    return {std::move(lhs), std::move(rhs), agree, guard};
  }

  /// v_p(l(s1,t) - l(s2,t)) to the claimed precision.
  long analyticity_probe(const PadicNum& s1, const PadicNum& s2, const PadicNum& t) const {
    return continuity_probe(s1, t, s2, t);
  }

  /// v_p(l(s1,t1) - l(s2,t2)) to the claimed precision.
  long continuity_probe(const PadicNum& s1, const PadicNum& t1, const PadicNum& s2, const PadicNum& t2) const {
    return std::min(agreement(lq_eval(s1, t1).value, lq_eval(s2, t2).value), target_);
  }

 private:
  static long check_target(long target) {
    if (target < 1) throw std::invalid_argument("LqEvaluator: target precision must be >= 1");
    return target;
  }

  static long choose_level(const DirichletCharacter& chi, const LqOptions& opts) {
    const long p = chi.prime();
    const long d = chi.modulus();
    const long F = opts.F ? *opts.F : std::lcm(p, d);
    if (F < 1 || F % 2 == 0 || F % p != 0 || F % d != 0)
      throw std::invalid_argument("LqEvaluator: F = " + std::to_string(F) +
                                  " must be an odd multiple of p and of the character modulus");
    return F;
  }

  static long default_terms(long target, long vF) { return (target + vF - 1) / vF + 2; }

  /// Smallest odd multiple of base that chi is periodic modulo.
  static long admissible(long base, const DirichletCharacter& chi) {
    const long m = chi.modulus();
    return base % m == 0 ? base : std::lcm(base, m);
  }

  QEulerCache<PadicField> cache_for(const QParam<PadicField>& q, long level, long n) const {
    QParam<PadicField> ql = q.pow(level);
    if (n <= cacheF_.max_index() && agreement(ql.value(), cacheF_.q().value()) >= work_prec_) return cacheF_;
    return QEulerCache<PadicField>(std::move(ql), n);
  }

  PadicNum in(const PadicNum& x) const {
    if (x.prime() != p_) throw std::invalid_argument("LqEvaluator: argument over a different prime");
    return x.rebase(work_);
  }

  void check_unit(long a) const {
    if (a % p_ == 0) throw std::invalid_argument("h_term: a = " + std::to_string(a) + " is divisible by p");
  }

  PadicNum ratio_F() const { return q_.two() / cacheF_.q().two(); }

  PadicNum h_work(const PadicNum& s, const PadicNum& t, long a) const {
    check_unit(a);
    if (!s.is_zero() && s.valuation() < 0) throw std::domain_error("h_term: need |s|_p <= 1");
    if (!t.is_zero() && t.valuation() < 0) throw std::domain_error("h_term: need |t|_p <= 1");
    const PadicNum one(work_, 1);
    const PadicNum x = PadicNum(work_, a) + PadicNum(work_, p_) * t;
    const PadicNum neg_s = -s;
    const PadicNum base = x / omega_[static_cast<size_t>(detail::mod_floor(a, p_))];
    const PadicNum outer = pow_s(base, neg_s);

    const PadicNum ratio = PadicNum(work_, F_) / x;
    PadicNum coeff = one;  // binom(-s, m)
    PadicNum rpow = one;   // (F/x)^m
    PadicNum inner = cacheF_[0];
    for (long m = 1; m < m_terms_; ++m) {
      coeff = coeff * (neg_s - PadicNum(work_, m - 1)) / PadicNum(work_, m);
      rpow *= ratio;
      inner += coeff * rpow * cacheF_[m];
    }
    inner = inner.reduce(m_terms_ * ratio.valuation());

    const PadicNum sign_qa = power(-q_.value(), a);
    return sign_qa * outer * ratio_F() * inner;
  }

  LqValue finish(const PadicNum& x) const {
    PadicNum r = x.reduce(target_).rebase(target_ctx_);
    const long achieved = std::min(r.absolute_precision(), target_);
    return {std::move(r), achieved};
  }

  DirichletCharacter chi_;
  mpq_class q_rational_;
  long p_;
  long F_;
  long target_;
  long m_terms_;
  long work_prec_;
  PadicContext work_;
  PadicContext target_ctx_;
  PadicField field_;
  QParam<PadicField> q_;
  QEulerCache<PadicField> cacheF_;
  std::vector<PadicNum> chi_table_;
  std::vector<PadicNum> omega_;
};

}  // namespace plq
