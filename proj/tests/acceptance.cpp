// Acceptance run: one PASS/FAIL line per criterion, with the measured
// margin and wall time.  Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "plq/lfunc.hpp"
#include "plq/qmeasure.hpp"

using namespace plq;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> body;
};

mpz_class binom(long n, long k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return c;
}

mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// E*_{n,q}: n! [x^n] (1+q)/(q e^x + 1) by power series division.
std::vector<mpq_class> euler_by_series(const mpq_class& q, long M) {
  std::vector<mpq_class> d(static_cast<size_t>(M + 1)), g(static_cast<size_t>(M + 1));
  d[0] = q + 1;
  for (long k = 1; k <= M; ++k) d[static_cast<size_t>(k)] = q / mpq_class(factorial(k));
  g[0] = 1;
  for (long n = 1; n <= M; ++n) {
    mpq_class s = 0;
    for (long k = 1; k <= n; ++k) s += d[static_cast<size_t>(k)] * g[static_cast<size_t>(n - k)];
    g[static_cast<size_t>(n)] = -s / d[0];
  }
  for (long n = 0; n <= M; ++n) g[static_cast<size_t>(n)] *= factorial(n);
  return g;
}

// E_n from sech x = 1/cosh x by series division.
std::vector<mpq_class> sech_coefficients(long M) {
  std::vector<mpq_class> c(static_cast<size_t>(M + 1), mpq_class(0)), e(static_cast<size_t>(M + 1));
  for (long k = 0; k <= M; k += 2) c[static_cast<size_t>(k)] = mpq_class(1) / mpq_class(factorial(k));
  e[0] = 1;
  for (long n = 1; n <= M; ++n) {
    mpq_class s = 0;
    for (long k = 1; k <= n; ++k) s += c[static_cast<size_t>(k)] * e[static_cast<size_t>(n - k)];
    e[static_cast<size_t>(n)] = -s;
  }
  for (long n = 0; n <= M; ++n) e[static_cast<size_t>(n)] *= factorial(n);
  return e;
}

// Direct block sum: sum_{a=1}^{dn} (-1)^a q^a chi(a) (t+a)^m.
mpq_class alternating_sum(const DirichletCharacter& chi, const mpq_class& q, long m, long dn, const mpq_class& t) {
  mpq_class s = 0;
  for (long a = 1; a <= dn; ++a) s += mpq_class(chi.sign(a)) * power(mpq_class(-q), a) * power(mpq_class(t + a), m);
  return s;
}

mpq_class closed_form_at_zero(const mpq_class& q, long p) {
  const mpq_class qp = power(q, p);
  return -q + qp * (1 + q) / (1 + qp);
}

struct GridPoint {
  long p;
  mpq_class q;
  std::string chi;
};

std::vector<GridPoint> theorem_grid(bool q_one_only) {
  std::vector<GridPoint> g;
  for (long p : {5L, 7L}) {
    std::vector<mpq_class> qs{mpq_class(1)};
    if (!q_one_only) {
      qs.emplace_back(1 + p);
      qs.emplace_back(1 + p * p);
    }
    for (const auto& q : qs)
      for (const char* c : {"triv", "3:1", "p:1"}) g.push_back({p, q, c});
  }
  return g;
}

std::vector<mpq_class> t_values(long p) { return {mpq_class(0), mpq_class(1), mpq_class(2 + 3 * p)}; }

Outcome teichmuller_suite() {
  long checked = 0;
  for (long p : {3L, 5L, 7L, 13L}) {
    PadicContext ctx(p, 30);
    const PadicNum one(ctx, 1);
    for (long a = 1; a < p; ++a) {
      const PadicNum w = teichmuller(ctx, a);
      if (agreement(w.pow(p - 1), one) < 30) return {false, "omega(a)^(p-1) != 1 at p=" + std::to_string(p)};
      if (w.residue(1) != a) return {false, "omega(a) != a mod p at p=" + std::to_string(p)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " units"};
}

Outcome backend_equivalence() {
  const PadicContext ctx(5, 25);
  const auto Ep = q_euler_numbers(make_qparam(PadicField{ctx}, mpq_class(6)), 12);
  const auto Er = q_euler_numbers(make_qparam(RationalField{5}, mpq_class(6)), 12);
  const auto oracle = euler_by_series(mpq_class(6), 12);
  for (long n = 0; n <= 12; ++n) {
    if (Er[n] != oracle[static_cast<size_t>(n)]) return {false, "rational backend off at n=" + std::to_string(n)};
    if (Ep[n].absolute_precision() < 25) return {false, "precision lost at n=" + std::to_string(n)};
    if (Ep[n].residue(25) != PadicNum::from_rational(ctx, oracle[static_cast<size_t>(n)]).residue(25))
      return {false, "digits differ at n=" + std::to_string(n)};
  }
  return {true, "25 digits, n <= 12"};
}

Outcome recurrence_and_classical() {
  const auto E = q_euler_numbers(make_qparam(RationalField{3}, mpq_class(1)), 12);
  const auto oracle = euler_by_series(mpq_class(1), 12);
  const auto sech = sech_coefficients(12);
  for (long n = 0; n <= 12; ++n) {
    if (E[n] != oracle[static_cast<size_t>(n)]) return {false, "E*_" + std::to_string(n) + " off"};
    if (n >= 1) {
      // 2 E*_n + sum_{k<n} C(n,k) E*_k = 0
      mpq_class s = 2 * E[n];
      for (long k = 0; k < n; ++k) s += mpq_class(binom(n, k)) * E[k];
      if (s != 0) return {false, "recurrence fails at n=" + std::to_string(n)};
    }
    mpq_class c = 0;
    for (long m = 0; m <= n; ++m) c += mpq_class(binom(n, m) * (mpz_class(1) << static_cast<mp_bitcnt_t>(m))) * E[m];
    if (c != sech[static_cast<size_t>(n)]) return {false, "classical relation fails at n=" + std::to_string(n)};
  }
  if (sech[0] != 1 || sech[1] != 0 || sech[2] != -1) return {false, "E_0..E_2 wrong"};
  if (!classical_relation_check(12)) return {false, "library classical check failed"};
  return {true, "n <= 12, E_0,E_1,E_2 = 1,0,-1"};
}

Outcome sum_identity() {
  const RationalField f{5};
  long points = 0;
  for (const char* cs : {"triv", "3:1"}) {
    const DirichletCharacter chi = parse_character(cs, 5);
    for (const mpq_class& qv : {mpq_class(1), mpq_class(6)}) {
      const auto q = make_qparam(f, qv);
      for (long m = 1; m <= 6; ++m)
        for (long n = 1; n <= 4; ++n)
          for (const mpq_class& t : {mpq_class(0), mpq_class(1), mpq_class(1, 2)}) {
            const auto chk = sum_identity_check(chi, q, m, n, t);
            if (chk.lhs != chk.rhs) return {false, std::string("mismatch at ") + cs};
            if (chk.lhs != alternating_sum(chi, qv, m, chi.modulus() * n, t))
              return {false, std::string("lhs differs from direct sum at ") + cs};
            ++points;
          }
    }
  }
  const auto anchor = sum_identity_check(DirichletCharacter(5), make_qparam(f, mpq_class(1)), 2, 5, mpq_class(0));
  if (anchor.lhs != -15 || anchor.rhs != -15) return {false, "anchor is not -15"};
  return {true, std::to_string(points) + " points exact, anchor -15"};
}

Outcome distribution() {
  const PadicField f{PadicContext(5, 25)};
  const auto q = make_qparam(f, mpq_class(6));
  const DirichletCharacter chi = parse_character("3:1", 5);
  const long d = chi.modulus();
  long worst = kInfinity;
  for (long n = 0; n <= 8; ++n)
    for (const mpq_class& t : t_values(5)) {
      const PadicNum tv = f.from(t);
      const PadicNum base = gen_q_euler_poly(chi, q, n, tv, d);
      worst = std::min(worst, agreement(base, gen_q_euler_poly(chi, q, n, tv, 3 * d)));
      worst = std::min(worst, agreement(base, gen_q_euler_poly(chi, q, n, tv, 9 * d)));
    }
  return {worst >= 20, "min agreement " + std::to_string(worst)};
}

Outcome main_theorem() {
  long worst = kInfinity, worst_guard = 0, points = 0;
  for (const auto& g : theorem_grid(false)) {
    const LqEvaluator ev(parse_character(g.chi, g.p), g.q, 20);
    for (long n = 0; n <= 6; ++n)
      for (const mpq_class& t : t_values(g.p)) {
        const auto chk = ev.verify_interpolation(n, ev.make(t));
        worst = std::min(worst, chk.agreement);
        worst_guard = std::max(worst_guard, chk.guard);
        ++points;
      }
    if (g.chi == "triv") {
      const PadicNum closed = PadicNum::from_rational(ev.target_context(), closed_form_at_zero(g.q, g.p));
      for (const mpq_class& t : t_values(g.p)) {
        if (agreement(ev.lq_eval(mpq_class(0), t).value, closed) < 20) return {false, "s=0 closed form (series)"};
        if (agreement(ev.interpolation_rhs(0, ev.make(t)).value, closed) < 20)
          return {false, "s=0 closed form (theorem side)"};
      }
    }
  }
  return {worst >= 15 && worst_guard <= 5, std::to_string(points) + " points, min agreement " + std::to_string(worst) +
                                                ", max guard " + std::to_string(worst_guard)};
}

Outcome one_variable() {
  long worst = kInfinity;
  for (const auto& g : theorem_grid(false)) {
    const LqEvaluator ev(parse_character(g.chi, g.p), g.q, 20);
    for (long n = 0; n <= 6; ++n)
      worst = std::min(worst, agreement(ev.lq_eval(mpq_class(-n), mpq_class(0)).value, ev.one_variable_value(n).value));
  }
  worst = std::min(worst, 20L);
  return {worst >= 15, "min agreement " + std::to_string(worst)};
}

Outcome q_one_specialization() {
  long worst_interp = kInfinity, worst_probe = kInfinity, worst_gap = kInfinity;
  const long k = 5;
  for (const auto& g : theorem_grid(true)) {
    const DirichletCharacter chi = parse_character(g.chi, g.p);
    const LqEvaluator ev(chi, g.q, 20);
    const PadicField low{PadicContext(g.p, 8)};
    const auto q_low = make_qparam(low, g.q);
    const mpq_class pk = power(mpq_class(g.p), k);
    for (const mpq_class& t : t_values(g.p)) {
      for (const mpq_class& s : {mpq_class(0), mpq_class(-2), mpq_class(1, 3)}) {
        worst_probe = std::min(worst_probe, ev.analyticity_probe(ev.make(s), ev.make(s + pk), ev.make(t)) - k);
        worst_probe =
            std::min(worst_probe, ev.continuity_probe(ev.make(s), ev.make(t), ev.make(s), ev.make(t + pk)) - k);
      }
      for (long n = 0; n <= 6; ++n) {
        const auto chk = ev.verify_interpolation(n, ev.make(t));
        worst_interp = std::min(worst_interp, chk.agreement);
        const auto levels = lq_via_integral_levels(low.from(-n), low.from(t), chi, q_low, 5);
        for (long L = 1; L <= 5; ++L)
          worst_gap = std::min(worst_gap, agreement(levels[static_cast<size_t>(L - 1)], chk.lhs.value) - L);
      }
    }
  }
  const bool ok = worst_probe >= -1 && worst_interp >= 15 && worst_gap >= -2;
  return {ok, "probe margin " + std::to_string(worst_probe) + ", interpolation " + std::to_string(worst_interp) +
                  ", min(gap - L) " + std::to_string(worst_gap)};
}

Outcome integral_convergence() {
  const PadicField f{PadicContext(5, 12)};
  const auto q = make_qparam(f, mpq_class(6));
  const QEulerCache<PadicField> cache(q, 5);
  long worst = kInfinity;
  for (const mpq_class& t : t_values(5))
    for (long n = 0; n <= 5; ++n) {
      const PadicNum tv = f.from(t);
      const PadicNum target = q_euler_poly(cache, n, tv);
      for (long L = 1; L <= 6; ++L)
        worst = std::min(worst, agreement(fermionic_integral_approx(monomial_integrand(f, n, tv), q, L), target) - L);
    }
  return {worst >= -2, "min(gap - L) " + std::to_string(worst)};
}

Outcome truncation_soundness() {
  long changed = 0, points = 0;
  for (const auto& g : theorem_grid(false)) {
    const DirichletCharacter chi = parse_character(g.chi, g.p);
    const LqEvaluator a(chi, g.q, 20);
    LqOptions o;
    o.m_terms = 2 * a.m_terms();
    o.extra_guard = 10;
    const LqEvaluator b(chi, g.q, 20, o);
    for (long n = 0; n <= 6; ++n)
      for (const mpq_class& t : t_values(g.p)) {
        const auto x = a.verify_interpolation(n, a.make(t));
        const auto y = b.verify_interpolation(n, b.make(t));
        if (agreement(x.lhs.value, y.lhs.value) < x.lhs.achieved_prec) ++changed;
        if (agreement(x.rhs.value, y.rhs.value) < x.rhs.achieved_prec) ++changed;
        ++points;
      }
  }
  return {changed == 0, std::to_string(points) + " points, " + std::to_string(changed) + " changed"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Teichmuller suite", 1, teichmuller_suite},
      {2, "backend equivalence", 1, backend_equivalence},
      {3, "recurrence and classical limit", 1, recurrence_and_classical},
      {4, "sum identity", 5, sum_identity},
      {5, "distribution relation", 5, distribution},
      {6, "interpolation theorem", 60, main_theorem},
      {7, "one-variable reduction", 60, one_variable},
      {8, "q = 1 specialization", 30, q_one_specialization},
      {9, "integral convergence", 10, integral_convergence},
      {10, "truncation soundness", 60, truncation_soundness},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.body();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = r.ok && in_time;
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s (%s; %.2fs of %.0fs)\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                r.detail.c_str(), secs, c.budget_s);
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
