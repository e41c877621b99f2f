#include <gtest/gtest.h>

#include <random>

#include "plq/padic.hpp"
#include "plq/serialize.hpp"

using namespace plq;

namespace {

// x mod p^k from an mpz oracle, for an integral PadicNum.
mpz_class mod_pk(const mpz_class& x, long p, long k) {
  mpz_class m = detail::pow_ui(p, k);
  mpz_class r = x % m;
  if (r < 0) r += m;
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

TEST(Valuation, IntegersAndRationals) {
  EXPECT_EQ(valuation(mpz_class(250), 5), 3);
  EXPECT_EQ(valuation(mpz_class(7), 5), 0);
  EXPECT_EQ(valuation(mpz_class(0), 5), kInfinity);
  EXPECT_EQ(valuation(mpq_class(3, 25), 5), -2);
  EXPECT_EQ(factorial_valuation(25, 5), 6);
  EXPECT_EQ(factorial_valuation(4, 5), 0);
}

TEST(PadicContext, RejectsBadParameters) {
  EXPECT_THROW(PadicContext(4, 10), std::invalid_argument);
  EXPECT_THROW(PadicContext(2, 10), std::invalid_argument);
  EXPECT_THROW(PadicContext(5, 0), std::invalid_argument);
  EXPECT_EQ(PadicContext(5, 3).power(3), 125);
}

TEST(PadicArith, AdditionExamples) {
  PadicContext ctx(5, 3);
  PadicNum s = PadicNum(ctx, 3) + PadicNum(ctx, 2);
  EXPECT_EQ(s.valuation(), 1);
  EXPECT_EQ(s.residue(3), 5);

  PadicNum x(ctx, 17);
  EXPECT_EQ(agreement(x + PadicNum::exact_zero(ctx), x), 3);

  PadicNum y = PadicNum(ctx, 7) + PadicNum(ctx, 18);
  EXPECT_EQ(y.valuation(), 2);
  EXPECT_EQ(y.absolute_precision(), 3);
  EXPECT_EQ(y.residue(3), 25);
}

TEST(PadicArith, MultiplicationDivisionExamples) {
  PadicContext ctx(5, 2);
  EXPECT_EQ((PadicNum(ctx, 7) * PadicNum(ctx, 18)).residue(2), 1);

  PadicContext c5(5, 10);
  PadicNum q = PadicNum(c5, 10) / PadicNum(c5, 2);
  EXPECT_EQ(q.valuation(), 1);
  EXPECT_EQ(q.residue(10), 5);

  PadicNum x = PadicNum::from_rational(c5, mpq_class(13, 50));
  EXPECT_EQ(agreement(x / x, PadicNum(c5, 1)), 10);
  EXPECT_THROW(x / PadicNum::exact_zero(c5), std::domain_error);
}

TEST(PadicArith, PrecisionIsTrackedHonestly) {
  PadicContext ctx(5, 10);
  PadicNum a = PadicNum::from_integer(ctx, mpz_class(1) + detail::pow_ui(5, 6));
  PadicNum d = a - PadicNum(ctx, 1);
  EXPECT_EQ(d.valuation(), 6);
  EXPECT_EQ(d.absolute_precision(), 10);  // cancellation keeps absolute precision
  EXPECT_EQ(d.relative_precision(), 4);

  PadicNum z = PadicNum(ctx, 3) - PadicNum(ctx, 3);
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE(z.is_exact_zero());
  EXPECT_EQ(z.absolute_precision(), 10);

  // dividing by p^3 lowers the absolute precision
  PadicNum w = PadicNum(ctx, 2) / PadicNum(ctx, 125);
  EXPECT_EQ(w.valuation(), -3);
  EXPECT_EQ(w.absolute_precision(), 7);

  PadicNum r = PadicNum(ctx, 1234).reduce(3);
  EXPECT_EQ(r.absolute_precision(), 3);
  EXPECT_EQ(r.residue(3), 1234 % 125);
  EXPECT_THROW(r.residue(4), std::domain_error);
}

TEST(PadicArith, RandomizedRingOperationsMatchIntegerOracle) {
  std::mt19937 rng(20241);
  for (long p : {3L, 5L, 7L, 13L}) {
    const long N = 12;
    PadicContext ctx(p, N);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    for (int i = 0; i < 200; ++i) {
      const long a = dist(rng), b = dist(rng);
      PadicNum x(ctx, a), y(ctx, b);
      // sums and products of integers are known to at least N absolute digits
      EXPECT_EQ((x + y).residue(N), mod_pk(mpz_class(a + b), p, N));
      EXPECT_EQ((x - y).residue(N), mod_pk(mpz_class(a - b), p, N));
      EXPECT_EQ((x * y).residue(N), mod_pk(mpz_class(a) * b, p, N));
      if (b % p != 0) {
        mpz_class m = detail::pow_ui(p, N);
        mpz_class expect = mod_pk(mpz_class(a) * inverse_mod(mod_pk(mpz_class(b), p, N), m), p, N);
        EXPECT_EQ((x / y).residue(N), expect);
      }
    }
  }
}

TEST(PadicArith, RationalRoundTrip) {
  PadicContext ctx(7, 15);
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 5000);
  for (int i = 0; i < 200; ++i) {
    mpq_class r(num(rng), den(rng));
    r.canonicalize();
    if (r == 0) continue;
    PadicNum x = PadicNum::from_rational(ctx, r);
    EXPECT_EQ(x.valuation(), valuation(r, 7));
    // x * den == num
    PadicNum back = x * PadicNum::from_integer(ctx, r.get_den());
    EXPECT_GE(agreement(back, PadicNum::from_integer(ctx, r.get_num())), x.absolute_precision());
  }
}

TEST(PadicArith, PowAndInverse) {
  PadicContext ctx(5, 8);
  PadicNum x(ctx, 6);
  EXPECT_EQ(x.pow(2).residue(3), 36);
  EXPECT_EQ(agreement(x.pow(-3) * x.pow(3), PadicNum(ctx, 1)), 8);
  EXPECT_EQ(agreement(x.pow(0), PadicNum(ctx, 1)), 8);
}

TEST(PadicNum, RebaseNeverInventsDigits) {
  PadicContext small(5, 4), big(5, 12);
  PadicNum x = PadicNum::from_rational(small, mpq_class(1, 3));
  PadicNum y = x.rebase(big);
  EXPECT_EQ(y.relative_precision(), 4);
  EXPECT_EQ(agreement(y, PadicNum::from_rational(big, mpq_class(1, 3))), 4);
  EXPECT_THROW(x.rebase(PadicContext(7, 4)), std::invalid_argument);
  EXPECT_THROW(PadicNum(small, 1) + PadicNum(big, 1), std::invalid_argument);
}

TEST(PadicNum, DigitsAndJsonRoundTrip) {
  PadicContext ctx(5, 6);
  PadicNum x = PadicNum::from_rational(ctx, mpq_class(-7, 125));
  auto d = x.digits();
  ASSERT_EQ(d.size(), 6u);
  EXPECT_EQ(d[0], 3);  // -7 = 3 + 4*5 + 4*25 + ...
  EXPECT_EQ(d[1], 3);
  EXPECT_EQ(d[2], 4);
  EXPECT_EQ(agreement(PadicNum::from_digits(ctx, x.valuation(), d), x), x.absolute_precision());

  for (const PadicNum& v : {x, PadicNum::exact_zero(ctx), PadicNum::zero(ctx, 4), PadicNum(ctx, 30)}) {
    auto j = to_json(v);
    PadicNum back = padic_from_json(j, ctx);
    EXPECT_EQ(back.is_exact_zero(), v.is_exact_zero());
    EXPECT_EQ(back.absolute_precision(), v.absolute_precision());
    EXPECT_EQ(to_json(back), j);
  }
  EXPECT_EQ(to_json(PadicNum::exact_zero(ctx))["valuation"], "inf");
  EXPECT_EQ(digit_string(PadicNum(ctx, 31)), "1.1.1.0.0.0");
}

TEST(Teichmuller, SpecExamples) {
  EXPECT_EQ(teichmuller(PadicContext(5, 2), 2L).residue(2), 7);
  EXPECT_EQ(teichmuller(PadicContext(5, 2), 1L).residue(2), 1);
  EXPECT_EQ(teichmuller(PadicContext(7, 2), 6L).residue(2), 48);
  EXPECT_THROW(teichmuller(PadicContext(5, 2), 10L), std::invalid_argument);
}

TEST(Teichmuller, RootOfUnityMultiplicativeAndCongruent) {
  for (long p : {3L, 5L, 7L, 13L}) {
    PadicContext ctx(p, 30);
    const PadicNum one(ctx, 1);
    for (long a = 1; a < p; ++a) {
      const PadicNum w = teichmuller(ctx, a);
      EXPECT_EQ(agreement(w.pow(p - 1), one), 30) << p << " " << a;
      EXPECT_EQ(w.residue(1), a);
      // depends only on a mod p
      EXPECT_EQ(agreement(teichmuller(ctx, a + 3 * p), w), 30);
      for (long b = 1; b < p; ++b)
        EXPECT_EQ(agreement(w * teichmuller(ctx, b), teichmuller(ctx, a * b)), 30);
    }
  }
}

TEST(Angle, Examples) {
  PadicContext ctx(5, 2);
  EXPECT_EQ(angle(2, ctx).residue(2), 11);
  EXPECT_EQ(angle(1, ctx).residue(2), 1);
  PadicContext c(5, 10);
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> dist(1, 10000);
  for (int i = 0; i < 50; ++i) {
    long a = dist(rng);
    if (a % 5 == 0) continue;
    PadicNum t(c, dist(rng));
    EXPECT_EQ(angle(a, t).residue(1), 1);
  }
  EXPECT_THROW(angle(5, ctx), std::invalid_argument);
  EXPECT_THROW(angle(2, PadicNum::from_rational(ctx, mpq_class(1, 5))), std::domain_error);
}

TEST(Binom, Examples) {
  PadicContext ctx(5, 10);
  PadicNum s = PadicNum::from_rational(ctx, mpq_class(7, 3));
  EXPECT_EQ(agreement(binom_at(s, 0), PadicNum(ctx, 1)), 10);
  EXPECT_EQ(agreement(binom_at(s, 1, BinomSign::minus), -s), 10);
  for (long n = 0; n <= 12; ++n) {
    PadicNum minus_n(ctx, -n);
    for (long m = 0; m <= n; ++m) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
      EXPECT_EQ(binom_at(minus_n, m, BinomSign::minus).residue(8), mod_pk(c, 5, 8));
    }
  }
}

TEST(PowS, IntegerExponentsMatchPow) {
  PadicContext ctx(5, 3);
  EXPECT_EQ(pow_s(PadicNum(ctx, 6), PadicNum(ctx, 2)).residue(3), 36);

  PadicContext c(5, 15);
  PadicNum six(c, 6);
  mpz_class m = detail::pow_ui(5, 15);
  EXPECT_EQ(pow_s(six, PadicNum(c, -1)).residue(15), inverse_mod(mpz_class(6), m));
  EXPECT_EQ(agreement(pow_s(six, PadicNum::exact_zero(c)), PadicNum(c, 1)), 15);

  std::mt19937 rng(11);
  std::uniform_int_distribution<long> xs(0, 1000), es(-20, 20);
  for (int i = 0; i < 100; ++i) {
    PadicNum x(c, 1 + 5 * xs(rng));
    long e = es(rng);
    EXPECT_GE(agreement(pow_s(x, PadicNum(c, e)), x.pow(e)), 15);
  }
}

TEST(PowS, ExponentLaws) {
  PadicContext c(7, 12);
  PadicNum x(c, 1 + 7 * 3);
  PadicNum s = PadicNum::from_rational(c, mpq_class(2, 5));
  PadicNum u = PadicNum::from_rational(c, mpq_class(-4, 3));
  EXPECT_GE(agreement(pow_s(x, s) * pow_s(x, u), pow_s(x, s + u)), 11);
  // (x^(1/5))^5 = x
  EXPECT_GE(agreement(pow_s(x, PadicNum::from_rational(c, mpq_class(1, 5))).pow(5), x), 11);
}

TEST(PowS, Errors) {
  PadicContext c(5, 10);
  EXPECT_THROW(pow_s(PadicNum(c, 2), PadicNum(c, 1)), std::domain_error);
  EXPECT_THROW(pow_s(PadicNum(c, 6), PadicNum::from_rational(c, mpq_class(1, 5))), std::domain_error);
}
