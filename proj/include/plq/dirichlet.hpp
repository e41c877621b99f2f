#pragma once

/**
 * @file dirichlet.hpp
 * @brief Z_p-valued Dirichlet characters of odd squarefree modulus.
 *
 * A character is a product of local factors, one per odd prime ell.  The
 * factor (ell, k) sends a to zeta_ell^(k * dlog_g(a)), where g is the least
 * primitive root mod ell and zeta_ell is the fixed primitive m-th root of
 * unity in Z_p with m = gcd(ell - 1, p - 1).  Every zeta_ell is a power of
 * omega(r), r the least primitive root mod p, so each value is
 * omega(r)^e for an exponent e mod p - 1.  The factor (p, k) is omega^k.
 */

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plq/padic.hpp"

namespace plq {

namespace detail {

inline long mod_floor(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

inline long powmod(long b, long e, long m) {
  long r = 1 % m;
  b = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = static_cast<long>((static_cast<__int128>(r) * b) % m);
    b = static_cast<long>((static_cast<__int128>(b) * b) % m);
    e >>= 1;
  }
  return r;
}

inline long least_primitive_root(long ell) {
  std::vector<long> primes;
  long n = ell - 1;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      primes.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) primes.push_back(n);
  for (long g = 2; g < ell; ++g) {
    bool ok = true;
    for (long q : primes) {
      if (powmod(g, (ell - 1) / q, ell) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // ell == 2 only; excluded by callers
}

}  // namespace detail

/// One local component of a character.
struct CharFactor {
  long ell = 0;    ///< odd prime modulus of this factor
  long g = 0;      ///< least primitive root mod ell
  long k = 0;      ///< exponent, reduced mod m_max
  long m_max = 0;  ///< gcd(ell - 1, p - 1)
  std::shared_ptr<const std::vector<long>> dlog;  ///< dlog_g table indexed by residue

  /// Order of the factor character.
  long order() const { return m_max / std::gcd(k, m_max); }
};

class DirichletCharacter {
 public:
  /// The trivial character (modulus 1).
  explicit DirichletCharacter(long p) : p_(p) { check_prime(p); }

  /// Product of factors (ell, k); ell = p gives omega^k.  Repeated primes
  /// multiply.  Factors with k = 0 are kept, so the result may be imprimitive.
  DirichletCharacter(long p, const std::vector<std::pair<long, long>>& factors) : p_(p) {
    check_prime(p);
    std::map<long, long> acc;
    for (auto [ell, k] : factors) {
      if (ell < 3 || !detail::is_prime(ell))
        throw std::invalid_argument("DirichletCharacter: factor modulus " + std::to_string(ell) +
                                    " is not an odd prime");
      acc[ell] += k;
    }
    for (auto [ell, k] : acc) factors_.push_back(make_factor(ell, k));
  }

  static DirichletCharacter teichmuller_power(long p, long k) { return DirichletCharacter(p, {{p, k}}); }

  long prime() const noexcept { return p_; }
  const std::vector<CharFactor>& factors() const noexcept { return factors_; }

  long modulus() const {
    long m = 1;
    for (const auto& f : factors_) m *= f.ell;
    return m;
  }

  long conductor() const {
    long d = 1;
    for (const auto& f : factors_)
      if (f.k != 0) d *= f.ell;
    return d;
  }

  long order() const {
    long o = 1;
    for (const auto& f : factors_) o = std::lcm(o, f.order());
    return o;
  }

  bool is_trivial() const { return conductor() == 1; }
  bool is_primitive() const { return conductor() == modulus(); }

  /// The character of the same values on units, with trivial factors removed.
  DirichletCharacter primitive() const {
    DirichletCharacter out(p_);
    for (const auto& f : factors_)
      if (f.k != 0) out.factors_.push_back(f);
    return out;
  }

  /// e with chi(a) = omega(r)^e, or nullopt when gcd(a, modulus) > 1.
  std::optional<long> exponent(long a) const {
    long e = 0;
    for (const auto& f : factors_) {
      long r = detail::mod_floor(a, f.ell);
      if (r == 0) return std::nullopt;
      long local = detail::mod_floor(f.k * (*f.dlog)[static_cast<size_t>(r)], f.m_max);
      e += local * ((p_ - 1) / f.m_max);
    }
    return detail::mod_floor(e, p_ - 1);
  }

  /// chi(a) in Z_p at the context's precision.
  PadicNum operator()(long a, const PadicContext& ctx) const {
    check_context(ctx);
    auto e = exponent(a);
    if (!e) return PadicNum::exact_zero(ctx);
    if (*e == 0) return PadicNum(ctx, 1);
    return teichmuller(ctx, detail::powmod(root_base(), *e, p_));
  }

  /// chi(a) as an integer when every value is 0 or +-1 (order <= 2).
  int sign(long a) const {
    if (order() > 2)
      throw std::domain_error("DirichletCharacter::sign: character of order " + std::to_string(order()) +
                              " is not rational-valued");
    auto e = exponent(a);
    if (!e) return 0;
    return *e == 0 ? 1 : -1;
  }

  /// chi(0), chi(1), ..., chi(modulus - 1) in the given context.
  std::vector<PadicNum> table(const PadicContext& ctx) const {
    check_context(ctx);
    std::vector<PadicNum> units;
    units.reserve(static_cast<size_t>(p_ - 1));
    for (long e = 0; e < p_ - 1; ++e) units.push_back(teichmuller(ctx, detail::powmod(root_base(), e, p_)));
    std::vector<PadicNum> out;
    const long m = modulus();
    out.reserve(static_cast<size_t>(m));
    for (long a = 0; a < m; ++a) {
      auto e = exponent(a);
      out.push_back(e ? units[static_cast<size_t>(*e)] : PadicNum::exact_zero(ctx));
    }
    return out;
  }

  /// Canonical spec string: "triv" or "ell:k,ell:k" sorted by ell.
  std::string to_string() const {
    if (factors_.empty()) return "triv";
    std::string s;
    for (const auto& f : factors_) {
      if (!s.empty()) s += ",";
      s += std::to_string(f.ell) + ":" + std::to_string(f.k);
    }
    return s;
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    if (a.p_ != b.p_ || a.factors_.size() != b.factors_.size()) return false;
    for (size_t i = 0; i < a.factors_.size(); ++i)
      if (a.factors_[i].ell != b.factors_[i].ell || a.factors_[i].k != b.factors_[i].k) return false;
    return true;
  }

  friend DirichletCharacter char_mul(const DirichletCharacter& x, const DirichletCharacter& y);

 private:
  static void check_prime(long p) {
    if (p < 3 || !detail::is_prime(p))
      throw std::invalid_argument("DirichletCharacter: p must be an odd prime");
  }

  void check_context(const PadicContext& ctx) const {
    if (ctx.prime() != p_) throw std::invalid_argument("DirichletCharacter: context prime mismatch");
  }

  long root_base() const { return detail::least_primitive_root(p_); }

  CharFactor make_factor(long ell, long k) const {
    CharFactor f;
    f.ell = ell;
    f.g = detail::least_primitive_root(ell);
    f.m_max = std::gcd(ell - 1, p_ - 1);
    f.k = detail::mod_floor(k, f.m_max);
    auto table = std::make_shared<std::vector<long>>(static_cast<size_t>(ell), 0L);
    long x = 1;
    for (long i = 0; i < ell - 1; ++i) {
      (*table)[static_cast<size_t>(x)] = i;
      x = x * f.g % ell;
    }
    f.dlog = std::move(table);
    return f;
  }

  long p_;
  std::vector<CharFactor> factors_;  // sorted by ell
};

/// Primitive character inducing x * y.
inline DirichletCharacter char_mul(const DirichletCharacter& x, const DirichletCharacter& y) {
  if (x.p_ != y.p_) throw std::invalid_argument("char_mul: characters over different primes");
  std::vector<std::pair<long, long>> fs;
  for (const auto& f : x.factors_) fs.emplace_back(f.ell, f.k);
  for (const auto& f : y.factors_) fs.emplace_back(f.ell, f.k);
  return DirichletCharacter(x.p_, fs).primitive();
}

/// chi_n: the primitive character inducing chi * omega^(-n).
inline DirichletCharacter twist_teichmuller(const DirichletCharacter& chi, long n) {
  const long p = chi.prime();
  return char_mul(chi, DirichletCharacter::teichmuller_power(p, detail::mod_floor(-n, p - 1)));
}

/// Parses "triv" or "ell:k[,ell:k...]"; ell may be written "p".
inline DirichletCharacter parse_character(const std::string& spec, long p) {
  if (spec == "triv" || spec.empty()) return DirichletCharacter(p);
  std::vector<std::pair<long, long>> fs;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string item = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("character spec: expected ell:k, got '" + item + "'");
    try {
      size_t used1 = 0, used2 = 0;
      std::string l = item.substr(0, colon), r = item.substr(colon + 1);
      long ell = l == "p" ? (used1 = 1, p) : std::stol(l, &used1);
      long k = std::stol(r, &used2);
      if (used1 != l.size() || used2 != r.size()) throw std::invalid_argument(item);
      fs.emplace_back(ell, k);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("character spec: bad factor '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return DirichletCharacter(p, fs);
}

}  // namespace plq
