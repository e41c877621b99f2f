#pragma once

// JSON and CSV encodings of p-adic values.
//
// JSON: {"p": int, "valuation": int | "inf", "digits": [d0, d1, ...], "prec": int}
// with digits least significant first.  A zero known only modulo p^k is
// {"valuation": k, "digits": [], "prec": 0}; exact zero uses "inf".
//
// CSV flattens the digit list into one base-p string, least significant
// digit first, joined by '.' because digits may exceed 9.

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plq/padic.hpp"

namespace plq {

inline nlohmann::json to_json(const PadicNum& x) {
  nlohmann::json j;
  j["p"] = x.prime();
  if (x.is_exact_zero())
    j["valuation"] = "inf";
  else
    j["valuation"] = x.valuation();
  j["digits"] = x.digits();
  j["prec"] = x.relative_precision();
  return j;
}

inline PadicNum padic_from_json(const nlohmann::json& j, const PadicContext& ctx) {
  if (j.at("p").get<long>() != ctx.prime()) throw std::invalid_argument("padic_from_json: prime mismatch");
  const auto& v = j.at("valuation");
  if (v.is_string()) {
    if (v.get<std::string>() != "inf") throw std::invalid_argument("padic_from_json: bad valuation");
    return PadicNum::exact_zero(ctx);
  }
  auto digits = j.at("digits").get<std::vector<long>>();
  if (static_cast<long>(digits.size()) != j.at("prec").get<long>())
    throw std::invalid_argument("padic_from_json: prec does not match digit count");
  return PadicNum::from_digits(ctx, v.get<long>(), digits);
}

/// Digits as a base-p string, least significant first, separated by '.'.
inline std::string digit_string(const PadicNum& x) {
  std::ostringstream os;
  const auto d = x.digits();
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) os << '.';
    os << d[i];
  }
  return os.str();
}

inline std::string valuation_string(const PadicNum& x) {
  return x.is_exact_zero() ? std::string("inf") : std::to_string(x.valuation());
}

}  // namespace plq
