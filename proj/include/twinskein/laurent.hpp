// Sparse Laurent polynomials in one variable with arbitrary-precision integer
// coefficients.

#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

namespace twinskein {

using Integer = boost::multiprecision::cpp_int;
using Exponent = std::int64_t;

class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Integer>;

  LaurentPoly() = default;
  LaurentPoly(long long constant) { add_term(0, constant); }  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(Integer coefficient, Exponent exponent) {
    LaurentPoly p;
    p.add_term(exponent, std::move(coefficient));
    return p;
  }

  static LaurentPoly from_terms(const TermMap& terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
  }

  /// The variable itself.
  static LaurentPoly var() { return monomial(1, 1); }

  /// t - t^-1, the default skein multiplier.
  static LaurentPoly skein_multiplier() { return monomial(1, 1) - monomial(1, -1); }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  Integer coefficient(Exponent e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  Exponent min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  Exponent max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  /// True for +-t^k.
  bool is_unit() const {
    return terms_.size() == 1 && (terms_.begin()->second == 1 || terms_.begin()->second == -1);
  }

  LaurentPoly& operator+=(const LaurentPoly& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const LaurentPoly& other) { return *this = *this * other; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  LaurentPoly pow(unsigned n) const {
    LaurentPoly r(1);
    for (unsigned i = 0; i < n; ++i) r *= *this;
    return r;
  }

  /// Every exponent e becomes 2e.
  LaurentPoly substitute_square() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(2 * e, c);
    return r;
  }

  /// Exact division by a unit +-t^k.
  LaurentPoly divide_by_unit(const LaurentPoly& unit) const {
    if (!unit.is_unit()) throw std::invalid_argument("divide_by_unit: divisor is not +-t^k");
    const auto& [ue, uc] = *unit.terms_.begin();
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e - ue, uc == 1 ? c : Integer(-c));
    return r;
  }

  /// t -> t^-1.
  LaurentPoly reflect() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  bool is_symmetric() const {
    for (const auto& [e, c] : terms_)
      if (coefficient(-e) != c) return false;
    return true;
  }

  /// Evaluates this polynomial at x. All exponents must be nonnegative.
  LaurentPoly compose(const LaurentPoly& x) const {
    if (!terms_.empty() && min_exponent() < 0)
      throw std::invalid_argument("compose: negative exponent in outer polynomial");
    LaurentPoly r;
    LaurentPoly power(1);
    Exponent at = 0;
    for (const auto& [e, c] : terms_) {
      while (at < e) {
        power *= x;
        ++at;
      }
      r += power * LaurentPoly::monomial(c, 0);
    }
    return r;
  }

  /// Canonical text: increasing exponent, `t^k`, explicit signs, "0" for zero.
  std::string to_string(std::string_view variable = "t") const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool negative = c < 0;
      const Integer magnitude = negative ? Integer(-c) : c;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      if (e == 0) {
        out += magnitude.str();
        continue;
      }
      if (magnitude != 1) out += magnitude.str();
      out += variable;
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  /// List of [exponent, coefficient] pairs sorted by exponent. Coefficients
  /// that do not fit in 64 bits are written as decimal strings.
  nlohmann::json to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
      if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
        arr.push_back({e, c.convert_to<std::int64_t>()});
      else
        arr.push_back({e, c.str()});
    }
    return arr;
  }

  /// Parses the canonical text form (and small variations such as `2*t^3`,
  /// `t^{-1}` or missing spaces).
  static LaurentPoly parse(std::string_view text, char variable = 't');

 private:
  void add_term(Exponent e, Integer c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, std::move(c));
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  TermMap terms_;
};

inline LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }
inline LaurentPoly negate(const LaurentPoly& a) { return -a; }
inline LaurentPoly substitute_square(const LaurentPoly& a) { return a.substitute_square(); }
inline bool is_symmetric(const LaurentPoly& a) { return a.is_symmetric(); }

class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(const std::string& what, std::size_t pos)
      : std::runtime_error("polynomial parse error at offset " + std::to_string(pos) + ": " + what), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

inline LaurentPoly LaurentPoly::parse(std::string_view text, char variable) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_digits = [&](std::string& into) {
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) into += text[i++];
  };

  LaurentPoly result;
  bool any = false;
  skip();
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (any) {
      throw PolyParseError("expected '+' or '-'", i);
    }
    std::string digits;
    read_digits(digits);
    skip();
    if (i < text.size() && text[i] == '*') {
      if (digits.empty()) throw PolyParseError("'*' without coefficient", i);
      ++i;
      skip();
    }
    Exponent exponent = 0;
    if (i < text.size() && text[i] == variable) {
      ++i;
      exponent = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        const bool braced = i < text.size() && text[i] == '{';
        if (braced) ++i;
        int esign = 1;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
          esign = text[i] == '-' ? -1 : 1;
          ++i;
        }
        std::string edigits;
        read_digits(edigits);
        if (edigits.empty()) throw PolyParseError("missing exponent", i);
        if (braced) {
          if (i >= text.size() || text[i] != '}') throw PolyParseError("missing '}'", i);
          ++i;
        }
        exponent = esign * std::stoll(edigits);
      }
    } else if (digits.empty()) {
      throw PolyParseError("expected coefficient or variable", i);
    }
    Integer coefficient = digits.empty() ? Integer(1) : Integer(digits);
    result.add_term(exponent, sign < 0 ? Integer(-coefficient) : coefficient);
    any = true;
    skip();
  }
  if (!any) throw PolyParseError("empty polynomial", 0);
  return result;
}

}  // namespace twinskein
