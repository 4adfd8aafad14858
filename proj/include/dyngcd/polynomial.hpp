#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dyngcd/arith.hpp"

namespace dyngcd {

using BigInt = boost::multiprecision::cpp_int;

class PolynomialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integer polynomial of degree >= 2 with positive leading coefficient.
/// Coefficients are stored in ascending degree order.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<i64> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.size() < 3)
      throw PolynomialError("polynomial degree must be at least 2, got " +
                            std::to_string(coeffs_.empty() ? 0 : coeffs_.size() - 1));
    if (coeffs_.back() <= 0)
      throw PolynomialError("leading coefficient must be positive, got " +
                            std::to_string(coeffs_.back()));
    u64 s = 1;
    for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
      const u64 mag = coeffs_[i] < 0 ? u64(-(coeffs_[i] + 1)) + 1 : u64(coeffs_[i]);
      if (__builtin_add_overflow(s, mag, &s) || s > kMaxModulus)
        throw PolynomialError("coefficients too large: escape radius exceeds 2^62");
    }
    escape_radius_ = s;
  }

  const std::vector<i64>& coeffs() const noexcept { return coeffs_; }
  unsigned degree() const noexcept { return static_cast<unsigned>(coeffs_.size() - 1); }
  i64 coefficient(unsigned i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
  i64 constant_term() const noexcept { return coeffs_[0]; }

  /// R = 1 + sum_{i<d} |c_i|. Any |z| > R satisfies |F(z)| > |z|.
  u64 escape_radius() const noexcept { return escape_radius_; }

  /// Zero linear coefficient (the rigid-divisibility condition).
  bool zero_linear_term() const noexcept { return coeffs_[1] == 0; }

  BigInt operator()(const BigInt& z) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Comma-separated ascending coefficients, e.g. "1,0,1". Used as the
  /// cache fingerprint.
  std::string canonical() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(coeffs_[i]);
    }
    return out;
  }

  /// Human-readable form, e.g. "x^2+1", "2*x^3-x+5".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const i64 c = coeffs_[i];
      if (c == 0) continue;
      const bool neg = c < 0;
      const u64 mag = neg ? u64(-(c + 1)) + 1 : u64(c);
      if (neg)
        out += '-';
      else if (!out.empty())
        out += '+';
      if (i == 0) {
        out += std::to_string(mag);
        continue;
      }
      if (mag != 1) out += std::to_string(mag) + "*";
      out += 'x';
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<i64> coeffs_;
  u64 escape_radius_ = 1;
};

namespace detail {

inline i64 parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) throw PolynomialError("empty coefficient in '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    ++i;
  }
  if (i == s.size()) throw PolynomialError("dangling sign in '" + std::string(whole) + "'");
  __int128 v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw PolynomialError("unexpected character '" + std::string(1, s[i]) + "' in '" +
                            std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > std::numeric_limits<i64>::max())
      throw PolynomialError("coefficient out of range in '" + std::string(whole) + "'");
  }
  return static_cast<i64>(neg ? -v : v);
}

inline std::vector<i64> parse_coefficient_list(std::string_view text) {
  std::vector<i64> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_int(text.substr(start, comma - start), text));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<i64> parse_expression(std::string_view text) {
  std::map<unsigned, __int128> terms;
  std::size_t i = 0;
  const auto fail = [&](const std::string& why) {
    throw PolynomialError("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
      neg = text[i] == '-';
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-' at position " + std::to_string(i));
    }
    if (i >= text.size()) fail("dangling sign");
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    __int128 coef = 1;
    if (j > i) coef = parse_int(text.substr(i, j - i), text);
    const bool had_digits = j > i;
    i = j;
    unsigned exponent = 0;
    if (i < text.size() && text[i] == '*') {
      if (!had_digits) fail("'*' without a coefficient");
      ++i;
      if (i >= text.size() || (text[i] != 'x' && text[i] != 'X')) fail("expected x after '*'");
    }
    if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
      ++i;
      exponent = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t k = i;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        if (k == i) fail("missing exponent after '^'");
        const i64 e = parse_int(text.substr(i, k - i), text);
        if (e > 64) fail("exponent above 64");
        exponent = static_cast<unsigned>(e);
        i = k;
      }
    } else if (!had_digits) {
      fail("empty term");
    }
    if (i < text.size() && text[i] != '+' && text[i] != '-')
      fail("unexpected character '" + std::string(1, text[i]) + "'");
    terms[exponent] += neg ? -coef : coef;
  }
  if (terms.empty()) fail("no terms");
  std::vector<i64> out(terms.rbegin()->first + 1, 0);
  for (const auto& [e, c] : terms) {
    if (c > std::numeric_limits<i64>::max() || c < std::numeric_limits<i64>::min())
      fail("coefficient out of range");
    out[e] = static_cast<i64>(c);
  }
  return out;
}

}  // namespace detail

/// Accepts "1,0,1" (ascending coefficients) or an expression in x such as
/// "x^2+1" or "2*x^3 - x + 5". Whitespace is ignored.
inline IntPolynomial parse_polynomial(std::string_view raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) throw PolynomialError("empty polynomial");
  const bool expression = text.find_first_of("xX") != std::string::npos;
  return IntPolynomial(expression ? detail::parse_expression(text)
                                  : detail::parse_coefficient_list(text));
}

}  // namespace dyngcd
