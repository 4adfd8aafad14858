#pragma once

#include <compare>
#include <stdexcept>
#include <string>

#include "dyngcd/arith.hpp"

namespace dyngcd {

/// A positive integer or infinity. An infinite value may additionally carry
/// an overflow flag: the true value is finite but exceeded 64-bit analysis
/// bounds, and is treated as infinite downstream.
template <class Tag>
class Extended {
 public:
  constexpr Extended() noexcept = default;

  static constexpr Extended finite(u64 v) {
    if (v == 0) throw std::domain_error("finite rank values are >= 1");
    Extended e;
    e.value_ = v;
    return e;
  }
  static constexpr Extended infinite(bool overflowed = false) noexcept {
    Extended e;
    e.overflowed_ = overflowed;
    return e;
  }
  /// Inverse of encode(): 0 denotes infinity.
  static constexpr Extended decode(u64 v) noexcept {
    Extended e;
    e.value_ = v;
    return e;
  }

  constexpr bool is_finite() const noexcept { return value_ != 0; }
  constexpr bool overflowed() const noexcept { return overflowed_; }
  constexpr u64 value() const {
    if (!is_finite()) throw std::logic_error("value() of an infinite rank");
    return value_;
  }
  /// Finite value, or 0 for infinity (the CSV convention).
  constexpr u64 encode() const noexcept { return value_; }

  std::string to_string() const { return is_finite() ? std::to_string(value_) : "inf"; }

  friend constexpr bool operator==(const Extended& a, const Extended& b) noexcept {
    return a.value_ == b.value_;
  }

 private:
  u64 value_ = 0;
  bool overflowed_ = false;
};

struct RankTag {};
struct EllTag {};

/// ord(n): first r >= 1 with n | a_r.
using Rank = Extended<RankTag>;
/// l(n) = lcm(n, ord(n)).
using EllValue = Extended<EllTag>;

/// Outcome of a bounded rank search.
struct CappedRank {
  enum class State { Finite, Infinite, Unknown };
  State state = State::Unknown;
  u64 value = 0;  // meaningful for Finite

  static CappedRank finite(u64 r) { return {State::Finite, r}; }
  static CappedRank infinite() { return {State::Infinite, 0}; }
  static CappedRank unknown() { return {State::Unknown, 0}; }

  bool known() const noexcept { return state != State::Unknown; }
  Rank to_rank() const {
    if (state == State::Unknown) throw std::logic_error("rank unknown beyond cap");
    return state == State::Finite ? Rank::finite(value) : Rank::infinite();
  }

  friend bool operator==(const CappedRank&, const CappedRank&) = default;
};

}  // namespace dyngcd
