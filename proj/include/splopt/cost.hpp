/// \file
/// Totally ordered additive cost monoids with a saturating infinity.

#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>

namespace splopt {

template <class C>
concept CostMonoid = requires(C a, C b) {
  { C::zero() } -> std::same_as<C>;
  { C::infinity() } -> std::same_as<C>;
  { a.is_infinite() } -> std::convertible_to<bool>;
  { a + b } -> std::same_as<C>;
  { a < b } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { to_string(a) } -> std::convertible_to<std::string>;
};

/// 64-bit integer cost. Sums that overflow saturate to infinity.
struct IntCost {
  std::int64_t value = 0;

  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

  constexpr IntCost() = default;
  constexpr explicit IntCost(std::int64_t v) : value(v) {}

  static constexpr IntCost zero() { return IntCost(0); }
  static constexpr IntCost infinity() { return IntCost(kInf); }
  constexpr bool is_infinite() const { return value == kInf; }

  friend constexpr IntCost operator+(IntCost a, IntCost b) {
    if (a.is_infinite() || b.is_infinite())
      return infinity();
    std::int64_t out = 0;
    if (__builtin_add_overflow(a.value, b.value, &out) || out == kInf)
      return infinity();
    return IntCost(out);
  }
  IntCost &operator+=(IntCost b) { return *this = *this + b; }

  friend constexpr auto operator<=>(IntCost, IntCost) = default;
  friend constexpr bool operator==(IntCost, IntCost) = default;
};

std::string to_string(IntCost c);

/// Lexicographically ordered pair of integers, e.g. (computations, lifetime).
struct Lex2Cost {
  std::int64_t first = 0;
  std::int64_t second = 0;
  bool inf = false;

  constexpr Lex2Cost() = default;
  constexpr Lex2Cost(std::int64_t a, std::int64_t b) : first(a), second(b) {}

  static constexpr Lex2Cost zero() { return Lex2Cost(0, 0); }
  static constexpr Lex2Cost infinity() {
    Lex2Cost c;
    c.inf = true;
    return c;
  }
  constexpr bool is_infinite() const { return inf; }

  friend constexpr Lex2Cost operator+(Lex2Cost a, Lex2Cost b) {
    if (a.inf || b.inf)
      return infinity();
    return Lex2Cost(a.first + b.first, a.second + b.second);
  }
  Lex2Cost &operator+=(Lex2Cost b) { return *this = *this + b; }

  friend constexpr bool operator==(Lex2Cost a, Lex2Cost b) {
    if (a.inf || b.inf)
      return a.inf == b.inf;
    return a.first == b.first && a.second == b.second;
  }
  friend constexpr std::strong_ordering operator<=>(Lex2Cost a, Lex2Cost b) {
    if (a.inf || b.inf)
      return a.inf <=> b.inf;
    if (auto c = a.first <=> b.first; c != 0)
      return c;
    return a.second <=> b.second;
  }
};

std::string to_string(Lex2Cost c);

static_assert(CostMonoid<IntCost>);
static_assert(CostMonoid<Lex2Cost>);

} // namespace splopt
