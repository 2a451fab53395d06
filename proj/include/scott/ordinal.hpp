#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace scott {

// Ordinals of the shape w*a + b, enough to drive successor and limit
// branches of every recursion at desk scale.
struct Ordinal {
  uint32_t omega = 0;  // coefficient of w
  uint32_t fin = 0;

  constexpr auto operator<=>(const Ordinal&) const = default;

  bool is_zero() const { return omega == 0 && fin == 0; }
  bool is_limit() const { return omega > 0 && fin == 0; }
  bool is_successor() const { return fin > 0; }

  Ordinal succ() const { return {omega, fin + 1}; }
  Ordinal pred() const {
    if (fin == 0) throw std::logic_error("pred of a non-successor ordinal");
    return {omega, fin - 1};
  }

  static Ordinal finite(uint32_t b) { return {0, b}; }
  static Ordinal limit(uint32_t a) { return {a, 0}; }
};

inline std::string format_ordinal(const Ordinal& o) {
  if (o.omega == 0) return std::to_string(o.fin);
  std::string s = o.omega == 1 ? "w" : "w*" + std::to_string(o.omega);
  if (o.fin > 0) s += "+" + std::to_string(o.fin);
  return s;
}

// Accepts "b", "w", "w+b", "w*a", "w*a+b".
inline Ordinal parse_ordinal(const std::string& text) {
  auto bad = [&] {
    return std::invalid_argument("bad ordinal literal: " + text);
  };
  size_t pos = 0;
  auto number = [&]() -> uint32_t {
    if (pos >= text.size() || !isdigit((unsigned char)text[pos])) throw bad();
    uint64_t v = 0;
    while (pos < text.size() && isdigit((unsigned char)text[pos])) {
      v = v * 10 + (text[pos++] - '0');
      if (v > 0xffffffffull) throw bad();
    }
    return (uint32_t)v;
  };
  Ordinal o;
  if (pos < text.size() && text[pos] == 'w') {
    ++pos;
    o.omega = 1;
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      o.omega = number();
    }
    if (pos < text.size()) {
      if (text[pos] != '+') throw bad();
      ++pos;
      o.fin = number();
    }
  } else {
    o.fin = number();
  }
  if (pos != text.size()) throw bad();
  return o;
}

}  // namespace scott
