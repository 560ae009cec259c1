#pragma once

#include <cstdint>
#include <string>

namespace deon {

// Strong Kleene three-valued truth. The numeric order False < Unknown < True
// makes conjunction min and disjunction max.
enum class Truth3 : std::uint8_t { False = 0, Unknown = 1, True = 2 };

constexpr Truth3 t3_not(Truth3 v) {
  switch (v) {
    case Truth3::True: return Truth3::False;
    case Truth3::False: return Truth3::True;
    default: return Truth3::Unknown;
  }
}

constexpr Truth3 t3_and(Truth3 a, Truth3 b) { return a < b ? a : b; }
constexpr Truth3 t3_or(Truth3 a, Truth3 b) { return a > b ? a : b; }
constexpr Truth3 t3_implies(Truth3 a, Truth3 b) { return t3_or(t3_not(a), b); }

constexpr Truth3 t3_of(bool b) { return b ? Truth3::True : Truth3::False; }

std::string to_string(Truth3 v);

// Parses "true"/"false"/"unknown" (lowercase only). Throws std::invalid_argument.
Truth3 truth3_from_string(const std::string& s);

}  // namespace deon
