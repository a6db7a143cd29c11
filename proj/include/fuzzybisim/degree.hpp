/**
 * @file degree.hpp
 * @brief Exact fuzzy degrees in [0, 1].
 *
 * Degrees are decimal literals with at most nine fractional digits, stored as
 * an exact count of 1e-9 units.  The refinement engine relies on exact
 * equality of suprema and of map keys, so no floating point is involved
 * anywhere in degree handling.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace fuzzybisim {

class Degree {
 public:
  /// Number of representable units per 1.0.
  static constexpr std::int64_t kScale = 1'000'000'000;

  constexpr Degree() = default;

  /// Wraps a raw unit count.  Throws std::out_of_range outside [0, kScale].
  static Degree from_scaled(std::int64_t units);

  /// Parses a decimal literal such as "0", "1", "0.7", "0.000000001".
  /// Throws std::invalid_argument on malformed input or values outside [0, 1].
  static Degree parse(std::string_view text);

  static constexpr Degree zero() noexcept { return Degree{}; }
  static constexpr Degree one() noexcept {
    Degree d;
    d.units_ = kScale;
    return d;
  }

  constexpr std::int64_t scaled() const noexcept { return units_; }
  constexpr bool is_zero() const noexcept { return units_ == 0; }

  /// Canonical decimal rendering: no exponent, no trailing zeros, "0"/"1"
  /// for the endpoints.  parse(to_string(d)) == d for every degree.
  std::string to_string() const;

  friend constexpr auto operator<=>(const Degree&, const Degree&) = default;

 private:
  std::int64_t units_ = 0;
};

}  // namespace fuzzybisim
