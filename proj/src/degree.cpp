#include "fuzzybisim/degree.hpp"

#include <stdexcept>

namespace fuzzybisim {

Degree Degree::from_scaled(std::int64_t units) {
  if (units < 0 || units > kScale)
    throw std::out_of_range("degree out of [0, 1]: " + std::to_string(units) +
                            "e-9");
  Degree d;
  d.units_ = units;
  return d;
}

Degree Degree::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("malformed degree '" + std::string(text) +
                                "'");
  };
  if (text.empty()) fail();

  std::size_t pos = 0;
  std::int64_t whole = 0;
  std::size_t digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    whole = whole * 10 + (text[pos] - '0');
    if (whole > 1)
      throw std::invalid_argument("degree '" + std::string(text) +
                                  "' outside [0, 1]");
    ++digits;
    ++pos;
  }
  if (digits == 0) fail();

  std::int64_t frac = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t frac_digits = 0;
    std::int64_t scale = kScale;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (++frac_digits > 9) fail();
      scale /= 10;
      frac += (text[pos] - '0') * scale;
      ++pos;
    }
    if (frac_digits == 0) fail();  // "1." has no fractional digits
  }
  if (pos != text.size()) fail();

  std::int64_t units = whole * kScale + frac;
  if (units > kScale)
    throw std::invalid_argument("degree '" + std::string(text) +
                                "' outside [0, 1]");
  Degree d;
  d.units_ = units;
  return d;
}

std::string Degree::to_string() const {
  std::int64_t whole = units_ / kScale;
  std::int64_t frac = units_ % kScale;
  std::string out = std::to_string(whole);
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 9 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

}  // namespace fuzzybisim
