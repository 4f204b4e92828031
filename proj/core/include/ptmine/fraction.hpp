#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ptmine {

// Exact rational in (0, 1], used for support and confidence thresholds.
// Comparisons stay in integer arithmetic so that boundary cases such as
// count/base == 1/3 against a 30% threshold are decided exactly.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Accepts "10%", "0.1", ".25", "1", and "3/10". Throws ThresholdError if
  // the text is unparseable or the value is outside (0, 1].
  static Fraction parse(std::string_view text);

  // Reduced form, den > 0. Throws ThresholdError outside (0, 1].
  static Fraction make(std::int64_t num, std::int64_t den);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  bool operator==(const Fraction&) const = default;
};

// Exact test of count/base >= f. A base of zero never meets any threshold.
bool meets_threshold(std::uint64_t count, std::uint64_t base, const Fraction& f);

}  // namespace ptmine
