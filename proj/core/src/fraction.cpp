#include "ptmine/fraction.hpp"

#include <cctype>
#include <numeric>

#include "ptmine/errors.hpp"

namespace ptmine {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void bad(std::string_view text, const char* why) {
  throw ThresholdError("invalid threshold '" + std::string(text) + "': " + why);
}

// Parses a plain decimal like "0.25", ".5", "10" into num/den.
void parse_decimal(std::string_view text, std::string_view original,
                   std::int64_t& num, std::int64_t& den) {
  std::size_t dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    bad(original, "no digits");
  }
  if (int_part.size() + frac_part.size() > 18) {
    bad(original, "too many digits");
  }
  num = 0;
  for (std::string_view part : {int_part, frac_part}) {
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        bad(original, "not a number");
      }
      num = num * 10 + (c - '0');
    }
  }
  den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) {
    den *= 10;
  }
}

}  // namespace

Fraction Fraction::make(std::int64_t num, std::int64_t den) {
  if (den <= 0) {
    throw ThresholdError("threshold denominator must be positive");
  }
  if (num <= 0 || num > den) {
    throw ThresholdError("threshold " + std::to_string(num) + "/" +
                         std::to_string(den) + " is outside (0, 1]");
  }
  const std::int64_t g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

Fraction Fraction::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) {
    bad(text, "empty");
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  if (s.back() == '%') {
    parse_decimal(trim(s.substr(0, s.size() - 1)), text, num, den);
    if (den > (std::int64_t{1} << 56)) {
      bad(text, "too many digits");
    }
    den *= 100;
  } else if (std::size_t slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t dden = 1;
    parse_decimal(trim(s.substr(0, slash)), text, num, den);
    std::int64_t dnum = num;
    if (den != 1) {
      bad(text, "rational parts must be integers");
    }
    parse_decimal(trim(s.substr(slash + 1)), text, den, dden);
    if (dden != 1) {
      bad(text, "rational parts must be integers");
    }
    num = dnum;
  } else {
    parse_decimal(s, text, num, den);
  }
  if (num <= 0 || num > den) {
    bad(text, "value is outside (0, 1]");
  }
  return make(num, den);
}

bool meets_threshold(std::uint64_t count, std::uint64_t base, const Fraction& f) {
  if (base == 0) {
    return false;
  }
  using u128 = unsigned __int128;
  return u128(count) * u128(f.den) >= u128(f.num) * u128(base);
}

}  // namespace ptmine
