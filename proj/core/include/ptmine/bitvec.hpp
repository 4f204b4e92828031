#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ptmine {

// Fixed-length bit sequence backed by 64-bit words. Bits at positions
// >= size() are kept zero, so whole-word popcounts need no final mask.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  // Parses a string of '0'/'1' characters, most significant position first
  // in reading order (index 0 is the first character).
  static BitVector from_string(std::string_view text);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  std::uint64_t popcount() const noexcept;

  // Number of set bits in [lo, lo + n). Word-at-a-time.
  std::uint64_t popcount_range(std::size_t lo, std::size_t n) const;

  // Bitwise AND of two vectors of equal size. Throws StructuralError on
  // length mismatch.
  BitVector and_with(const BitVector& other) const;

  bool operator==(const BitVector& other) const = default;

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ptmine
