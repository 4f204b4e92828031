#include "ptmine/bitvec.hpp"

#include <bit>

#include "ptmine/errors.hpp"

namespace ptmine {

BitVector BitVector::from_string(std::string_view text) {
  BitVector out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '1') {
      out.set(i);
    } else if (c != '0') {
      throw StructuralError("bit string may contain only '0' and '1'");
    }
  }
  return out;
}

std::uint64_t BitVector::popcount() const noexcept {
  std::uint64_t total = 0;
  for (const std::uint64_t w : words_) {
    total += static_cast<std::uint64_t>(std::popcount(w));
  }
  return total;
}

std::uint64_t BitVector::popcount_range(std::size_t lo, std::size_t n) const {
  if (n == 0) {
    return 0;
  }
  const std::size_t hi = lo + n;  // exclusive
  std::size_t word = lo >> 6;
  const std::size_t last_word = (hi - 1) >> 6;
  std::uint64_t total = 0;
  if (word == last_word) {
    std::uint64_t w = words_[word] >> (lo & 63);
    if (n < 64) {
      w &= (std::uint64_t{1} << n) - 1;
    }
    return static_cast<std::uint64_t>(std::popcount(w));
  }
  total += static_cast<std::uint64_t>(std::popcount(words_[word] >> (lo & 63)));
  for (++word; word < last_word; ++word) {
    total += static_cast<std::uint64_t>(std::popcount(words_[word]));
  }
  const std::size_t tail = hi & 63;  // bits used in the last word; 0 means all
  std::uint64_t w = words_[last_word];
  if (tail != 0) {
    w &= (std::uint64_t{1} << tail) - 1;
  }
  total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

BitVector BitVector::and_with(const BitVector& other) const {
  if (n_ != other.n_) {
    throw StructuralError("bit vector length mismatch: " + std::to_string(n_) +
                          " vs " + std::to_string(other.n_));
  }
  BitVector out(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] = words_[i] & other.words_[i];
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (test(i)) {
      s[i] = '1';
    }
  }
  return s;
}

}  // namespace ptmine
