#include <doctest.h>

#include <random>

#include "ptmine/bitvec.hpp"
#include "ptmine/errors.hpp"

#include "helpers.hpp"

using ptmine::BitVector;

TEST_CASE("bitvec round-trips strings and counts bits") {
  const std::string s = "1011001110001111";
  BitVector v = BitVector::from_string(s);
  CHECK(v.size() == 16);
  CHECK(v.to_string() == s);
  CHECK(v.popcount() == 10);
  CHECK(v.test(0));
  CHECK_FALSE(v.test(1));
}

TEST_CASE("bitvec set and test agree across word boundaries") {
  BitVector v(200);
  for (std::size_t i = 0; i < 200; i += 7) {
    v.set(i, true);
  }
  std::uint64_t expected = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const bool want = i % 7 == 0;
    CHECK(v.test(i) == want);
    expected += want;
  }
  CHECK(v.popcount() == expected);
}

TEST_CASE("popcount_range matches a bit loop") {
  std::mt19937 rng(7);
  for (const std::size_t len : {1u, 63u, 64u, 65u, 130u, 1024u}) {
    const std::string bits = testutil::random_bits(rng, len, 50);
    const BitVector v = BitVector::from_string(bits);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t lo = rng() % len;
      const std::size_t n = rng() % (len - lo + 1);
      std::uint64_t expected = 0;
      for (std::size_t i = lo; i < lo + n; ++i) {
        expected += bits[i] == '1';
      }
      CAPTURE(len);
      CAPTURE(lo);
      CAPTURE(n);
      CHECK(v.popcount_range(lo, n) == expected);
    }
  }
}

TEST_CASE("and_with is a per-bit AND") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t len = 1 + rng() % 300;
    const std::string a = testutil::random_bits(rng, len, 50);
    const std::string b = testutil::random_bits(rng, len, 50);
    const BitVector va = BitVector::from_string(a);
    const BitVector vb = BitVector::from_string(b);
    const BitVector vc = va.and_with(vb);
    CHECK(vc.size() == len);
    for (std::size_t i = 0; i < len; ++i) {
      CHECK(vc.test(i) == (a[i] == '1' && b[i] == '1'));
    }
  }
}

TEST_CASE("and_with rejects mismatched lengths") {
  const BitVector a(8);
  const BitVector b(16);
  CHECK_THROWS_AS((void)a.and_with(b), ptmine::StructuralError);
}

TEST_CASE("from_string rejects non-binary characters") {
  CHECK_THROWS_AS(BitVector::from_string("01x1"), ptmine::StructuralError);
}
