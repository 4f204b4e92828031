#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "ptmine/errors.hpp"
#include "ptmine/ptree_store.hpp"

#include "helpers.hpp"

using namespace ptmine;

namespace {

namespace fs = std::filesystem;

std::vector<std::uint8_t> hex(std::initializer_list<unsigned> bytes) {
  return {bytes.begin(), bytes.end()};
}

void put_u64_at(std::vector<std::uint8_t>& bytes, std::size_t offset,
                std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    bytes[offset + i] = static_cast<std::uint8_t>(v >> (8 * i));
  }
}

// Minimal valid header for hand-built bodies.
std::vector<std::uint8_t> make_header(std::uint64_t length, std::uint64_t n_rows,
                                      std::uint64_t root_count,
                                      std::uint64_t body_len) {
  std::vector<std::uint8_t> h = {'P', 'T', 'R', 'E', 1, 0, 0, 0};
  h.resize(kTreeHeaderSize, 0);
  put_u64_at(h, 8, length);
  put_u64_at(h, 16, n_rows);
  put_u64_at(h, 24, root_count);
  // item index stays zero.
  put_u64_at(h, 36, body_len);
  return h;
}

std::vector<std::uint8_t> with_body(std::vector<std::uint8_t> header,
                                    std::initializer_list<unsigned> body) {
  header.insert(header.end(), body.begin(), body.end());
  return header;
}

fs::path temp_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("the frozen byte image of an all-zero column") {
  const PTree tree = PTree::build(BitVector(16));
  const std::vector<std::uint8_t> bytes = write_tree(tree, 8, 0);
  const std::vector<std::uint8_t> expected = hex({
      'P', 'T', 'R', 'E',       // magic
      1, 0, 0, 0,               // version
      16, 0, 0, 0, 0, 0, 0, 0,  // padded length
      8, 0, 0, 0, 0, 0, 0, 0,   // row count
      0, 0, 0, 0, 0, 0, 0, 0,   // root count
      0, 0, 0, 0,               // item index
      1, 0, 0, 0, 0, 0, 0, 0,   // body length
      0,                        // pure-zero root
  });
  CHECK(bytes == expected);
}

TEST_CASE("serialization is deterministic and round-trips random trees") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = std::size_t{16} << (rng() % 8);  // 16..2048
    const std::string bits = testutil::random_bits(rng, len, 5 + rng() % 91);
    const PTree tree = PTree::build(BitVector::from_string(bits));
    const std::uint64_t n_rows =
        tree.root_count() + rng() % (len - tree.root_count() + 1);
    if (n_rows == 0) {
      continue;  // all-zero tree may draw zero rows; the container needs >= 1
    }
    const std::uint32_t item = rng() % 1000;
    const auto bytes = write_tree(tree, n_rows, item);
    CHECK(write_tree(tree, n_rows, item) == bytes);
    const TreeRecord rec = read_tree(bytes);
    CHECK(rec.tree.structurally_equal(tree));
    CHECK(rec.n_rows == n_rows);
    CHECK(rec.item_index == item);
    CHECK(peek_root_count(bytes) == tree.root_count());
  }
}

TEST_CASE("write_tree refuses what the container cannot hold") {
  CHECK_THROWS_AS((void)write_tree(PTree{}, 1, 0), UsageError);
  const PTree small = PTree::build(BitVector(4));
  CHECK_THROWS_AS((void)write_tree(small, 4, 0), FormatError);
  const PTree tree = PTree::build(BitVector::from_string("1100000000000000"));
  CHECK_THROWS_AS((void)write_tree(tree, 0, 0), ValidationError);
  CHECK_THROWS_AS((void)write_tree(tree, 17, 0), ValidationError);
  CHECK_THROWS_AS((void)write_tree(tree, 1, 0), ValidationError);  // count 2 > 1
}

TEST_CASE("header damage is a format error") {
  const PTree tree = PTree::build(BitVector(16));
  auto bytes = write_tree(tree, 8, 0);
  SUBCASE("short buffer") {
    bytes.resize(20);
    CHECK_THROWS_AS((void)read_tree(bytes), FormatError);
  }
  SUBCASE("magic") {
    bytes[0] = 'X';
    CHECK_THROWS_AS((void)read_tree(bytes), FormatError);
  }
  SUBCASE("version") {
    bytes[4] = 2;
    CHECK_THROWS_AS((void)read_tree(bytes), FormatError);
  }
  SUBCASE("length not a power of two") {
    put_u64_at(bytes, 8, 24);
    CHECK_THROWS_AS((void)read_tree(bytes), FormatError);
  }
  SUBCASE("length below the floor") {
    put_u64_at(bytes, 8, 8);
    CHECK_THROWS_AS((void)read_tree(bytes), FormatError);
  }
  SUBCASE("row count of zero") {
    put_u64_at(bytes, 16, 0);
    CHECK_THROWS_AS((void)read_tree(bytes), FormatError);
  }
  SUBCASE("row count above the length") {
    put_u64_at(bytes, 16, 17);
    CHECK_THROWS_AS((void)read_tree(bytes), FormatError);
  }
  SUBCASE("root count above the row count") {
    put_u64_at(bytes, 24, 9);
    CHECK_THROWS_AS((void)read_tree(bytes), FormatError);
  }
  SUBCASE("trailing bytes") {
    bytes.push_back(0);
    CHECK_THROWS_AS((void)read_tree(bytes), FormatError);
  }
}

TEST_CASE("body damage is a corruption error") {
  SUBCASE("truncated body") {
    auto bytes = make_header(16, 16, 4, 6);
    bytes = with_body(std::move(bytes), {2, 4, 0, 0, 0});  // mixed, then EOF
    CHECK_THROWS_AS((void)read_tree(bytes), CorruptionError);
  }
  SUBCASE("unknown tag") {
    auto bytes = with_body(make_header(16, 8, 5, 1), {0xFF});
    CHECK_THROWS_AS((void)read_tree(bytes), CorruptionError);
    // The header is intact, so the count is still answerable.
    CHECK(peek_root_count(bytes) == 5);
  }
  SUBCASE("raw leaf at a block size divisible by four") {
    const auto bytes = with_body(make_header(16, 16, 1, 3), {3, 2, 1});
    CHECK_THROWS_AS((void)read_tree(bytes), CorruptionError);
  }
  SUBCASE("body shorter than body_length") {
    const auto bytes = with_body(make_header(16, 8, 0, 2), {0});
    CHECK_THROWS_AS((void)read_tree(bytes), CorruptionError);
  }
}

TEST_CASE("redundancy violations are integrity errors") {
  SUBCASE("mixed count disagrees with its children") {
    // mixed(count=3) over [1,1,0,0] whose true sum is 8.
    const auto bytes =
        with_body(make_header(16, 16, 3, 9), {2, 3, 0, 0, 0, 1, 1, 0, 0});
    CHECK_THROWS_AS((void)read_tree(bytes), IntegrityError);
  }
  SUBCASE("noncanonical all-ones mixed") {
    const auto bytes =
        with_body(make_header(16, 16, 16, 9), {2, 16, 0, 0, 0, 1, 1, 1, 1});
    CHECK_THROWS_AS((void)read_tree(bytes), IntegrityError);
  }
  SUBCASE("noncanonical all-zero mixed") {
    const auto bytes =
        with_body(make_header(16, 16, 0, 9), {2, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS((void)read_tree(bytes), IntegrityError);
  }
  SUBCASE("header root count disagrees with the body") {
    const auto bytes = with_body(make_header(16, 16, 5, 1), {1});
    CHECK_THROWS_AS((void)read_tree(bytes), IntegrityError);
    CHECK(peek_root_count(bytes) == 5);
  }
}

TEST_CASE("tree files round-trip through the filesystem") {
  const fs::path dir = temp_dir("ptmine_tree_files");
  fs::create_directories(dir);
  const PTree tree =
      PTree::build(BitVector::from_string("1011001110001111"));
  const std::string path = (dir / "t.pt").string();
  write_tree_file(path, tree, 16, 3);
  const TreeRecord rec = read_tree_file(path);
  CHECK(rec.tree.structurally_equal(tree));
  CHECK(rec.item_index == 3);
  CHECK(peek_root_count_file(path) == tree.root_count());
  CHECK_THROWS_AS((void)read_tree_file((dir / "absent.pt").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("a store round-trips trees and catalog") {
  const fs::path dir = temp_dir("ptmine_store_rt");
  const auto trees = testutil::trees_from_rows(testutil::demo_rows(), 16);
  const ItemCatalog catalog = testutil::binary_catalog(7, {"G"});
  write_store(dir.string(), trees, catalog, 8);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "item_00000.pt"));

  const TreeStore store = read_store(dir.string());
  CHECK(store.n_rows == 8);
  CHECK(store.padded_length == 16);
  REQUIRE(store.trees.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(store.trees[i].structurally_equal(trees[i]));
  }
  CHECK(store.catalog.items() == catalog.items());
  fs::remove_all(dir);
}

TEST_CASE("store readers catch tampering") {
  const fs::path dir = temp_dir("ptmine_store_tamper");
  const auto trees = testutil::trees_from_rows(testutil::demo_rows(), 16);
  const ItemCatalog catalog = testutil::binary_catalog(7, {"G"});

  SUBCASE("missing manifest") {
    CHECK_THROWS_AS((void)read_store((dir / "nope").string()), IoError);
  }
  SUBCASE("manifest that is not JSON") {
    fs::create_directories(dir);
    std::ofstream(dir / "manifest.json") << "not json";
    CHECK_THROWS_AS((void)read_store(dir.string()), FormatError);
  }
  SUBCASE("swapped tree files") {
    write_store(dir.string(), trees, catalog, 8);
    fs::rename(dir / "item_00000.pt", dir / "tmp.pt");
    fs::rename(dir / "item_00001.pt", dir / "item_00000.pt");
    fs::rename(dir / "tmp.pt", dir / "item_00001.pt");
    CHECK_THROWS_AS((void)read_store(dir.string()), IntegrityError);
  }
  SUBCASE("bit flip inside a tree body") {
    write_store(dir.string(), trees, catalog, 8);
    const fs::path victim = dir / "item_00003.pt";
    std::vector<char> bytes;
    {
      std::ifstream in(victim, std::ios::binary);
      bytes.assign(std::istreambuf_iterator<char>(in), {});
    }
    bytes.back() ^= 1;  // damage the last body byte
    {
      std::ofstream out(victim, std::ios::binary | std::ios::trunc);
      out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    CHECK_THROWS((void)read_store(dir.string()));
  }
  fs::remove_all(dir);
}
