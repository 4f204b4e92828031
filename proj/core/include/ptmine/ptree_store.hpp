#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ptmine/ptree.hpp"
#include "ptmine/schema.hpp"

namespace ptmine {

// Binary container for one tree, little-endian throughout.
//
//   offset  size  field
//   0       4     magic "PTRE"
//   4       4     format version, currently 1
//   8       8     padded column length L (power of two >= 16)
//   16      8     unpadded row count N, 1 <= N <= L
//   24      8     root count, <= N
//   32      4     item index the column belongs to
//   36      8     body length in bytes
//   44      -     body: nodes in preorder
//
// Body encoding per node: one tag byte (0 pure-zero, 1 pure-one, 2 mixed,
// 3 raw leaf). A mixed tag is followed by its 4-byte set-bit count and its
// four children; a raw-leaf tag by a size byte and a bit byte (bit i of the
// block at 1u << i). Block sizes are implied by depth, so pure nodes carry
// no payload. Serialization is deterministic: structurally equal trees
// produce identical bytes.
//
// Error classes on read: FormatError for bad magic/version/header fields or
// trailing data, CorruptionError for bodies that cannot be decoded
// (truncation, unknown tags, shape-impossible nodes), IntegrityError for
// decodable bodies whose redundant counts or canonicality rules fail.

inline constexpr std::uint32_t kTreeFormatVersion = 1;
inline constexpr std::size_t kTreeHeaderSize = 44;

struct TreeRecord {
  PTree tree;
  std::uint64_t n_rows = 0;
  std::uint32_t item_index = 0;
};

// Serializes a built tree. Refuses (FormatError) trees whose length is below
// 16 or above 2^32, and (ValidationError) row counts outside [root_count,
// length].
std::vector<std::uint8_t> write_tree(const PTree& tree, std::uint64_t n_rows,
                                     std::uint32_t item_index);

// Full decode with validation of every redundant field, including the header
// root count against the recomputed one.
TreeRecord read_tree(std::span<const std::uint8_t> bytes);

// Header-only count lookup; never touches the body, so a damaged body behind
// an intact header still answers.
std::uint64_t peek_root_count(std::span<const std::uint8_t> bytes);

void write_tree_file(const std::string& path, const PTree& tree,
                     std::uint64_t n_rows, std::uint32_t item_index);
TreeRecord read_tree_file(const std::string& path);
std::uint64_t peek_root_count_file(const std::string& path);

// A directory holding one tree file per item plus manifest.json describing
// the item universe. See README.md for the manifest layout.
struct TreeStore {
  std::size_t n_rows = 0;
  std::size_t padded_length = 0;
  std::vector<PTree> trees;
  ItemCatalog catalog;
};

void write_store(const std::string& directory, const std::vector<PTree>& trees,
                 const ItemCatalog& catalog, std::size_t n_rows);
TreeStore read_store(const std::string& directory);

}  // namespace ptmine
