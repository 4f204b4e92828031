#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ptmine/bitvec.hpp"

namespace ptmine {

enum class NodeKind : std::uint8_t {
  Pure0 = 0,    // every bit in the block is 0
  Pure1 = 1,    // every bit in the block is 1
  Mixed = 2,    // four children covering consecutive quarters of the block
  RawLeaf = 3,  // mixed block of size 2; bits stored verbatim
};

// Compressed count tree over one bit column. A node covers a contiguous block
// of the column; a Mixed node splits its block into four equal quarters. Block
// sizes are implied by depth, never stored. Canonical form: a node is Mixed or
// RawLeaf only when its block holds both a 0 and a 1, so Mixeds never have
// four children of the same pure kind and stored counts obey
// 0 < count < block size.
//
// Nodes are immutable and shared between trees; AND results reuse operand
// subtrees where the algebra allows it. root_count() is O(1).
class PTree {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    NodeKind kind = NodeKind::Pure0;
    // Set bits in this block. Pure0: 0. Pure1: the block size. Mixed: sum of
    // child counts. RawLeaf: popcount of bits.
    std::uint64_t count = 0;
    std::uint8_t raw_size = 0;  // RawLeaf only, always 2 for power-of-two columns
    std::uint8_t raw_bits = 0;  // RawLeaf only, bit i of the block at 1u << i
    std::array<NodePtr, 4> child{};  // Mixed only
  };

  // Read-only cursor used by tests and the serializer. size is the block
  // size implied by the cursor's depth.
  class NodeView {
   public:
    NodeView(const Node* node, std::uint64_t size) : node_(node), size_(size) {}
    NodeKind kind() const { return node_->kind; }
    std::uint64_t count() const { return node_->count; }
    std::uint64_t size() const { return size_; }
    std::uint8_t raw_size() const { return node_->raw_size; }
    std::uint8_t raw_bits() const { return node_->raw_bits; }
    NodeView child(std::size_t i) const {
      return NodeView(node_->child[i].get(), size_ / 4);
    }

   private:
    const Node* node_;
    std::uint64_t size_;
  };

  PTree() = default;

  // Builds the canonical tree for a column. The length must be a power of
  // two >= 4; shorter or ragged lengths raise StructuralError.
  static PTree build(const BitVector& bits);

  std::size_t length() const { return length_; }
  bool empty() const { return root_ == nullptr; }

  // Set bits in the whole column, read from the root. O(1).
  std::uint64_t root_count() const;

  // Expands back to the exact column the tree was built from.
  BitVector to_bits() const;

  NodeView root_view() const { return NodeView(root_.get(), length_); }

  // Nodes reachable from the root, shared subtrees counted once per path.
  // Used for cache budgeting, so an overestimate is acceptable.
  std::size_t node_count() const;

  // Structural equality: same shape, kinds, counts, and leaf bits.
  bool structurally_equal(const PTree& other) const;
  bool operator==(const PTree& other) const { return structurally_equal(other); }

  // Compact shape string for diagnostics and tests, e.g. "m2(m2(1,1,0,0),0,0,0)".
  std::string describe() const;

  friend PTree tree_and(const PTree& a, const PTree& b);
  friend class PTreeCodec;

 private:
  PTree(NodePtr root, std::size_t length);

  NodePtr root_;
  std::size_t length_ = 0;
};

// Quadrant-wise AND. Pure0 absorbs; Pure1 passes the other operand's subtree
// through unchanged; RawLeaf pairs AND their bits; Mixed pairs recurse and the
// result re-collapses to pure when the children allow it, so AND outputs are
// canonical. Throws StructuralError on length mismatch and UsageError on an
// empty operand.
PTree tree_and(const PTree& a, const PTree& b);

// Left fold of tree_and over a non-empty list. Throws UsageError when empty.
PTree and_many(std::span<const PTree> trees);
PTree and_many(const std::vector<PTree>& trees);

}  // namespace ptmine
