#include "ptmine/ptree.hpp"

#include <bit>
#include <string>

#include "ptmine/errors.hpp"

namespace ptmine {

namespace {

using Node = PTree::Node;
using NodePtr = PTree::NodePtr;

const NodePtr& pure0() {
  static const NodePtr node = std::make_shared<Node>();
  return node;
}

NodePtr pure1(std::uint64_t size) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Pure1;
  node->count = size;
  return node;
}

NodePtr raw_leaf(std::uint8_t size, std::uint8_t bits) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::RawLeaf;
  node->count = static_cast<std::uint64_t>(std::popcount(bits));
  node->raw_size = size;
  node->raw_bits = bits;
  return node;
}

NodePtr build_rec(const BitVector& bits, std::size_t lo, std::uint64_t size) {
  const std::uint64_t ones = bits.popcount_range(lo, size);
  if (ones == 0) {
    return pure0();
  }
  if (ones == size) {
    return pure1(size);
  }
  if (size % 4 != 0) {
    // Power-of-two columns bottom out in blocks of two when the block size
    // chain hits an odd power. A mixed block of two is stored verbatim.
    std::uint8_t raw = 0;
    for (std::uint64_t i = 0; i < size; ++i) {
      if (bits.test(lo + i)) {
        raw |= static_cast<std::uint8_t>(1u << i);
      }
    }
    return raw_leaf(static_cast<std::uint8_t>(size), raw);
  }
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Mixed;
  node->count = ones;
  const std::uint64_t quarter = size / 4;
  for (std::size_t q = 0; q < 4; ++q) {
    node->child[q] = build_rec(bits, lo + q * quarter, quarter);
  }
  return node;
}

NodePtr and_rec(const NodePtr& a, const NodePtr& b, std::uint64_t size) {
  if (a->kind == NodeKind::Pure0 || b->kind == NodeKind::Pure0) {
    return pure0();
  }
  if (a->kind == NodeKind::Pure1) {
    return b;
  }
  if (b->kind == NodeKind::Pure1) {
    return a;
  }
  if (a->kind == NodeKind::RawLeaf) {
    if (b->kind != NodeKind::RawLeaf || a->raw_size != b->raw_size) {
      throw InternalError("mismatched leaf shapes at equal depth");
    }
    const std::uint8_t bits = a->raw_bits & b->raw_bits;
    if (bits == 0) {
      return pure0();
    }
    const std::uint8_t full =
        static_cast<std::uint8_t>((1u << a->raw_size) - 1u);
    if (bits == full) {
      return pure1(a->raw_size);
    }
    return raw_leaf(a->raw_size, bits);
  }
  if (a->kind != NodeKind::Mixed || b->kind != NodeKind::Mixed) {
    throw InternalError("mismatched node kinds at equal depth");
  }
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Mixed;
  const std::uint64_t quarter = size / 4;
  std::uint64_t count = 0;
  for (std::size_t q = 0; q < 4; ++q) {
    node->child[q] = and_rec(a->child[q], b->child[q], quarter);
    count += node->child[q]->count;
  }
  // Re-collapse: with canonical children, a zero sum means four Pure0
  // children and a full sum means four Pure1 children.
  if (count == 0) {
    return pure0();
  }
  if (count == size) {
    return pure1(size);
  }
  node->count = count;
  return node;
}

void to_bits_rec(const Node* node, std::size_t lo, std::uint64_t size,
                 BitVector& out) {
  switch (node->kind) {
    case NodeKind::Pure0:
      return;
    case NodeKind::Pure1:
      for (std::uint64_t i = 0; i < size; ++i) {
        out.set(lo + i);
      }
      return;
    case NodeKind::RawLeaf:
      for (std::uint64_t i = 0; i < size; ++i) {
        if (node->raw_bits & (1u << i)) {
          out.set(lo + i);
        }
      }
      return;
    case NodeKind::Mixed: {
      const std::uint64_t quarter = size / 4;
      for (std::size_t q = 0; q < 4; ++q) {
        to_bits_rec(node->child[q].get(), lo + q * quarter, quarter, out);
      }
      return;
    }
  }
}

bool eq_rec(const Node* a, const Node* b) {
  if (a == b) {
    return true;
  }
  if (a->kind != b->kind || a->count != b->count) {
    return false;
  }
  if (a->kind == NodeKind::RawLeaf) {
    return a->raw_size == b->raw_size && a->raw_bits == b->raw_bits;
  }
  if (a->kind == NodeKind::Mixed) {
    for (std::size_t q = 0; q < 4; ++q) {
      if (!eq_rec(a->child[q].get(), b->child[q].get())) {
        return false;
      }
    }
  }
  return true;
}

std::size_t count_nodes(const Node* node) {
  std::size_t total = 1;
  if (node->kind == NodeKind::Mixed) {
    for (const auto& c : node->child) {
      total += count_nodes(c.get());
    }
  }
  return total;
}

void describe_rec(const Node* node, std::string& out) {
  switch (node->kind) {
    case NodeKind::Pure0:
      out += '0';
      return;
    case NodeKind::Pure1:
      out += '1';
      return;
    case NodeKind::RawLeaf:
      out += 'r';
      for (std::uint64_t i = 0; i < node->raw_size; ++i) {
        out += (node->raw_bits & (1u << i)) ? '1' : '0';
      }
      return;
    case NodeKind::Mixed:
      out += 'm';
      out += std::to_string(node->count);
      out += '(';
      for (std::size_t q = 0; q < 4; ++q) {
        if (q != 0) {
          out += ',';
        }
        describe_rec(node->child[q].get(), out);
      }
      out += ')';
      return;
  }
}

void require_built(const PTree& t) {
  if (t.empty()) {
    throw UsageError("operation on a default-constructed tree");
  }
}

}  // namespace

PTree::PTree(NodePtr root, std::size_t length)
    : root_(std::move(root)), length_(length) {}

PTree PTree::build(const BitVector& bits) {
  const std::size_t n = bits.size();
  if (n < 4 || !std::has_single_bit(n)) {
    throw StructuralError("tree length must be a power of two >= 4, got " +
                          std::to_string(n));
  }
  return PTree(build_rec(bits, 0, n), n);
}

std::uint64_t PTree::root_count() const {
  require_built(*this);
  return root_->count;
}

BitVector PTree::to_bits() const {
  require_built(*this);
  BitVector out(length_);
  to_bits_rec(root_.get(), 0, length_, out);
  return out;
}

std::size_t PTree::node_count() const {
  require_built(*this);
  return count_nodes(root_.get());
}

bool PTree::structurally_equal(const PTree& other) const {
  if (length_ != other.length_) {
    return false;
  }
  if (root_ == nullptr || other.root_ == nullptr) {
    return root_ == other.root_;
  }
  return eq_rec(root_.get(), other.root_.get());
}

std::string PTree::describe() const {
  require_built(*this);
  std::string out;
  describe_rec(root_.get(), out);
  return out;
}

PTree tree_and(const PTree& a, const PTree& b) {
  require_built(a);
  require_built(b);
  if (a.length_ != b.length_) {
    throw StructuralError("cannot AND trees of lengths " +
                          std::to_string(a.length_) + " and " +
                          std::to_string(b.length_));
  }
  return PTree(and_rec(a.root_, b.root_, a.length_), a.length_);
}

PTree and_many(std::span<const PTree> trees) {
  if (trees.empty()) {
    throw UsageError("and_many needs at least one tree");
  }
  PTree acc = trees[0];
  for (std::size_t i = 1; i < trees.size(); ++i) {
    acc = tree_and(acc, trees[i]);
  }
  return acc;
}

PTree and_many(const std::vector<PTree>& trees) {
  return and_many(std::span<const PTree>(trees.data(), trees.size()));
}

}  // namespace ptmine
