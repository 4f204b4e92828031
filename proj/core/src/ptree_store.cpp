#include "ptmine/ptree_store.hpp"

#include <bit>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ptmine/errors.hpp"

namespace ptmine {

// Grants the serializer access to raw nodes and the private constructor.
class PTreeCodec {
 public:
  static const PTree::NodePtr& root(const PTree& t) { return t.root_; }
  static PTree make(PTree::NodePtr root, std::size_t length) {
    return PTree(std::move(root), length);
  }
};

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::uint8_t kMagic[4] = {'P', 'T', 'R', 'E'};
constexpr std::uint8_t kTagPure0 = 0;
constexpr std::uint8_t kTagPure1 = 1;
constexpr std::uint8_t kTagMixed = 2;
constexpr std::uint8_t kTagRawLeaf = 3;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) {
    v = (v << 8) | bytes[at + static_cast<std::size_t>(i)];
  }
  return v;
}

std::uint64_t get_u64(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | bytes[at + static_cast<std::size_t>(i)];
  }
  return v;
}

void encode_node(const PTree::Node* node, std::vector<std::uint8_t>& out) {
  switch (node->kind) {
    case NodeKind::Pure0:
      out.push_back(kTagPure0);
      return;
    case NodeKind::Pure1:
      out.push_back(kTagPure1);
      return;
    case NodeKind::Mixed:
      out.push_back(kTagMixed);
      put_u32(out, static_cast<std::uint32_t>(node->count));
      for (const auto& c : node->child) {
        encode_node(c.get(), out);
      }
      return;
    case NodeKind::RawLeaf:
      out.push_back(kTagRawLeaf);
      out.push_back(node->raw_size);
      out.push_back(node->raw_bits);
      return;
  }
}

struct Cursor {
  std::span<const std::uint8_t> bytes;
  std::size_t at = 0;

  std::uint8_t take() {
    if (at >= bytes.size()) {
      throw CorruptionError("tree body is truncated");
    }
    return bytes[at++];
  }

  std::uint32_t take_u32() {
    if (at + 4 > bytes.size()) {
      throw CorruptionError("tree body is truncated");
    }
    const std::uint32_t v = get_u32(bytes, at);
    at += 4;
    return v;
  }
};

PTree::NodePtr decode_node(Cursor& cur, std::uint64_t size) {
  const std::uint8_t tag = cur.take();
  auto node = std::make_shared<PTree::Node>();
  switch (tag) {
    case kTagPure0:
      node->kind = NodeKind::Pure0;
      node->count = 0;
      return node;
    case kTagPure1:
      node->kind = NodeKind::Pure1;
      node->count = size;
      return node;
    case kTagMixed: {
      if (size % 4 != 0) {
        throw CorruptionError("mixed node at a block size not divisible by 4");
      }
      node->kind = NodeKind::Mixed;
      const std::uint32_t stored = cur.take_u32();
      std::uint64_t sum = 0;
      for (std::size_t q = 0; q < 4; ++q) {
        node->child[q] = decode_node(cur, size / 4);
        sum += node->child[q]->count;
      }
      if (sum != stored) {
        throw IntegrityError("stored mixed count " + std::to_string(stored) +
                             " disagrees with recomputed " + std::to_string(sum));
      }
      if (sum == 0 || sum == size) {
        throw IntegrityError("non-canonical mixed node with a pure block");
      }
      node->count = sum;
      return node;
    }
    case kTagRawLeaf: {
      if (size != 2 && size != 3) {
        throw CorruptionError("raw leaf at a block size other than 2 or 3");
      }
      node->kind = NodeKind::RawLeaf;
      node->raw_size = cur.take();
      node->raw_bits = cur.take();
      if (node->raw_size != size) {
        throw CorruptionError("raw leaf size disagrees with its depth");
      }
      if (node->raw_bits >> node->raw_size) {
        throw CorruptionError("raw leaf has bits beyond its block");
      }
      const auto ones =
          static_cast<std::uint64_t>(std::popcount(node->raw_bits));
      if (ones == 0 || ones == size) {
        throw IntegrityError("non-canonical raw leaf with a pure block");
      }
      node->count = ones;
      return node;
    }
    default:
      throw CorruptionError("unknown node tag " + std::to_string(tag));
  }
}

struct Header {
  std::uint64_t padded_length = 0;
  std::uint64_t n_rows = 0;
  std::uint64_t root_count = 0;
  std::uint32_t item_index = 0;
  std::uint64_t body_length = 0;
};

Header read_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kTreeHeaderSize) {
    throw FormatError("input shorter than a tree header");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (bytes[i] != kMagic[i]) {
      throw FormatError("bad magic; not a serialized tree");
    }
  }
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != kTreeFormatVersion) {
    throw FormatError("unsupported tree format version " +
                      std::to_string(version));
  }
  Header h;
  h.padded_length = get_u64(bytes, 8);
  h.n_rows = get_u64(bytes, 16);
  h.root_count = get_u64(bytes, 24);
  h.item_index = get_u32(bytes, 32);
  h.body_length = get_u64(bytes, 36);
  if (h.padded_length < 16 || !std::has_single_bit(h.padded_length)) {
    throw FormatError("header length must be a power of two >= 16");
  }
  if (h.n_rows == 0 || h.n_rows > h.padded_length) {
    throw FormatError("header row count must be in [1, length]");
  }
  if (h.root_count > h.n_rows) {
    throw FormatError("header root count exceeds the row count");
  }
  return h;
}

void require_serializable(const PTree& tree, std::uint64_t n_rows) {
  if (tree.empty()) {
    throw UsageError("cannot serialize a default-constructed tree");
  }
  if (tree.length() < 16) {
    throw FormatError("the container stores columns of length >= 16, got " +
                      std::to_string(tree.length()));
  }
  if (tree.length() > (std::uint64_t{1} << 32)) {
    throw FormatError("column length exceeds the 32-bit count fields");
  }
  if (n_rows == 0 || n_rows > tree.length()) {
    throw ValidationError("row count must be in [1, tree length]");
  }
  if (tree.root_count() > n_rows) {
    throw ValidationError("tree counts " + std::to_string(tree.root_count()) +
                          " rows but the table has only " +
                          std::to_string(n_rows));
  }
}

}  // namespace

std::vector<std::uint8_t> write_tree(const PTree& tree, std::uint64_t n_rows,
                                     std::uint32_t item_index) {
  require_serializable(tree, n_rows);
  std::vector<std::uint8_t> body;
  encode_node(PTreeCodec::root(tree).get(), body);

  std::vector<std::uint8_t> out;
  out.reserve(kTreeHeaderSize + body.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, kTreeFormatVersion);
  put_u64(out, tree.length());
  put_u64(out, n_rows);
  put_u64(out, tree.root_count());
  put_u32(out, item_index);
  put_u64(out, body.size());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

TreeRecord read_tree(std::span<const std::uint8_t> bytes) {
  const Header h = read_header(bytes);
  if (bytes.size() < kTreeHeaderSize + h.body_length) {
    throw CorruptionError("tree body is truncated");
  }
  if (bytes.size() > kTreeHeaderSize + h.body_length) {
    throw FormatError("trailing data after the tree body");
  }
  Cursor cur{bytes.subspan(kTreeHeaderSize), 0};
  PTree::NodePtr root = decode_node(cur, h.padded_length);
  if (cur.at != h.body_length) {
    throw CorruptionError("tree body ends before the declared length");
  }
  if (root->count != h.root_count) {
    throw IntegrityError("header root count " + std::to_string(h.root_count) +
                         " disagrees with recomputed " +
                         std::to_string(root->count));
  }
  TreeRecord rec;
  rec.tree = PTreeCodec::make(std::move(root),
                              static_cast<std::size_t>(h.padded_length));
  rec.n_rows = h.n_rows;
  rec.item_index = h.item_index;
  return rec;
}

std::uint64_t peek_root_count(std::span<const std::uint8_t> bytes) {
  return read_header(bytes).root_count;
}

void write_tree_file(const std::string& path, const PTree& tree,
                     std::uint64_t n_rows, std::uint32_t item_index) {
  const auto bytes = write_tree(tree, n_rows, item_index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("short write: " + path);
  }
}

namespace {

std::vector<std::uint8_t> read_file_bytes(const std::string& path,
                                          std::size_t at_most = SIZE_MAX) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open: " + path);
  }
  std::vector<std::uint8_t> bytes;
  char buf[64 * 1024];
  while (bytes.size() < at_most && in) {
    in.read(buf, sizeof buf);
    const auto got = static_cast<std::size_t>(in.gcount());
    bytes.insert(bytes.end(), buf, buf + std::min(got, at_most - bytes.size()));
  }
  return bytes;
}

}  // namespace

TreeRecord read_tree_file(const std::string& path) {
  return read_tree(read_file_bytes(path));
}

std::uint64_t peek_root_count_file(const std::string& path) {
  return peek_root_count(read_file_bytes(path, kTreeHeaderSize));
}

namespace {

std::string item_file_name(std::uint32_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "item_%05u.pt", index);
  return buf;
}

}  // namespace

void write_store(const std::string& directory, const std::vector<PTree>& trees,
                 const ItemCatalog& catalog, std::size_t n_rows) {
  if (trees.empty() || trees.size() != catalog.size()) {
    throw UsageError("store needs one tree per catalog item");
  }
  const std::size_t length = trees.front().length();
  for (const auto& t : trees) {
    if (t.length() != length) {
      throw StructuralError("store trees must share one column length");
    }
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw IoError("cannot create store directory: " + directory);
  }

  ordered_json manifest;
  manifest["format"] = "ptmine-store";
  manifest["version"] = 1;
  manifest["n_rows"] = n_rows;
  manifest["padded_length"] = length;
  manifest["items"] = ordered_json::array();
  for (std::uint32_t i = 0; i < trees.size(); ++i) {
    const std::string file = item_file_name(i);
    write_tree_file((fs::path(directory) / file).string(), trees[i], n_rows, i);
    const CatalogItem& item = catalog.item(i);
    ordered_json entry;
    entry["index"] = i;
    entry["attribute"] = item.attribute;
    entry["value"] = item.value;
    entry["role"] = role_name(item.role);
    entry["file"] = file;
    entry["root_count"] = trees[i].root_count();
    manifest["items"].push_back(std::move(entry));
  }

  std::ofstream out(fs::path(directory) / "manifest.json",
                    std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write store manifest in " + directory);
  }
  out << manifest.dump(2) << "\n";
}

TreeStore read_store(const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path manifest_path = fs::path(directory) / "manifest.json";
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open store manifest: " + manifest_path.string());
  }
  ordered_json manifest;
  try {
    in >> manifest;
  } catch (const std::exception& e) {
    throw FormatError(std::string("store manifest is not valid JSON: ") +
                      e.what());
  }
  if (manifest.value("format", std::string{}) != "ptmine-store" ||
      manifest.value("version", 0) != 1) {
    throw FormatError("not a version-1 tree store manifest");
  }
  TreeStore store;
  store.n_rows = manifest.value("n_rows", std::size_t{0});
  store.padded_length = manifest.value("padded_length", std::size_t{0});
  if (!manifest.contains("items") || !manifest["items"].is_array() ||
      manifest["items"].empty()) {
    throw FormatError("store manifest lists no items");
  }

  std::vector<CatalogItem> items;
  for (const auto& entry : manifest["items"]) {
    CatalogItem item;
    item.index = entry.value("index", std::uint32_t(0xffffffff));
    item.attribute = entry.value("attribute", std::string{});
    item.value = entry.value("value", std::string{});
    const std::string role = entry.value("role", std::string{});
    if (role == "condition") {
      item.role = Role::Condition;
    } else if (role == "decision") {
      item.role = Role::Decision;
    } else {
      throw FormatError("store manifest item with unknown role '" + role + "'");
    }
    if (item.index != items.size()) {
      throw FormatError("store manifest items must be indexed 0..n-1 in order");
    }

    const std::string file = entry.value("file", std::string{});
    TreeRecord rec = read_tree_file((fs::path(directory) / file).string());
    if (rec.item_index != item.index) {
      throw IntegrityError("tree file " + file + " carries item index " +
                           std::to_string(rec.item_index) + ", manifest says " +
                           std::to_string(item.index));
    }
    if (rec.n_rows != store.n_rows) {
      throw IntegrityError("tree file " + file + " row count disagrees with the manifest");
    }
    if (rec.tree.length() != store.padded_length) {
      throw IntegrityError("tree file " + file + " length disagrees with the manifest");
    }
    const auto manifest_count = entry.value("root_count", std::uint64_t{0});
    if (rec.tree.root_count() != manifest_count) {
      throw IntegrityError("tree file " + file + " root count disagrees with the manifest");
    }
    store.trees.push_back(std::move(rec.tree));
    items.push_back(std::move(item));
  }
  store.catalog = ItemCatalog(std::move(items));
  return store;
}

}  // namespace ptmine
