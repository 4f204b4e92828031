#pragma once

#include <atomic>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptmine/bitvec.hpp"

namespace ptmine {

// Relational input: a header naming the attributes plus rows of string cells.
// Every row must have exactly header.size() cells.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads delimiter-separated text. Cells are trimmed of surrounding
// whitespace. When header_names is empty the first line is the header;
// otherwise every line is data and header_names supplies the attribute
// names. Ragged rows raise StructuralError naming the offending line.
RawTable load_delimited(std::istream& in, char delimiter = ',',
                        const std::vector<std::string>& header_names = {});
RawTable load_delimited_file(const std::string& path, char delimiter = ',',
                             const std::vector<std::string>& header_names = {});

enum class Role { Condition, Decision };

enum class AttributeKind { Binary, Categorical };

// One attribute column. Binary attributes contribute a single item for the
// positive value; the other value has no item. Categorical attributes
// contribute one item per declared value, in declared order.
struct AttributeSchema {
  std::string name;
  AttributeKind kind = AttributeKind::Categorical;
  Role role = Role::Condition;
  std::string positive;             // Binary only
  std::vector<std::string> values;  // Categorical only, first-appearance order
};

struct TableSchema {
  std::vector<AttributeSchema> attributes;

  // Enforces unique names, non-empty duplicate-free value lists, and at
  // least one Condition attribute. Throws ValidationError.
  void validate() const;

  // JSON round-trip; see README.md for the document layout.
  static TableSchema from_json_text(const std::string& text);
  static TableSchema from_json_file(const std::string& path);
  std::string to_json_text() const;
};

struct InferOptions {
  // Checked in order; the first token present among a two-valued column's
  // values becomes that column's positive value.
  std::vector<std::string> positive_tokens = {"yes", "1", "true"};
};

// Scans the table once per column. A column with exactly two distinct values,
// one of them a configured positive token, becomes Binary; anything else
// becomes Categorical with values in first-appearance order. All roles
// default to Condition. Throws EmptyInputError on a rowless table and
// StructuralError on ragged rows.
TableSchema infer_schema(const RawTable& table, const InferOptions& options = {});

// Smallest power of two >= n, floored at 16. Bit columns are padded to this
// length with zeros so quadrant sizes stay divisible as the tree descends.
std::size_t pad_length(std::size_t n_rows);

// One mined item: a (attribute, value) pair with the attribute's role.
struct CatalogItem {
  std::uint32_t index = 0;
  std::string attribute;
  std::string value;
  Role role = Role::Condition;

  bool operator==(const CatalogItem&) const = default;
};

// The item universe induced by a schema, in schema order. Items of one
// attribute are contiguous and ascending.
class ItemCatalog {
 public:
  ItemCatalog() = default;
  explicit ItemCatalog(std::vector<CatalogItem> items);

  static ItemCatalog from_schema(const TableSchema& schema);

  std::size_t size() const { return items_.size(); }
  const CatalogItem& item(std::uint32_t index) const { return items_.at(index); }
  const std::vector<CatalogItem>& items() const { return items_; }

  // Attribute names in schema order.
  const std::vector<std::string>& attributes() const { return attribute_order_; }

  // Item indices of one attribute, ascending. Throws UsageError for an
  // unknown attribute name.
  const std::vector<std::uint32_t>& items_of(const std::string& attribute) const;

  bool has_attribute(const std::string& attribute) const {
    return by_attribute_.contains(attribute);
  }

  // Display form "attribute=value".
  std::string label(std::uint32_t index) const;

  std::optional<std::uint32_t> find(const std::string& attribute,
                                    const std::string& value) const;

 private:
  std::vector<CatalogItem> items_;
  std::vector<std::string> attribute_order_;
  std::map<std::string, std::vector<std::uint32_t>> by_attribute_;
};

// Vertical bit-column layout of a discretized table. Column j holds one bit
// per row for item j, padded with zeros to a power-of-two length >= 16.
// Every access to row data bumps an instrumentation counter so tests can
// prove which code paths touch the bitmap after tree construction.
class BitmapTable {
 public:
  BitmapTable(std::size_t n_rows, std::size_t padded_length,
              std::vector<BitVector> columns);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t padded_length() const { return padded_length_; }
  std::size_t n_items() const { return columns_.size(); }

  // Row-data accessors. All of them count as bitmap reads.
  const BitVector& column(std::size_t item) const;
  bool bit(std::size_t item, std::size_t row) const;

  // Rows as sorted item-index lists, unpadded. One counted read per column.
  std::vector<std::vector<std::uint32_t>> rows_as_itemsets() const;

  std::uint64_t read_count() const { return reads_.load(); }

 private:
  std::size_t n_rows_ = 0;
  std::size_t padded_length_ = 0;
  std::vector<BitVector> columns_;
  mutable std::atomic<std::uint64_t> reads_{0};
};

struct DiscretizedTable {
  BitmapTable bitmap;
  ItemCatalog catalog;
};

// Maps each row to its one-hot item bits. Schema attribute names must match
// the table header in order. A Categorical cell outside the declared value
// list raises ValidationError naming the attribute, value, and row; a Binary
// cell is 1 exactly when it equals the positive value. Padding rows are all
// zero, so column counts equal unpadded column counts.
DiscretizedTable discretize(const RawTable& table, const TableSchema& schema);

const char* role_name(Role role);
const char* kind_name(AttributeKind kind);

}  // namespace ptmine
