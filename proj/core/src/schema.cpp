#include "ptmine/schema.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ptmine/errors.hpp"

namespace ptmine {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim_copy(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
    ++b;
  }
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
    --e;
  }
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ls(line);
  while (std::getline(ls, cell, delimiter)) {
    cells.push_back(trim_copy(cell));
  }
  if (!line.empty() && line.back() == delimiter) {
    cells.emplace_back();
  }
  return cells;
}

void check_rect(const RawTable& table) {
  const std::size_t arity = table.header.size();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != arity) {
      throw StructuralError("row " + std::to_string(r + 1) + " has " +
                            std::to_string(table.rows[r].size()) +
                            " cells, expected " + std::to_string(arity));
    }
  }
}

}  // namespace

RawTable load_delimited(std::istream& in, char delimiter,
                        const std::vector<std::string>& header_names) {
  RawTable table;
  table.header = header_names;
  std::string line;
  bool need_header = header_names.empty();
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (trim_copy(line).empty()) {
      continue;
    }
    auto cells = split_line(line, delimiter);
    if (need_header) {
      table.header = std::move(cells);
      need_header = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  if (table.header.empty()) {
    throw EmptyInputError("input has no header line");
  }
  check_rect(table);
  return table;
}

RawTable load_delimited_file(const std::string& path, char delimiter,
                             const std::vector<std::string>& header_names) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open input file: " + path);
  }
  return load_delimited(in, delimiter, header_names);
}

void TableSchema::validate() const {
  std::set<std::string> names;
  bool has_condition = false;
  for (const auto& attr : attributes) {
    if (attr.name.empty()) {
      throw ValidationError("schema attribute with empty name");
    }
    if (!names.insert(attr.name).second) {
      throw ValidationError("duplicate attribute name: " + attr.name);
    }
    if (attr.role == Role::Condition) {
      has_condition = true;
    }
    if (attr.kind == AttributeKind::Binary) {
      if (attr.positive.empty()) {
        throw ValidationError("binary attribute '" + attr.name +
                              "' has no positive value");
      }
    } else {
      if (attr.values.empty()) {
        throw ValidationError("categorical attribute '" + attr.name +
                              "' has an empty value list");
      }
      std::set<std::string> seen;
      for (const auto& v : attr.values) {
        if (!seen.insert(v).second) {
          throw ValidationError("categorical attribute '" + attr.name +
                                "' lists value '" + v + "' twice");
        }
      }
    }
  }
  if (attributes.empty()) {
    throw ValidationError("schema has no attributes");
  }
  if (!has_condition) {
    throw ValidationError("schema needs at least one condition attribute");
  }
}

TableSchema TableSchema::from_json_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("attributes") ||
      !doc["attributes"].is_array()) {
    throw ValidationError("schema JSON needs an 'attributes' array");
  }
  TableSchema schema;
  for (const auto& a : doc["attributes"]) {
    AttributeSchema attr;
    if (!a.contains("name") || !a["name"].is_string()) {
      throw ValidationError("schema attribute without a string 'name'");
    }
    attr.name = a["name"].get<std::string>();
    const std::string kind = a.value("kind", std::string("categorical"));
    const std::string role = a.value("role", std::string("condition"));
    if (role == "condition") {
      attr.role = Role::Condition;
    } else if (role == "decision") {
      attr.role = Role::Decision;
    } else {
      throw ValidationError("attribute '" + attr.name + "' has unknown role '" +
                            role + "'");
    }
    if (kind == "binary") {
      attr.kind = AttributeKind::Binary;
      attr.positive = a.value("positive", std::string{});
    } else if (kind == "categorical") {
      attr.kind = AttributeKind::Categorical;
      if (a.contains("values")) {
        for (const auto& v : a["values"]) {
          attr.values.push_back(v.get<std::string>());
        }
      }
    } else {
      throw ValidationError("attribute '" + attr.name + "' has unknown kind '" +
                            kind + "'");
    }
    schema.attributes.push_back(std::move(attr));
  }
  schema.validate();
  return schema;
}

TableSchema TableSchema::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open schema file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string TableSchema::to_json_text() const {
  ordered_json doc;
  doc["attributes"] = ordered_json::array();
  for (const auto& attr : attributes) {
    ordered_json a;
    a["name"] = attr.name;
    a["kind"] = kind_name(attr.kind);
    a["role"] = role_name(attr.role);
    if (attr.kind == AttributeKind::Binary) {
      a["positive"] = attr.positive;
    } else {
      a["values"] = attr.values;
    }
    doc["attributes"].push_back(std::move(a));
  }
  return doc.dump(2) + "\n";
}

TableSchema infer_schema(const RawTable& table, const InferOptions& options) {
  check_rect(table);
  if (table.rows.empty()) {
    throw EmptyInputError("cannot infer a schema from a table with no rows");
  }
  TableSchema schema;
  for (std::size_t col = 0; col < table.header.size(); ++col) {
    AttributeSchema attr;
    attr.name = table.header[col];
    std::vector<std::string> order;  // first-appearance
    std::set<std::string> seen;
    for (const auto& row : table.rows) {
      if (seen.insert(row[col]).second) {
        order.push_back(row[col]);
      }
    }
    const auto is_value = [&](const std::string& tok) {
      return std::find(order.begin(), order.end(), tok) != order.end();
    };
    std::string positive;
    if (order.size() == 2) {
      for (const auto& tok : options.positive_tokens) {
        if (is_value(tok)) {
          positive = tok;
          break;
        }
      }
    }
    if (!positive.empty()) {
      attr.kind = AttributeKind::Binary;
      attr.positive = positive;
    } else {
      attr.kind = AttributeKind::Categorical;
      attr.values = std::move(order);
    }
    schema.attributes.push_back(std::move(attr));
  }
  schema.validate();
  return schema;
}

std::size_t pad_length(std::size_t n_rows) {
  if (n_rows == 0) {
    throw EmptyInputError("cannot pad a table with no rows");
  }
  return std::max<std::size_t>(16, std::bit_ceil(n_rows));
}

ItemCatalog::ItemCatalog(std::vector<CatalogItem> items) : items_(std::move(items)) {
  for (std::uint32_t i = 0; i < items_.size(); ++i) {
    if (items_[i].index != i) {
      throw InternalError("catalog item indices must be 0..n-1 in order");
    }
    auto [it, fresh] = by_attribute_.try_emplace(items_[i].attribute);
    if (fresh) {
      attribute_order_.push_back(items_[i].attribute);
    } else if (!it->second.empty() && it->second.back() != i - 1) {
      throw InternalError("catalog items of one attribute must be contiguous");
    }
    it->second.push_back(i);
  }
}

ItemCatalog ItemCatalog::from_schema(const TableSchema& schema) {
  std::vector<CatalogItem> items;
  std::uint32_t index = 0;
  for (const auto& attr : schema.attributes) {
    if (attr.kind == AttributeKind::Binary) {
      items.push_back({index++, attr.name, attr.positive, attr.role});
    } else {
      for (const auto& value : attr.values) {
        items.push_back({index++, attr.name, value, attr.role});
      }
    }
  }
  return ItemCatalog(std::move(items));
}

const std::vector<std::uint32_t>& ItemCatalog::items_of(
    const std::string& attribute) const {
  auto it = by_attribute_.find(attribute);
  if (it == by_attribute_.end()) {
    throw UsageError("unknown attribute: " + attribute);
  }
  return it->second;
}

std::string ItemCatalog::label(std::uint32_t index) const {
  const CatalogItem& it = items_.at(index);
  return it.attribute + "=" + it.value;
}

std::optional<std::uint32_t> ItemCatalog::find(const std::string& attribute,
                                               const std::string& value) const {
  auto it = by_attribute_.find(attribute);
  if (it == by_attribute_.end()) {
    return std::nullopt;
  }
  for (std::uint32_t idx : it->second) {
    if (items_[idx].value == value) {
      return idx;
    }
  }
  return std::nullopt;
}

BitmapTable::BitmapTable(std::size_t n_rows, std::size_t padded_length,
                         std::vector<BitVector> columns)
    : n_rows_(n_rows), padded_length_(padded_length), columns_(std::move(columns)) {
  if (padded_length_ < 16 || !std::has_single_bit(padded_length_)) {
    throw StructuralError("padded length must be a power of two >= 16");
  }
  if (n_rows_ == 0 || n_rows_ > padded_length_) {
    throw StructuralError("row count must be in [1, padded length]");
  }
  for (const auto& col : columns_) {
    if (col.size() != padded_length_) {
      throw StructuralError("every column must have the padded length");
    }
    if (col.popcount_range(n_rows_, padded_length_ - n_rows_) != 0) {
      throw StructuralError("padding bits must be zero");
    }
  }
}

const BitVector& BitmapTable::column(std::size_t item) const {
  reads_.fetch_add(1, std::memory_order_relaxed);
  return columns_.at(item);
}

bool BitmapTable::bit(std::size_t item, std::size_t row) const {
  reads_.fetch_add(1, std::memory_order_relaxed);
  return columns_.at(item).test(row);
}

std::vector<std::vector<std::uint32_t>> BitmapTable::rows_as_itemsets() const {
  std::vector<std::vector<std::uint32_t>> rows(n_rows_);
  for (std::size_t item = 0; item < columns_.size(); ++item) {
    const BitVector& col = column(item);
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (col.test(r)) {
        rows[r].push_back(static_cast<std::uint32_t>(item));
      }
    }
  }
  return rows;
}

DiscretizedTable discretize(const RawTable& table, const TableSchema& schema) {
  schema.validate();
  check_rect(table);
  if (table.rows.empty()) {
    throw EmptyInputError("cannot discretize a table with no rows");
  }
  if (schema.attributes.size() != table.header.size()) {
    throw ValidationError("schema has " + std::to_string(schema.attributes.size()) +
                          " attributes but the table has " +
                          std::to_string(table.header.size()) + " columns");
  }
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (schema.attributes[c].name != table.header[c]) {
      throw ValidationError("schema attribute '" + schema.attributes[c].name +
                            "' does not match table column '" + table.header[c] +
                            "' at position " + std::to_string(c + 1));
    }
  }

  ItemCatalog catalog = ItemCatalog::from_schema(schema);
  const std::size_t n = table.rows.size();
  const std::size_t padded = pad_length(n);
  std::vector<BitVector> columns(catalog.size(), BitVector(padded));

  std::uint32_t first_item = 0;
  for (std::size_t c = 0; c < schema.attributes.size(); ++c) {
    const AttributeSchema& attr = schema.attributes[c];
    if (attr.kind == AttributeKind::Binary) {
      BitVector& col = columns[first_item];
      for (std::size_t r = 0; r < n; ++r) {
        if (table.rows[r][c] == attr.positive) {
          col.set(r);
        }
      }
      first_item += 1;
    } else {
      for (std::size_t r = 0; r < n; ++r) {
        const std::string& cell = table.rows[r][c];
        auto it = std::find(attr.values.begin(), attr.values.end(), cell);
        if (it == attr.values.end()) {
          throw ValidationError("attribute '" + attr.name + "' has no value '" +
                                cell + "' (row " + std::to_string(r + 1) + ")");
        }
        const auto offset =
            static_cast<std::uint32_t>(std::distance(attr.values.begin(), it));
        columns[first_item + offset].set(r);
      }
      first_item += static_cast<std::uint32_t>(attr.values.size());
    }
  }

  return DiscretizedTable{BitmapTable(n, padded, std::move(columns)),
                          std::move(catalog)};
}

const char* role_name(Role role) {
  return role == Role::Condition ? "condition" : "decision";
}

const char* kind_name(AttributeKind kind) {
  return kind == AttributeKind::Binary ? "binary" : "categorical";
}

}  // namespace ptmine
