#pragma once

// Shared fixtures: the eight-row worked example and random-instance
// builders used by both the unit tests and the acceptance binary.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ptmine/mining_types.hpp"
#include "ptmine/oracle.hpp"
#include "ptmine/ptree.hpp"
#include "ptmine/schema.hpp"

namespace testutil {

// Rows x items bit matrix of the worked example, items A..G left to right.
inline const std::vector<std::string>& demo_rows() {
  static const std::vector<std::string> rows = {
      "1100000",  // A B
      "1111110",  // A B C D E F
      "0101001",  // B D G
      "0100101",  // B E G
      "0001011",  // D F G
      "0001101",  // D E G
      "0100100",  // B E
      "0101110",  // B D E F
  };
  return rows;
}

// One zero-padded column per item from row-major bit strings.
inline std::vector<ptmine::BitVector> columns_from_rows(
    const std::vector<std::string>& rows, std::size_t padded_length) {
  const std::size_t n_items = rows.empty() ? 0 : rows.front().size();
  std::vector<ptmine::BitVector> cols;
  cols.reserve(n_items);
  for (std::size_t c = 0; c < n_items; ++c) {
    std::string bits(padded_length, '0');
    for (std::size_t r = 0; r < rows.size(); ++r) {
      bits[r] = rows[r][c];
    }
    cols.push_back(ptmine::BitVector::from_string(bits));
  }
  return cols;
}

inline std::vector<ptmine::PTree> trees_from_rows(
    const std::vector<std::string>& rows, std::size_t padded_length) {
  std::vector<ptmine::PTree> trees;
  for (const auto& col : columns_from_rows(rows, padded_length)) {
    trees.push_back(ptmine::PTree::build(col));
  }
  return trees;
}

inline std::vector<ptmine::oracle::Row> oracle_rows(
    const std::vector<std::string>& rows) {
  std::vector<ptmine::oracle::Row> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    ptmine::oracle::Row row;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (r[c] == '1') {
        row.push_back(static_cast<std::uint32_t>(c));
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

// One single-valued binary attribute per item, named "A", "B", ... Items
// whose attribute appears in `decisions` get the decision role.
inline ptmine::ItemCatalog binary_catalog(
    std::size_t n_items, const std::vector<std::string>& decisions = {}) {
  std::vector<ptmine::CatalogItem> items;
  for (std::uint32_t i = 0; i < n_items; ++i) {
    ptmine::CatalogItem item;
    item.index = i;
    item.attribute = std::string(1, static_cast<char>('A' + i));
    item.value = "yes";
    item.role = std::find(decisions.begin(), decisions.end(), item.attribute) !=
                        decisions.end()
                    ? ptmine::Role::Decision
                    : ptmine::Role::Condition;
    items.push_back(std::move(item));
  }
  return ptmine::ItemCatalog(std::move(items));
}

inline std::string random_bits(std::mt19937& rng, std::size_t length,
                               unsigned percent_ones) {
  std::string bits(length, '0');
  for (auto& b : bits) {
    if (rng() % 100 < percent_ones) {
      b = '1';
    }
  }
  return bits;
}

struct RandomInstance {
  std::vector<std::string> rows;  // row-major bit strings
  std::size_t n_rows = 0;
  std::size_t n_items = 0;
};

inline RandomInstance random_instance(std::mt19937& rng,
                                      std::size_t max_items = 12,
                                      std::size_t max_rows = 64) {
  RandomInstance inst;
  inst.n_items = 2 + rng() % (max_items - 1);
  inst.n_rows = 1 + rng() % max_rows;
  const unsigned density = 25 * (1 + rng() % 3);
  for (std::size_t r = 0; r < inst.n_rows; ++r) {
    inst.rows.push_back(random_bits(rng, inst.n_items, density));
  }
  return inst;
}

}  // namespace testutil
