#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptmine/fraction.hpp"
#include "ptmine/schema.hpp"

namespace ptmine {

// Strictly increasing item indices.
using Itemset = std::vector<std::uint32_t>;

struct FrequentItemset {
  Itemset items;
  std::uint64_t count = 0;

  bool operator==(const FrequentItemset&) const = default;
};

// One rule antecedent -> consequent with the exact counts that justified it.
// support = count / n_rows, confidence = count / antecedent_count; both are
// derived quantities, the counts are authoritative.
struct AssociationRule {
  Itemset antecedent;
  std::uint32_t consequent = 0;
  std::uint64_t count = 0;             // rows matching antecedent and consequent
  std::uint64_t antecedent_count = 0;  // rows matching the antecedent

  double support(std::size_t n_rows) const {
    return n_rows == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(n_rows);
  }
  double confidence() const {
    return antecedent_count == 0
               ? 0.0
               : static_cast<double>(count) / static_cast<double>(antecedent_count);
  }

  bool operator==(const AssociationRule&) const = default;
};

enum class DecisionMode { Fixed, Free };

struct MiningConfig {
  Fraction minsup = Fraction{1, 10};
  Fraction minconf = Fraction{3, 4};
  DecisionMode mode = DecisionMode::Fixed;
  // Fixed mode: attributes whose items may appear as consequents. Must be
  // non-empty and name existing attributes. Ignored in Free mode.
  std::vector<std::string> decision_attributes;
  // Caps antecedent size; unset means unbounded.
  std::optional<std::size_t> max_antecedent;
  unsigned threads = 1;
  // Upper bound on bytes of intermediate trees kept for reuse between
  // levels. Zero disables reuse. Never changes results.
  std::uint64_t cache_limit_bytes = std::uint64_t{256} << 20;
};

struct MiningResult {
  // Ordered by (size, lexicographic).
  std::vector<FrequentItemset> frequents;
  // Ordered by (consequent, antecedent size, lexicographic antecedent).
  std::vector<AssociationRule> rules;

  // Count of frequent itemsets per size; entry 0 is size 1.
  std::vector<std::size_t> frequents_by_level() const;

  bool operator==(const MiningResult&) const = default;
};

// Canonical output orderings.
bool frequent_order(const FrequentItemset& a, const FrequentItemset& b);
bool rule_order(const AssociationRule& a, const AssociationRule& b);

// The attributes that take a turn as the consequent side. Fixed mode echoes
// the configured attributes (validated against the catalog); Free mode
// returns every attribute. Each round treats the items of every other
// attribute as conditions. Throws UsageError for unknown or empty decision
// sets and for catalogs where a round would have no condition items.
std::vector<std::string> resolve_decision_attributes(const ItemCatalog& catalog,
                                                     const MiningConfig& config);

std::string itemset_label(const ItemCatalog& catalog, const Itemset& items);

}  // namespace ptmine
