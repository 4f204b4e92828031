#pragma once

#include <cstdint>
#include <vector>

#include "ptmine/mining_types.hpp"
#include "ptmine/schema.hpp"

namespace ptmine::oracle {

// Reference implementations that count by scanning rows. They share the
// result types and the decision-attribute semantics with the tree miner but
// none of its counting machinery, so agreement between the two is evidence,
// not tautology.

// A row as its sorted item indices.
using Row = std::vector<std::uint32_t>;

// Rows containing every item of the (strictly increasing) itemset.
std::uint64_t brute_force_support(const Itemset& itemset,
                                  const std::vector<Row>& rows);

// Level-wise reference miner over the items observed in `rows`: pairwise
// join of the frequent k-itemsets, subset prune, support by scan. Output
// ordered by (size, lexicographic).
std::vector<FrequentItemset> apriori_reference(const std::vector<Row>& rows,
                                               const Fraction& minsup);

// Every frequent itemset over the observed item universe by exhaustive
// subset enumeration. The universe is capped at 20 items. Used to check
// apriori_reference itself.
std::vector<FrequentItemset> enumerate_frequent(const std::vector<Row>& rows,
                                                const Fraction& minsup);

// Scan-counted mining run with the very same round semantics as the tree
// miner: one round per decision attribute, condition itemsets from
// apriori_reference over rows projected to the round's condition items,
// extensions and rules counted by scan.
MiningResult mine(const std::vector<Row>& rows, const ItemCatalog& catalog,
                  const MiningConfig& config);

// Exhaustive rule search: every subset of a round's condition items (capped
// at 24) against every decision item, thresholds checked on scan counts.
// Subsumes the level-wise search because a rule's support bounds its
// antecedent's support from below.
std::vector<AssociationRule> brute_force_rules(const std::vector<Row>& rows,
                                               const ItemCatalog& catalog,
                                               const MiningConfig& config);

}  // namespace ptmine::oracle
