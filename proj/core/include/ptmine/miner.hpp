#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ptmine/mining_types.hpp"
#include "ptmine/ptree.hpp"
#include "ptmine/schema.hpp"

namespace ptmine {

// Level-wise miner that takes every support count from tree root counts.
// After the trees are built it never reads a bitmap row; the instrumented
// BitmapTable read counter proves this in the test suite.

// Singleton supports straight from root counts. Returns the frequent subset
// of `items` ascending by item index.
std::vector<FrequentItemset> frequent_one_itemsets(std::span<const PTree> trees,
                                                   std::size_t n_rows,
                                                   const Fraction& minsup,
                                                   const std::vector<std::uint32_t>& items);

// Join step over the frequent k-itemsets (sorted, deduplicated): pairs that
// share their first k-1 items merge into a (k+1)-candidate, kept only when
// every k-subset is frequent. Output is sorted and duplicate-free.
std::vector<Itemset> generate_candidates(const std::vector<Itemset>& frequent);

// Root count of the AND across the itemset's trees. The itemset must be
// non-empty and strictly increasing within range.
std::uint64_t support_count(const Itemset& itemset, std::span<const PTree> trees);

// Turns one round's frequent itemsets into rules. An itemset containing
// exactly one item of `decision_items` plus at least one other item yields
// antecedent -> decision item; its confidence comes from the stored counts,
// never from re-counting. A missing antecedent count is an InternalError
// because level-wise mining always records the subset first.
std::vector<AssociationRule> derive_rules(
    const std::map<Itemset, std::uint64_t>& frequent_counts,
    const std::vector<std::uint32_t>& decision_items, const Fraction& minconf);

// Full mining run over prebuilt trees: one round per decision attribute
// (resolve_decision_attributes), condition itemsets grown level-wise with
// generate_candidates, each frequent condition itemset extended by each
// frequent decision item, rounds merged and deduplicated. Identical output
// for any thread count.
MiningResult mine_bfarm(std::span<const PTree> trees, std::size_t n_rows,
                        const ItemCatalog& catalog, const MiningConfig& config);
MiningResult mine_bfarm(const std::vector<PTree>& trees, std::size_t n_rows,
                        const ItemCatalog& catalog, const MiningConfig& config);

}  // namespace ptmine
