#include "ptmine/miner.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>

#include "ptmine/errors.hpp"

namespace ptmine {

namespace {

// Budget estimate per retained tree node; an overestimate only trades memory
// for recomputation, never correctness.
constexpr std::uint64_t kApproxNodeBytes = sizeof(PTree::Node) + 32;

void require_fraction(const Fraction& f, const char* what) {
  if (f.den <= 0 || f.num <= 0 || f.num > f.den) {
    throw ThresholdError(std::string(what) + " must be a fraction in (0, 1]");
  }
}

void require_itemset(const Itemset& itemset, std::size_t n_items) {
  if (itemset.empty()) {
    throw UsageError("itemset must be non-empty");
  }
  for (std::size_t i = 0; i < itemset.size(); ++i) {
    if (i > 0 && itemset[i] <= itemset[i - 1]) {
      throw UsageError("itemset must be strictly increasing");
    }
    if (itemset[i] >= n_items) {
      throw UsageError("item index " + std::to_string(itemset[i]) +
                       " is out of range");
    }
  }
}

std::size_t validate_trees(std::span<const PTree> trees, std::size_t n_rows,
                           std::size_t n_items) {
  if (trees.empty() || trees.size() != n_items) {
    throw UsageError("need exactly one tree per catalog item");
  }
  const std::size_t length = trees[0].length();
  for (const auto& t : trees) {
    if (t.empty()) {
      throw UsageError("tree list contains a default-constructed tree");
    }
    if (t.length() != length) {
      throw StructuralError("all trees must share one column length");
    }
  }
  if (n_rows == 0 || n_rows > length) {
    throw ValidationError("row count must be in [1, column length]");
  }
  return length;
}

// Runs fn(0..n-1). Work items must be independent and write only to their
// own index, so results cannot depend on scheduling.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  const auto workers =
      static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) {
          return;
        }
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
          return;
        }
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

struct LevelEntry {
  Itemset items;
  std::uint64_t count = 0;
  // Tree of the AND across the itemset, retained while the cache budget
  // lasts. Absent trees are recomputed from the base trees on demand.
  std::optional<PTree> tree;
};

PTree itemset_tree(const Itemset& items, std::span<const PTree> trees) {
  PTree acc = trees[items[0]];
  for (std::size_t i = 1; i < items.size(); ++i) {
    acc = tree_and(acc, trees[items[i]]);
  }
  return acc;
}

Itemset with_item(const Itemset& items, std::uint32_t extra) {
  Itemset out = items;
  out.insert(std::lower_bound(out.begin(), out.end(), extra), extra);
  return out;
}

using RuleKey = std::tuple<std::uint32_t, std::size_t, Itemset>;

void run_round(const std::string& decision_attribute,
               std::span<const PTree> trees, std::size_t n_rows,
               const ItemCatalog& catalog, const MiningConfig& config,
               std::map<Itemset, std::uint64_t>& all_frequents,
               std::map<RuleKey, AssociationRule>& all_rules) {
  std::vector<std::uint32_t> condition_items;
  condition_items.reserve(catalog.size());
  for (std::uint32_t i = 0; i < catalog.size(); ++i) {
    if (catalog.item(i).attribute != decision_attribute) {
      condition_items.push_back(i);
    }
  }
  const std::vector<FrequentItemset> decision_singles = frequent_one_itemsets(
      trees, n_rows, config.minsup, catalog.items_of(decision_attribute));

  std::map<Itemset, std::uint64_t> round_frequents;
  for (const auto& d : decision_singles) {
    round_frequents.emplace(d.items, d.count);
  }

  std::vector<LevelEntry> level;
  for (const auto& f :
       frequent_one_itemsets(trees, n_rows, config.minsup, condition_items)) {
    level.push_back({f.items, f.count, trees[f.items[0]]});
  }

  std::size_t level_size = 1;
  while (!level.empty()) {
    for (const auto& entry : level) {
      round_frequents.emplace(entry.items, entry.count);
    }

    // Extend every frequent condition itemset by every frequent decision
    // item; the counts double as rule supports.
    const std::size_t pairs = level.size() * decision_singles.size();
    if (pairs != 0) {
      std::vector<std::uint64_t> counts(pairs);
      parallel_for(pairs, config.threads, [&](std::size_t idx) {
        const LevelEntry& entry = level[idx / decision_singles.size()];
        const std::uint32_t d =
            decision_singles[idx % decision_singles.size()].items[0];
        const PTree joined = entry.tree
                                 ? tree_and(*entry.tree, trees[d])
                                 : itemset_tree(with_item(entry.items, d), trees);
        counts[idx] = joined.root_count();
      });
      for (std::size_t idx = 0; idx < pairs; ++idx) {
        if (!meets_threshold(counts[idx], n_rows, config.minsup)) {
          continue;
        }
        const LevelEntry& entry = level[idx / decision_singles.size()];
        const std::uint32_t d =
            decision_singles[idx % decision_singles.size()].items[0];
        round_frequents.emplace(with_item(entry.items, d), counts[idx]);
      }
    }

    if (config.max_antecedent && level_size >= *config.max_antecedent) {
      break;
    }

    std::vector<Itemset> keys;
    keys.reserve(level.size());
    for (const auto& entry : level) {
      keys.push_back(entry.items);
    }
    const std::vector<Itemset> candidates = generate_candidates(keys);
    if (candidates.empty()) {
      break;
    }

    std::map<Itemset, std::size_t> level_index;
    for (std::size_t i = 0; i < level.size(); ++i) {
      level_index.emplace(level[i].items, i);
    }

    std::vector<std::uint64_t> counts(candidates.size());
    std::vector<PTree> candidate_trees(candidates.size());
    parallel_for(candidates.size(), config.threads, [&](std::size_t i) {
      const Itemset& c = candidates[i];
      const Itemset prefix(c.begin(), c.end() - 1);
      const auto hit = level_index.find(prefix);
      PTree t = (hit != level_index.end() && level[hit->second].tree)
                    ? tree_and(*level[hit->second].tree, trees[c.back()])
                    : itemset_tree(c, trees);
      counts[i] = t.root_count();
      candidate_trees[i] = std::move(t);
    });

    std::vector<LevelEntry> next;
    std::uint64_t budget_used = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!meets_threshold(counts[i], n_rows, config.minsup)) {
        continue;
      }
      LevelEntry entry{candidates[i], counts[i], std::nullopt};
      if (config.cache_limit_bytes != 0) {
        const std::uint64_t bytes =
            candidate_trees[i].node_count() * kApproxNodeBytes;
        if (budget_used + bytes <= config.cache_limit_bytes) {
          budget_used += bytes;
          entry.tree = std::move(candidate_trees[i]);
        }
      }
      next.push_back(std::move(entry));
    }
    level = std::move(next);
    ++level_size;
  }

  std::vector<std::uint32_t> decision_items;
  for (const auto& d : decision_singles) {
    decision_items.push_back(d.items[0]);
  }
  std::vector<AssociationRule> rules =
      derive_rules(round_frequents, decision_items, config.minconf);

  for (auto& [items, count] : round_frequents) {
    const auto [it, fresh] = all_frequents.emplace(items, count);
    if (!fresh && it->second != count) {
      throw InternalError("rounds disagree on a support count");
    }
  }
  for (auto& rule : rules) {
    RuleKey key{rule.consequent, rule.antecedent.size(), rule.antecedent};
    const auto [it, fresh] = all_rules.emplace(std::move(key), rule);
    if (!fresh && !(it->second == rule)) {
      throw InternalError("rounds disagree on a rule");
    }
  }
}

}  // namespace

std::vector<FrequentItemset> frequent_one_itemsets(
    std::span<const PTree> trees, std::size_t n_rows, const Fraction& minsup,
    const std::vector<std::uint32_t>& items) {
  require_fraction(minsup, "minsup");
  std::vector<std::uint32_t> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<FrequentItemset> out;
  for (const std::uint32_t item : sorted) {
    if (item >= trees.size()) {
      throw UsageError("item index " + std::to_string(item) + " is out of range");
    }
    const std::uint64_t count = trees[item].root_count();
    if (meets_threshold(count, n_rows, minsup)) {
      out.push_back({{item}, count});
    }
  }
  return out;
}

std::vector<Itemset> generate_candidates(const std::vector<Itemset>& frequent) {
  if (frequent.empty()) {
    return {};
  }
  const std::size_t k = frequent[0].size();
  if (k == 0) {
    throw UsageError("candidate generation needs non-empty itemsets");
  }
  for (std::size_t i = 0; i < frequent.size(); ++i) {
    if (frequent[i].size() != k) {
      throw UsageError("candidate generation needs itemsets of one size");
    }
    if (!std::is_sorted(frequent[i].begin(), frequent[i].end()) ||
        std::adjacent_find(frequent[i].begin(), frequent[i].end()) !=
            frequent[i].end()) {
      throw UsageError("candidate generation needs strictly increasing itemsets");
    }
    if (i > 0 && !(frequent[i - 1] < frequent[i])) {
      throw UsageError("candidate generation needs a sorted, duplicate-free list");
    }
  }

  std::vector<Itemset> out;
  for (std::size_t i = 0; i < frequent.size(); ++i) {
    for (std::size_t j = i + 1; j < frequent.size(); ++j) {
      if (!std::equal(frequent[i].begin(), frequent[i].end() - 1,
                      frequent[j].begin(), frequent[j].end() - 1)) {
        break;  // the list is sorted, so the shared-prefix block is contiguous
      }
      Itemset candidate = frequent[i];
      candidate.push_back(frequent[j].back());
      // The two joined parents are frequent by construction; check the
      // remaining k-subsets, obtained by dropping one of the first k-1 items.
      bool keep = true;
      Itemset subset(candidate.begin() + 1, candidate.end());
      for (std::size_t drop = 0; keep && drop + 2 < candidate.size(); ++drop) {
        if (drop > 0) {
          subset[drop - 1] = candidate[drop - 1];
        }
        keep = std::binary_search(frequent.begin(), frequent.end(), subset);
      }
      if (keep) {
        out.push_back(std::move(candidate));
      }
    }
  }
  return out;
}

std::uint64_t support_count(const Itemset& itemset, std::span<const PTree> trees) {
  require_itemset(itemset, trees.size());
  return itemset_tree(itemset, trees).root_count();
}

std::vector<AssociationRule> derive_rules(
    const std::map<Itemset, std::uint64_t>& frequent_counts,
    const std::vector<std::uint32_t>& decision_items, const Fraction& minconf) {
  require_fraction(minconf, "minconf");
  std::vector<std::uint32_t> decisions = decision_items;
  std::sort(decisions.begin(), decisions.end());

  std::vector<AssociationRule> out;
  for (const auto& [items, count] : frequent_counts) {
    if (items.size() < 2) {
      continue;
    }
    std::uint32_t consequent = 0;
    int hits = 0;
    for (const std::uint32_t item : items) {
      if (std::binary_search(decisions.begin(), decisions.end(), item)) {
        consequent = item;
        ++hits;
      }
    }
    if (hits != 1) {
      continue;
    }
    Itemset antecedent;
    antecedent.reserve(items.size() - 1);
    for (const std::uint32_t item : items) {
      if (item != consequent) {
        antecedent.push_back(item);
      }
    }
    const auto base = frequent_counts.find(antecedent);
    if (base == frequent_counts.end()) {
      throw InternalError(
          "frequent itemset is missing its antecedent's support count");
    }
    if (meets_threshold(count, base->second, minconf)) {
      out.push_back({std::move(antecedent), consequent, count, base->second});
    }
  }
  std::sort(out.begin(), out.end(), rule_order);
  return out;
}

MiningResult mine_bfarm(std::span<const PTree> trees, std::size_t n_rows,
                        const ItemCatalog& catalog, const MiningConfig& config) {
  validate_trees(trees, n_rows, catalog.size());
  require_fraction(config.minsup, "minsup");
  require_fraction(config.minconf, "minconf");
  if (config.threads == 0) {
    throw UsageError("thread count must be at least 1");
  }
  const std::vector<std::string> decisions =
      resolve_decision_attributes(catalog, config);

  std::map<Itemset, std::uint64_t> frequents;
  std::map<RuleKey, AssociationRule> rules;
  for (const auto& attribute : decisions) {
    run_round(attribute, trees, n_rows, catalog, config, frequents, rules);
  }

  MiningResult result;
  result.frequents.reserve(frequents.size());
  for (auto& [items, count] : frequents) {
    result.frequents.push_back({items, count});
  }
  std::sort(result.frequents.begin(), result.frequents.end(), frequent_order);
  result.rules.reserve(rules.size());
  for (auto& [key, rule] : rules) {
    result.rules.push_back(std::move(rule));
  }
  return result;
}

MiningResult mine_bfarm(const std::vector<PTree>& trees, std::size_t n_rows,
                        const ItemCatalog& catalog, const MiningConfig& config) {
  return mine_bfarm(std::span<const PTree>(trees.data(), trees.size()), n_rows,
                    catalog, config);
}

}  // namespace ptmine
