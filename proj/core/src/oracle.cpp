#include "ptmine/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <tuple>

#include "ptmine/errors.hpp"

namespace ptmine::oracle {

namespace {

void require_fraction(const Fraction& f, const char* what) {
  if (f.den <= 0 || f.num <= 0 || f.num > f.den) {
    throw ThresholdError(std::string(what) + " must be a fraction in (0, 1]");
  }
}

void require_sorted(const Itemset& itemset) {
  if (itemset.empty()) {
    throw UsageError("itemset must be non-empty");
  }
  for (std::size_t i = 1; i < itemset.size(); ++i) {
    if (itemset[i] <= itemset[i - 1]) {
      throw UsageError("itemset must be strictly increasing");
    }
  }
}

std::vector<std::uint32_t> observed_items(const std::vector<Row>& rows) {
  std::set<std::uint32_t> seen;
  for (const Row& row : rows) {
    seen.insert(row.begin(), row.end());
  }
  return {seen.begin(), seen.end()};
}

Itemset sorted_union(const Itemset& items, std::uint32_t extra) {
  Itemset out = items;
  out.insert(std::lower_bound(out.begin(), out.end(), extra), extra);
  return out;
}

}  // namespace

std::uint64_t brute_force_support(const Itemset& itemset,
                                  const std::vector<Row>& rows) {
  require_sorted(itemset);
  std::uint64_t count = 0;
  for (const Row& row : rows) {
    if (std::includes(row.begin(), row.end(), itemset.begin(), itemset.end())) {
      ++count;
    }
  }
  return count;
}

std::vector<FrequentItemset> apriori_reference(const std::vector<Row>& rows,
                                               const Fraction& minsup) {
  require_fraction(minsup, "minsup");
  if (rows.empty()) {
    throw EmptyInputError("reference miner needs at least one row");
  }
  const std::size_t n = rows.size();
  std::vector<FrequentItemset> out;
  std::set<Itemset> current;
  for (const std::uint32_t item : observed_items(rows)) {
    const Itemset single{item};
    const std::uint64_t count = brute_force_support(single, rows);
    if (meets_threshold(count, n, minsup)) {
      out.push_back({single, count});
      current.insert(single);
    }
  }
  while (!current.empty()) {
    std::set<Itemset> next;
    for (auto first = current.begin(); first != current.end(); ++first) {
      for (auto second = std::next(first); second != current.end(); ++second) {
        if (!std::equal(first->begin(), first->end() - 1, second->begin(),
                        second->end() - 1)) {
          break;  // lexicographic set order keeps shared prefixes adjacent
        }
        Itemset candidate = *first;
        candidate.push_back(second->back());
        bool prune = false;
        for (std::size_t drop = 0; drop + 2 < candidate.size() && !prune;
             ++drop) {
          Itemset subset;
          subset.reserve(candidate.size() - 1);
          for (std::size_t p = 0; p < candidate.size(); ++p) {
            if (p != drop) {
              subset.push_back(candidate[p]);
            }
          }
          prune = !current.contains(subset);
        }
        if (prune) {
          continue;
        }
        const std::uint64_t count = brute_force_support(candidate, rows);
        if (meets_threshold(count, n, minsup)) {
          out.push_back({candidate, count});
          next.insert(std::move(candidate));
        }
      }
    }
    current = std::move(next);
  }
  std::sort(out.begin(), out.end(), frequent_order);
  return out;
}

std::vector<FrequentItemset> enumerate_frequent(const std::vector<Row>& rows,
                                                const Fraction& minsup) {
  require_fraction(minsup, "minsup");
  if (rows.empty()) {
    throw EmptyInputError("enumeration needs at least one row");
  }
  const std::vector<std::uint32_t> universe = observed_items(rows);
  if (universe.size() > 20) {
    throw UsageError("exhaustive enumeration is capped at 20 observed items");
  }
  // Rows as masks over positions in the observed universe.
  std::vector<std::uint32_t> row_masks;
  row_masks.reserve(rows.size());
  for (const Row& row : rows) {
    std::uint32_t mask = 0;
    for (const std::uint32_t item : row) {
      const auto at = std::lower_bound(universe.begin(), universe.end(), item);
      mask |= 1u << static_cast<std::uint32_t>(at - universe.begin());
    }
    row_masks.push_back(mask);
  }
  std::vector<FrequentItemset> out;
  const std::uint32_t limit = 1u << universe.size();
  for (std::uint32_t subset = 1; subset < limit; ++subset) {
    std::uint64_t count = 0;
    for (const std::uint32_t mask : row_masks) {
      if ((mask & subset) == subset) {
        ++count;
      }
    }
    if (!meets_threshold(count, rows.size(), minsup)) {
      continue;
    }
    Itemset items;
    for (std::uint32_t p = 0; p < universe.size(); ++p) {
      if (subset & (1u << p)) {
        items.push_back(universe[p]);
      }
    }
    out.push_back({std::move(items), count});
  }
  std::sort(out.begin(), out.end(), frequent_order);
  return out;
}

MiningResult mine(const std::vector<Row>& rows, const ItemCatalog& catalog,
                  const MiningConfig& config) {
  require_fraction(config.minsup, "minsup");
  require_fraction(config.minconf, "minconf");
  if (rows.empty()) {
    throw EmptyInputError("mining needs at least one row");
  }
  const std::size_t n = rows.size();
  const std::vector<std::string> decisions =
      resolve_decision_attributes(catalog, config);

  std::map<Itemset, std::uint64_t> frequents;
  std::map<std::tuple<std::uint32_t, std::size_t, Itemset>, AssociationRule>
      rules;

  for (const std::string& attribute : decisions) {
    std::vector<std::uint32_t> condition_items;
    for (std::uint32_t i = 0; i < catalog.size(); ++i) {
      if (catalog.item(i).attribute != attribute) {
        condition_items.push_back(i);
      }
    }
    std::vector<Row> projected;
    projected.reserve(n);
    for (const Row& row : rows) {
      Row kept;
      for (const std::uint32_t item : row) {
        if (std::binary_search(condition_items.begin(), condition_items.end(),
                               item)) {
          kept.push_back(item);
        }
      }
      projected.push_back(std::move(kept));
    }

    std::map<Itemset, std::uint64_t> round;
    std::vector<FrequentItemset> condition_frequents;
    for (auto& f : apriori_reference(projected, config.minsup)) {
      if (config.max_antecedent && f.items.size() > *config.max_antecedent) {
        continue;
      }
      round.emplace(f.items, f.count);
      condition_frequents.push_back(std::move(f));
    }

    std::vector<FrequentItemset> decision_singles;
    for (const std::uint32_t d : catalog.items_of(attribute)) {
      const std::uint64_t count = brute_force_support({d}, rows);
      if (meets_threshold(count, n, config.minsup)) {
        round.emplace(Itemset{d}, count);
        decision_singles.push_back({{d}, count});
      }
    }

    for (const auto& f : condition_frequents) {
      for (const auto& d : decision_singles) {
        const Itemset joined = sorted_union(f.items, d.items[0]);
        const std::uint64_t count = brute_force_support(joined, rows);
        if (!meets_threshold(count, n, config.minsup)) {
          continue;
        }
        round.emplace(joined, count);
        if (meets_threshold(count, f.count, config.minconf)) {
          AssociationRule rule{f.items, d.items[0], count, f.count};
          std::tuple<std::uint32_t, std::size_t, Itemset> key{
              rule.consequent, rule.antecedent.size(), rule.antecedent};
          const auto [it, fresh] = rules.emplace(std::move(key), rule);
          if (!fresh && !(it->second == rule)) {
            throw InternalError("rounds disagree on a rule");
          }
        }
      }
    }

    for (const auto& [items, count] : round) {
      const auto [it, fresh] = frequents.emplace(items, count);
      if (!fresh && it->second != count) {
        throw InternalError("rounds disagree on a support count");
      }
    }
  }

  MiningResult result;
  result.frequents.reserve(frequents.size());
  for (const auto& [items, count] : frequents) {
    result.frequents.push_back({items, count});
  }
  std::sort(result.frequents.begin(), result.frequents.end(), frequent_order);
  result.rules.reserve(rules.size());
  for (auto& [key, rule] : rules) {
    result.rules.push_back(std::move(rule));
  }
  return result;
}

std::vector<AssociationRule> brute_force_rules(const std::vector<Row>& rows,
                                               const ItemCatalog& catalog,
                                               const MiningConfig& config) {
  require_fraction(config.minsup, "minsup");
  require_fraction(config.minconf, "minconf");
  if (rows.empty()) {
    throw EmptyInputError("rule search needs at least one row");
  }
  const std::size_t n = rows.size();
  const std::vector<std::string> decisions =
      resolve_decision_attributes(catalog, config);

  std::map<std::tuple<std::uint32_t, std::size_t, Itemset>, AssociationRule>
      rules;

  for (const std::string& attribute : decisions) {
    std::vector<std::uint32_t> condition_items;
    for (std::uint32_t i = 0; i < catalog.size(); ++i) {
      if (catalog.item(i).attribute != attribute) {
        condition_items.push_back(i);
      }
    }
    if (condition_items.size() > 24) {
      throw UsageError("exhaustive rule search is capped at 24 condition items");
    }
    const std::vector<std::uint32_t>& decision_items =
        catalog.items_of(attribute);

    // Rows as masks over condition positions plus a per-decision-item flag.
    const std::uint32_t width = static_cast<std::uint32_t>(condition_items.size());
    std::vector<std::uint32_t> cond_masks(rows.size(), 0);
    std::vector<std::vector<bool>> has_decision(
        decision_items.size(), std::vector<bool>(rows.size(), false));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const std::uint32_t item : rows[r]) {
        const auto at = std::lower_bound(condition_items.begin(),
                                         condition_items.end(), item);
        if (at != condition_items.end() && *at == item) {
          cond_masks[r] |=
              1u << static_cast<std::uint32_t>(at - condition_items.begin());
        }
      }
      for (std::size_t d = 0; d < decision_items.size(); ++d) {
        has_decision[d][r] = std::binary_search(rows[r].begin(), rows[r].end(),
                                                decision_items[d]);
      }
    }

    const std::uint64_t limit = std::uint64_t{1} << width;
    for (std::uint64_t subset = 1; subset < limit; ++subset) {
      const auto size = static_cast<std::size_t>(
          std::popcount(static_cast<std::uint64_t>(subset)));
      if (config.max_antecedent && size > *config.max_antecedent) {
        continue;
      }
      std::uint64_t antecedent_count = 0;
      std::vector<std::uint64_t> joint(decision_items.size(), 0);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if ((cond_masks[r] & subset) != subset) {
          continue;
        }
        ++antecedent_count;
        for (std::size_t d = 0; d < decision_items.size(); ++d) {
          if (has_decision[d][r]) {
            ++joint[d];
          }
        }
      }
      if (antecedent_count == 0) {
        continue;
      }
      for (std::size_t d = 0; d < decision_items.size(); ++d) {
        if (!meets_threshold(joint[d], n, config.minsup) ||
            !meets_threshold(joint[d], antecedent_count, config.minconf)) {
          continue;
        }
        Itemset antecedent;
        for (std::uint32_t p = 0; p < width; ++p) {
          if (subset & (std::uint64_t{1} << p)) {
            antecedent.push_back(condition_items[p]);
          }
        }
        AssociationRule rule{std::move(antecedent), decision_items[d], joint[d],
                             antecedent_count};
        std::tuple<std::uint32_t, std::size_t, Itemset> key{
            rule.consequent, rule.antecedent.size(), rule.antecedent};
        const auto [it, fresh] = rules.emplace(std::move(key), rule);
        if (!fresh && !(it->second == rule)) {
          throw InternalError("rounds disagree on a rule");
        }
      }
    }
  }

  std::vector<AssociationRule> out;
  out.reserve(rules.size());
  for (auto& [key, rule] : rules) {
    out.push_back(std::move(rule));
  }
  return out;
}

}  // namespace ptmine::oracle
