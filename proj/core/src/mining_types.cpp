#include "ptmine/mining_types.hpp"

#include <algorithm>
#include <set>

#include "ptmine/errors.hpp"

namespace ptmine {

std::vector<std::size_t> MiningResult::frequents_by_level() const {
  std::vector<std::size_t> levels;
  for (const auto& f : frequents) {
    if (f.items.size() > levels.size()) {
      levels.resize(f.items.size(), 0);
    }
    levels[f.items.size() - 1] += 1;
  }
  return levels;
}

bool frequent_order(const FrequentItemset& a, const FrequentItemset& b) {
  if (a.items.size() != b.items.size()) {
    return a.items.size() < b.items.size();
  }
  return a.items < b.items;
}

bool rule_order(const AssociationRule& a, const AssociationRule& b) {
  if (a.consequent != b.consequent) {
    return a.consequent < b.consequent;
  }
  if (a.antecedent.size() != b.antecedent.size()) {
    return a.antecedent.size() < b.antecedent.size();
  }
  return a.antecedent < b.antecedent;
}

std::vector<std::string> resolve_decision_attributes(const ItemCatalog& catalog,
                                                     const MiningConfig& config) {
  const auto& all = catalog.attributes();
  if (all.size() < 2) {
    throw UsageError(
        "mining needs at least two attributes so every round has condition items");
  }
  if (config.mode == DecisionMode::Free) {
    return all;
  }
  if (config.decision_attributes.empty()) {
    throw UsageError("fixed mode needs at least one decision attribute");
  }
  std::vector<std::string> decisions;
  std::set<std::string> seen;
  for (const auto& name : config.decision_attributes) {
    if (!catalog.has_attribute(name)) {
      throw UsageError("unknown decision attribute: " + name);
    }
    if (seen.insert(name).second) {
      decisions.push_back(name);
    }
  }
  return decisions;
}

std::string itemset_label(const ItemCatalog& catalog, const Itemset& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) {
      out += ", ";
    }
    out += catalog.label(items[i]);
  }
  return out;
}

}  // namespace ptmine
