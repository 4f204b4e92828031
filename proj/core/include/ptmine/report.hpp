#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptmine/fraction.hpp"
#include "ptmine/mining_types.hpp"

namespace ptmine {

// One algorithm execution inside a run. `bitmap_reads_*` count individual
// bitmap-cell accesses observed on the input table during the named phase;
// the tree miner's mine phase stays at zero because supports come from tree
// roots alone.
struct AlgoRun {
  std::string name;  // "bfarm" or "apriori"
  double build_seconds = 0.0;
  double mine_seconds = 0.0;
  std::uint64_t bitmap_reads_build = 0;
  std::uint64_t bitmap_reads_mine = 0;
  MiningResult result;
};

struct RunReport {
  std::string dataset;
  std::size_t n_rows = 0;
  std::size_t n_items = 0;
  std::size_t padded_length = 0;
  std::string minsup_text;
  std::string minconf_text;
  Fraction minsup;
  Fraction minconf;
  std::string mode;  // "fixed" or "free"
  std::vector<std::string> decision_attributes;  // resolved, in round order
  unsigned threads = 1;
  std::optional<std::string> store_directory;
  std::vector<std::string> item_labels;  // by item index
  std::vector<AlgoRun> algos;
  // Set when more than one algorithm ran: whether all produced identical
  // frequent itemsets and rules.
  std::optional<bool> outputs_equal;
};

// Renderers. JSON field order is fixed, so two runs with equal content
// produce byte-identical text when timings are excluded.
std::string report_to_json(const RunReport& report, bool include_timings,
                           bool include_itemsets);
// One CSV line per rule: algo, antecedent ('|'-joined labels), consequent,
// count, antecedent_count, support, confidence.
std::string report_to_csv(const RunReport& report);
std::string report_to_text(const RunReport& report, bool include_itemsets);

}  // namespace ptmine
