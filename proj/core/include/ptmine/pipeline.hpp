#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptmine/report.hpp"

namespace ptmine {

// Options shared by the mine, compare, and build-store entry points.
// Strings hold user-facing spellings; parsing and validation happen inside
// the run functions so every caller gets the same errors.
struct RunOptions {
  std::string input;  // bundled dataset name or path to a delimited file
  std::optional<std::string> schema_path;
  std::string data_dir = "data";
  std::string minsup = "10%";
  std::string minconf = "75%";
  std::string mode = "fixed";  // "fixed" or "free"
  std::vector<std::string> decisions;
  std::string algo = "bfarm";  // "bfarm", "apriori", or "both"
  // With the tree miner: write the built trees here, then mine from the
  // loaded copy, proving the store round-trips.
  std::optional<std::string> store_dir;
  unsigned threads = 1;
  std::optional<std::size_t> max_antecedent;
  std::uint64_t cache_limit_bytes = std::uint64_t{256} << 20;
  char delimiter = ',';
  bool no_header = false;
};

// End-to-end run: resolve the dataset, discretize, execute the requested
// algorithm(s), compare outputs when both ran.
RunReport run_mine(const RunOptions& options);

struct StoreBuildInfo {
  std::string directory;
  std::string dataset;
  std::size_t n_rows = 0;
  std::size_t n_items = 0;
  std::size_t padded_length = 0;
  double build_seconds = 0.0;
  std::vector<std::string> item_labels;
  std::vector<std::uint64_t> root_counts;
};

// Builds one tree per item and writes the store directory.
StoreBuildInfo run_build_store(const RunOptions& options);

std::string store_info_to_json(const StoreBuildInfo& info, bool include_timings);
std::string store_info_to_text(const StoreBuildInfo& info);

}  // namespace ptmine
