#include "ptmine/pipeline.hpp"

#include <chrono>

#include <json.hpp>

#include "ptmine/dataset.hpp"
#include "ptmine/errors.hpp"
#include "ptmine/miner.hpp"
#include "ptmine/oracle.hpp"
#include "ptmine/ptree_store.hpp"

namespace ptmine {

namespace {

using ordered_json = nlohmann::ordered_json;
using steady = std::chrono::steady_clock;

double seconds_since(steady::time_point start) {
  return std::chrono::duration<double>(steady::now() - start).count();
}

MiningConfig make_config(const RunOptions& options, const TableSchema& schema) {
  MiningConfig config;
  config.minsup = Fraction::parse(options.minsup);
  config.minconf = Fraction::parse(options.minconf);
  config.threads = options.threads == 0 ? 1 : options.threads;
  config.max_antecedent = options.max_antecedent;
  config.cache_limit_bytes = options.cache_limit_bytes;
  if (options.mode == "fixed") {
    config.mode = DecisionMode::Fixed;
  } else if (options.mode == "free") {
    config.mode = DecisionMode::Free;
  } else {
    throw UsageError("unknown mode '" + options.mode +
                     "' (expected fixed or free)");
  }
  if (config.mode == DecisionMode::Fixed) {
    if (!options.decisions.empty()) {
      config.decision_attributes = options.decisions;
    } else {
      for (const auto& attr : schema.attributes) {
        if (attr.role == Role::Decision) {
          config.decision_attributes.push_back(attr.name);
        }
      }
      if (config.decision_attributes.empty()) {
        throw UsageError(
            "fixed mode needs a decision attribute: mark one in the schema "
            "or pass --decision");
      }
    }
  } else if (!options.decisions.empty()) {
    throw UsageError("--decision only applies to fixed mode");
  }
  return config;
}

std::vector<PTree> build_trees(const BitmapTable& table) {
  std::vector<PTree> trees;
  trees.reserve(table.n_items());
  for (std::size_t i = 0; i < table.n_items(); ++i) {
    trees.push_back(PTree::build(table.column(i)));
  }
  return trees;
}

AlgoRun run_tree_miner(const RunOptions& options, const BitmapTable& table,
                       const ItemCatalog& catalog, const MiningConfig& config) {
  AlgoRun run;
  run.name = "bfarm";

  const std::uint64_t reads_before_build = table.read_count();
  const auto build_start = steady::now();
  std::vector<PTree> trees = build_trees(table);
  run.build_seconds = seconds_since(build_start);
  run.bitmap_reads_build = table.read_count() - reads_before_build;

  if (options.store_dir) {
    write_store(*options.store_dir, trees, catalog, table.n_rows());
    TreeStore loaded = read_store(*options.store_dir);
    trees = std::move(loaded.trees);
  }

  const std::uint64_t reads_before_mine = table.read_count();
  const auto mine_start = steady::now();
  run.result = mine_bfarm(trees, table.n_rows(), catalog, config);
  run.mine_seconds = seconds_since(mine_start);
  run.bitmap_reads_mine = table.read_count() - reads_before_mine;
  return run;
}

AlgoRun run_scan_miner(const BitmapTable& table, const ItemCatalog& catalog,
                       const MiningConfig& config) {
  AlgoRun run;
  run.name = "apriori";
  // The scan miner has no separate build phase: row extraction is part of
  // mining and is counted as such.
  const std::uint64_t reads_before = table.read_count();
  const auto start = steady::now();
  const auto rows = table.rows_as_itemsets();
  run.result = oracle::mine(rows, catalog, config);
  run.mine_seconds = seconds_since(start);
  run.bitmap_reads_mine = table.read_count() - reads_before;
  return run;
}

}  // namespace

RunReport run_mine(const RunOptions& options) {
  if (options.algo != "bfarm" && options.algo != "apriori" &&
      options.algo != "both") {
    throw UsageError("unknown algorithm '" + options.algo +
                     "' (expected bfarm, apriori, or both)");
  }
  if (options.algo == "apriori" && options.store_dir) {
    throw UsageError("--store needs the tree miner (algo bfarm or both)");
  }

  ResolvedDataset dataset = fetch_or_validate_dataset(
      options.input, options.data_dir, options.schema_path, options.delimiter,
      options.no_header);
  const MiningConfig config = make_config(options, dataset.schema);
  DiscretizedTable disc = discretize(dataset.table, dataset.schema);

  RunReport report;
  report.dataset = dataset.display_name;
  report.n_rows = disc.bitmap.n_rows();
  report.n_items = disc.catalog.size();
  report.padded_length = disc.bitmap.padded_length();
  report.minsup_text = options.minsup;
  report.minconf_text = options.minconf;
  report.minsup = config.minsup;
  report.minconf = config.minconf;
  report.mode = config.mode == DecisionMode::Fixed ? "fixed" : "free";
  report.decision_attributes =
      resolve_decision_attributes(disc.catalog, config);
  report.threads = config.threads;
  report.store_directory = options.store_dir;
  report.item_labels.reserve(disc.catalog.size());
  for (std::uint32_t i = 0; i < disc.catalog.size(); ++i) {
    report.item_labels.push_back(disc.catalog.label(i));
  }

  if (options.algo == "bfarm" || options.algo == "both") {
    report.algos.push_back(
        run_tree_miner(options, disc.bitmap, disc.catalog, config));
  }
  if (options.algo == "apriori" || options.algo == "both") {
    report.algos.push_back(run_scan_miner(disc.bitmap, disc.catalog, config));
  }
  if (report.algos.size() > 1) {
    bool equal = true;
    for (std::size_t i = 1; i < report.algos.size(); ++i) {
      equal = equal && report.algos[i].result == report.algos[0].result;
    }
    report.outputs_equal = equal;
  }
  return report;
}

StoreBuildInfo run_build_store(const RunOptions& options) {
  if (!options.store_dir) {
    throw UsageError("build-store needs --store");
  }
  ResolvedDataset dataset = fetch_or_validate_dataset(
      options.input, options.data_dir, options.schema_path, options.delimiter,
      options.no_header);
  DiscretizedTable disc = discretize(dataset.table, dataset.schema);

  const auto start = steady::now();
  const std::vector<PTree> trees = build_trees(disc.bitmap);
  write_store(*options.store_dir, trees, disc.catalog, disc.bitmap.n_rows());

  StoreBuildInfo info;
  info.directory = *options.store_dir;
  info.dataset = dataset.display_name;
  info.n_rows = disc.bitmap.n_rows();
  info.n_items = disc.catalog.size();
  info.padded_length = disc.bitmap.padded_length();
  info.build_seconds = seconds_since(start);
  for (std::uint32_t i = 0; i < disc.catalog.size(); ++i) {
    info.item_labels.push_back(disc.catalog.label(i));
    info.root_counts.push_back(trees[i].root_count());
  }
  return info;
}

std::string store_info_to_json(const StoreBuildInfo& info,
                               bool include_timings) {
  ordered_json doc;
  doc["store"] = info.directory;
  doc["dataset"] = info.dataset;
  doc["rows"] = info.n_rows;
  doc["items"] = info.n_items;
  doc["padded_length"] = info.padded_length;
  if (include_timings) {
    doc["build_seconds"] = info.build_seconds;
  }
  doc["trees"] = ordered_json::array();
  for (std::size_t i = 0; i < info.item_labels.size(); ++i) {
    ordered_json t;
    t["item"] = info.item_labels[i];
    t["root_count"] = info.root_counts[i];
    doc["trees"].push_back(std::move(t));
  }
  return doc.dump(2) + "\n";
}

std::string store_info_to_text(const StoreBuildInfo& info) {
  std::string out = "wrote " + std::to_string(info.n_items) + " trees for " +
                    info.dataset + " (" + std::to_string(info.n_rows) +
                    " rows, padded to " + std::to_string(info.padded_length) +
                    ") into " + info.directory + "\n";
  for (std::size_t i = 0; i < info.item_labels.size(); ++i) {
    out += "  " + info.item_labels[i] + ": " +
           std::to_string(info.root_counts[i]) + "\n";
  }
  return out;
}

}  // namespace ptmine
