// Microbenchmarks for the hot paths: tree construction, AND + root count
// against row-scan support counting, and the end-to-end miners on the car
// dataset. Not part of the test suite; run ptmine_bench directly.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ptmine/dataset.hpp"
#include "ptmine/miner.hpp"
#include "ptmine/oracle.hpp"
#include "ptmine/ptree.hpp"
#include "ptmine/schema.hpp"

namespace {

using namespace ptmine;

std::string random_bits(std::mt19937& rng, std::size_t length,
                        unsigned percent_ones) {
  std::string bits(length, '0');
  for (auto& b : bits) {
    if (rng() % 100 < percent_ones) {
      b = '1';
    }
  }
  return bits;
}

// state.range(0) = column length, state.range(1) = percent of ones.
void BM_TreeBuild(benchmark::State& state) {
  std::mt19937 rng(42);
  const BitVector column = BitVector::from_string(random_bits(
      rng, static_cast<std::size_t>(state.range(0)),
      static_cast<unsigned>(state.range(1))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(PTree::build(column));
  }
}
BENCHMARK(BM_TreeBuild)
    ->Args({2048, 5})
    ->Args({2048, 50})
    ->Args({32768, 5})
    ->Args({32768, 50});

void BM_TreeAndCount(benchmark::State& state) {
  std::mt19937 rng(43);
  const std::size_t length = static_cast<std::size_t>(state.range(0));
  const unsigned density = static_cast<unsigned>(state.range(1));
  const PTree a = PTree::build(BitVector::from_string(
      random_bits(rng, length, density)));
  const PTree b = PTree::build(BitVector::from_string(
      random_bits(rng, length, density)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_and(a, b).root_count());
  }
}
BENCHMARK(BM_TreeAndCount)
    ->Args({2048, 5})
    ->Args({2048, 50})
    ->Args({32768, 5})
    ->Args({32768, 50});

// The scan-side equivalent of one AND + count: intersect two items over rows.
void BM_ScanSupport(benchmark::State& state) {
  std::mt19937 rng(44);
  const std::size_t n_rows = static_cast<std::size_t>(state.range(0));
  const unsigned density = static_cast<unsigned>(state.range(1));
  std::vector<oracle::Row> rows(n_rows);
  for (auto& row : rows) {
    for (std::uint32_t item = 0; item < 2; ++item) {
      if (rng() % 100 < density) {
        row.push_back(item);
      }
    }
  }
  const Itemset pair = {0, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::brute_force_support(pair, rows));
  }
}
BENCHMARK(BM_ScanSupport)
    ->Args({2048, 5})
    ->Args({2048, 50})
    ->Args({32768, 5})
    ->Args({32768, 50});

// BitmapTable carries an atomic read counter, so the discretized fixture is
// neither movable nor copyable; function-local statics keep it in place.
const DiscretizedTable& car_table() {
  static const DiscretizedTable disc = [] {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ptmine-bench-car";
    fs::create_directories(dir);
    generate_dataset("car", dir.string());
    const ResolvedDataset dataset =
        fetch_or_validate_dataset("car", dir.string(), std::nullopt);
    return discretize(dataset.table, dataset.schema);
  }();
  return disc;
}

const std::vector<PTree>& car_trees() {
  static const std::vector<PTree> trees = [] {
    std::vector<PTree> out;
    const BitmapTable& bitmap = car_table().bitmap;
    out.reserve(bitmap.n_items());
    for (std::size_t i = 0; i < bitmap.n_items(); ++i) {
      out.push_back(PTree::build(bitmap.column(i)));
    }
    return out;
  }();
  return trees;
}

const std::vector<oracle::Row>& car_rows() {
  static const std::vector<oracle::Row> rows =
      car_table().bitmap.rows_as_itemsets();
  return rows;
}

MiningConfig car_config() {
  MiningConfig config;
  config.minsup = Fraction::parse("10%");
  config.minconf = Fraction::parse("75%");
  config.mode = DecisionMode::Fixed;
  config.decision_attributes = {"class"};
  return config;
}

void BM_MineCarTrees(benchmark::State& state) {
  const MiningConfig config = car_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mine_bfarm(car_trees(), car_table().bitmap.n_rows(),
                                        car_table().catalog, config));
  }
}
BENCHMARK(BM_MineCarTrees)->Unit(benchmark::kMillisecond);

void BM_MineCarScan(benchmark::State& state) {
  const MiningConfig config = car_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::mine(car_rows(), car_table().catalog, config));
  }
}
BENCHMARK(BM_MineCarScan)->Unit(benchmark::kMillisecond);

void BM_CarTreeBuildAll(benchmark::State& state) {
  const BitmapTable& bitmap = car_table().bitmap;
  for (auto _ : state) {
    std::vector<PTree> trees;
    trees.reserve(bitmap.n_items());
    for (std::size_t i = 0; i < bitmap.n_items(); ++i) {
      trees.push_back(PTree::build(bitmap.column(i)));
    }
    benchmark::DoNotOptimize(trees);
  }
}
BENCHMARK(BM_CarTreeBuildAll)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
