#include <doctest.h>

#include <algorithm>
#include <random>

#include "ptmine/errors.hpp"
#include "ptmine/miner.hpp"
#include "ptmine/oracle.hpp"

#include "helpers.hpp"

using namespace ptmine;

namespace {

MiningConfig config_for(const char* minsup, const char* minconf,
                        DecisionMode mode,
                        std::vector<std::string> decisions = {}) {
  MiningConfig config;
  config.minsup = Fraction::parse(minsup);
  config.minconf = Fraction::parse(minconf);
  config.mode = mode;
  config.decision_attributes = std::move(decisions);
  return config;
}

}  // namespace

TEST_CASE("scan support agrees with hand counts on the worked example") {
  const auto rows = testutil::oracle_rows(testutil::demo_rows());
  CHECK(oracle::brute_force_support({1, 3}, rows) == 3);
  CHECK(oracle::brute_force_support({1, 3, 4}, rows) == 2);
  CHECK(oracle::brute_force_support({0, 6}, rows) == 0);
  CHECK(oracle::brute_force_support({2}, rows) == 1);
  CHECK(oracle::brute_force_support({0, 1, 2, 3, 4, 5}, rows) == 1);
  CHECK_THROWS_AS((void)oracle::brute_force_support({}, rows), UsageError);
  CHECK_THROWS_AS((void)oracle::brute_force_support({3, 1}, rows), UsageError);
}

TEST_CASE("scan support equals the tree count on random columns") {
  std::mt19937 rng(431);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testutil::random_instance(rng);
    const auto rows = testutil::oracle_rows(inst.rows);
    const auto trees =
        testutil::trees_from_rows(inst.rows, pad_length(inst.n_rows));
    // Random strictly increasing itemsets.
    for (int q = 0; q < 20; ++q) {
      Itemset items;
      for (std::uint32_t i = 0; i < inst.n_items; ++i) {
        if (rng() % 3 == 0) {
          items.push_back(i);
        }
      }
      if (items.empty()) {
        items.push_back(rng() % inst.n_items);
      }
      CHECK(oracle::brute_force_support(items, rows) ==
            support_count(items, trees));
    }
  }
}

TEST_CASE("level-wise reference equals exhaustive enumeration") {
  const auto demo = testutil::oracle_rows(testutil::demo_rows());
  // Golden at one half: four singletons and one pair survive.
  const auto at_half = oracle::apriori_reference(demo, Fraction::parse("50%"));
  const std::vector<FrequentItemset> expected = {
      {{1}, 6}, {{3}, 5}, {{4}, 5}, {{6}, 4}, {{1, 4}, 4},
  };
  CHECK(at_half == expected);
  CHECK(oracle::enumerate_frequent(demo, Fraction::parse("50%")) == expected);

  std::mt19937 rng(977);
  const char* thresholds[] = {"5%", "10%", "25%", "50%", "90%"};
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = testutil::random_instance(rng);
    const auto rows = testutil::oracle_rows(inst.rows);
    const Fraction minsup = Fraction::parse(thresholds[trial % 5]);
    CHECK(oracle::apriori_reference(rows, minsup) ==
          oracle::enumerate_frequent(rows, minsup));
  }
}

TEST_CASE("reference entry points reject empty input") {
  const std::vector<oracle::Row> none;
  const ItemCatalog catalog = testutil::binary_catalog(3);
  const MiningConfig config = config_for("10%", "30%", DecisionMode::Free);
  CHECK_THROWS_AS((void)oracle::apriori_reference(none, Fraction{1, 2}),
                  EmptyInputError);
  CHECK_THROWS_AS((void)oracle::enumerate_frequent(none, Fraction{1, 2}),
                  EmptyInputError);
  CHECK_THROWS_AS((void)oracle::mine(none, catalog, config), EmptyInputError);
  CHECK_THROWS_AS((void)oracle::brute_force_rules(none, catalog, config),
                  EmptyInputError);
}

TEST_CASE("exhaustive searches refuse oversized universes") {
  oracle::Row wide;
  for (std::uint32_t i = 0; i < 21; ++i) {
    wide.push_back(i);
  }
  CHECK_THROWS_AS(
      (void)oracle::enumerate_frequent({wide}, Fraction{1, 2}), UsageError);

  // 26 attributes, one decision: 25 condition items crosses the rule cap.
  const ItemCatalog catalog = testutil::binary_catalog(26, {"Z"});
  const MiningConfig config =
      config_for("10%", "30%", DecisionMode::Fixed, {"Z"});
  CHECK_THROWS_AS((void)oracle::brute_force_rules({{0, 25}}, catalog, config),
                  UsageError);
}

TEST_CASE("scan miner and tree miner agree on the worked example") {
  const auto rows = testutil::oracle_rows(testutil::demo_rows());
  const auto trees = testutil::trees_from_rows(testutil::demo_rows(), 16);
  const ItemCatalog catalog = testutil::binary_catalog(7, {"G"});
  const char* cases[][2] = {
      {"10%", "30%"}, {"25%", "75%"}, {"50%", "50%"}, {"1%", "1%"},
  };
  for (const auto& c : cases) {
    for (const DecisionMode mode : {DecisionMode::Fixed, DecisionMode::Free}) {
      MiningConfig config = config_for(c[0], c[1], mode);
      if (mode == DecisionMode::Fixed) {
        config.decision_attributes = {"G"};
      }
      const MiningResult scan = oracle::mine(rows, catalog, config);
      const MiningResult tree = mine_bfarm(trees, rows.size(), catalog, config);
      CHECK(scan == tree);
      // Rules from the exhaustive search match the level-wise ones exactly.
      CHECK(oracle::brute_force_rules(rows, catalog, config) == scan.rules);
    }
  }
}

TEST_CASE("row order never changes any result") {
  std::mt19937 rng(1299);
  for (int trial = 0; trial < 8; ++trial) {
    auto inst = testutil::random_instance(rng, 8, 40);
    const ItemCatalog catalog = testutil::binary_catalog(inst.n_items);
    const MiningConfig config = config_for("10%", "30%", DecisionMode::Free);
    const MiningResult base =
        oracle::mine(testutil::oracle_rows(inst.rows), catalog, config);
    std::shuffle(inst.rows.begin(), inst.rows.end(), rng);
    CHECK(oracle::mine(testutil::oracle_rows(inst.rows), catalog, config) ==
          base);
    const auto trees =
        testutil::trees_from_rows(inst.rows, pad_length(inst.n_rows));
    CHECK(mine_bfarm(trees, inst.n_rows, catalog, config) == base);
  }
}

TEST_CASE("exhaustive rules subsume the level-wise search on randoms") {
  std::mt19937 rng(572);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testutil::random_instance(rng, 8, 32);
    const auto rows = testutil::oracle_rows(inst.rows);
    const ItemCatalog catalog = testutil::binary_catalog(inst.n_items);
    MiningConfig config = config_for("10%", "30%", DecisionMode::Fixed, {"A"});
    if (trial % 2 == 1) {
      config.mode = DecisionMode::Free;
      config.decision_attributes.clear();
    }
    const MiningResult mined = oracle::mine(rows, catalog, config);
    CHECK(oracle::brute_force_rules(rows, catalog, config) == mined.rules);
  }
}

TEST_CASE("rows with repeated or unknown items still count set-wise") {
  // brute_force_support treats a row as a set; duplicate items in a row must
  // not double-count, and items beyond the queried ones are ignored.
  const std::vector<oracle::Row> rows = {{0, 1, 1, 5}, {1}, {0, 1}};
  CHECK(oracle::brute_force_support({1}, rows) == 3);
  CHECK(oracle::brute_force_support({0, 1}, rows) == 2);
  CHECK(oracle::brute_force_support({5}, rows) == 1);
}
