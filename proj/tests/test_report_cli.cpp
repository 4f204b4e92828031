#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "ptmine/dataset.hpp"
#include "ptmine/errors.hpp"
#include "ptmine/pipeline.hpp"
#include "ptmine/report.hpp"

using namespace ptmine;
using ordered_json = nlohmann::ordered_json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    char name[64];
    std::snprintf(name, sizeof(name), "ptmine-cli-%016llx",
                  static_cast<unsigned long long>(rng()));
    path = fs::temp_directory_path() / name;
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

RunOptions demo_options(const TempDir& tmp) {
  RunOptions options;
  options.input = "demo";
  options.data_dir = tmp.str();
  options.minsup = "10%";
  options.minconf = "30%";
  return options;
}

// ---- subprocess plumbing ------------------------------------------------

struct CommandResult {
  int code = -1;
  std::string output;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Path of the CLI under test, injected by CTest. Empty when the tests run
// without it; CLI cases then skip with a message instead of failing.
std::string ptmine_bin() {
  const char* env = std::getenv("PTMINE_BIN");
  return env == nullptr ? std::string() : std::string(env);
}

#define REQUIRE_CLI()                                    \
  const std::string bin = ptmine_bin();                  \
  if (bin.empty()) {                                     \
    MESSAGE("PTMINE_BIN not set; skipping CLI test");    \
    return;                                              \
  }                                                      \
  const std::string exe = "\"" + bin + "\""

}  // namespace

// ---- in-process pipeline and report tests -------------------------------

TEST_CASE("run_mine on the worked example fills a complete report") {
  const TempDir tmp;
  generate_dataset("demo", tmp.str());
  RunOptions options = demo_options(tmp);
  options.algo = "both";
  const RunReport report = run_mine(options);

  CHECK(report.dataset == "demo");
  CHECK(report.n_rows == 8);
  CHECK(report.n_items == 7);
  CHECK(report.padded_length == 16);
  CHECK(report.minsup == Fraction{1, 10});
  CHECK(report.minconf == Fraction{3, 10});
  CHECK(report.mode == "fixed");
  CHECK(report.decision_attributes == std::vector<std::string>{"G"});
  REQUIRE(report.item_labels.size() == 7);
  CHECK(report.item_labels[0] == "A=yes");
  CHECK(report.item_labels[6] == "G=yes");

  REQUIRE(report.algos.size() == 2);
  const AlgoRun& tree = report.algos[0];
  const AlgoRun& scan = report.algos[1];
  CHECK(tree.name == "bfarm");
  CHECK(scan.name == "apriori");
  CHECK(tree.result.rules.size() == 7);
  CHECK(tree.result == scan.result);
  REQUIRE(report.outputs_equal.has_value());
  CHECK(*report.outputs_equal);

  // The tree miner reads the bitmap while building and never afterwards;
  // the scan miner has no build phase and reads during mining.
  CHECK(tree.bitmap_reads_build > 0);
  CHECK(tree.bitmap_reads_mine == 0);
  CHECK(scan.bitmap_reads_build == 0);
  CHECK(scan.bitmap_reads_mine > 0);
}

TEST_CASE("run_mine validates its options") {
  const TempDir tmp;
  generate_dataset("demo", tmp.str());
  RunOptions options = demo_options(tmp);

  options.algo = "quantum";
  CHECK_THROWS_AS((void)run_mine(options), UsageError);

  options.algo = "apriori";
  options.store_dir = tmp.str() + "/store";
  CHECK_THROWS_AS((void)run_mine(options), UsageError);

  options = demo_options(tmp);
  options.mode = "sideways";
  CHECK_THROWS_AS((void)run_mine(options), UsageError);

  options = demo_options(tmp);
  options.mode = "free";
  options.decisions = {"G"};
  CHECK_THROWS_AS((void)run_mine(options), UsageError);

  // Fixed mode with no decision anywhere: inferred schemas mark none.
  const fs::path csv = tmp.path / "toy.csv";
  write_file(csv, "x,y\na,b\nc,d\n");
  options = demo_options(tmp);
  options.input = csv.string();
  try {
    (void)run_mine(options);
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("--decision") != std::string::npos);
  }
}

TEST_CASE("mining through a store roundtrip changes nothing") {
  const TempDir tmp;
  generate_dataset("demo", tmp.str());
  RunOptions options = demo_options(tmp);
  const RunReport direct = run_mine(options);

  options.store_dir = tmp.str() + "/store";
  const RunReport stored = run_mine(options);
  CHECK(fs::exists(fs::path(*options.store_dir) / "manifest.json"));
  CHECK(fs::exists(fs::path(*options.store_dir) / "item_00000.pt"));
  REQUIRE(stored.store_directory.has_value());
  CHECK(stored.algos[0].result == direct.algos[0].result);
  CHECK(stored.algos[0].bitmap_reads_mine == 0);
}

TEST_CASE("run_build_store reports the trees it wrote") {
  const TempDir tmp;
  generate_dataset("demo", tmp.str());
  RunOptions options = demo_options(tmp);
  CHECK_THROWS_AS((void)run_build_store(options), UsageError);  // no --store

  options.store_dir = tmp.str() + "/store";
  const StoreBuildInfo info = run_build_store(options);
  CHECK(info.dataset == "demo");
  CHECK(info.n_rows == 8);
  CHECK(info.n_items == 7);
  CHECK(info.padded_length == 16);
  CHECK(info.root_counts ==
        std::vector<std::uint64_t>{2, 6, 1, 5, 5, 3, 4});
  CHECK(fs::exists(fs::path(*options.store_dir) / "manifest.json"));

  const ordered_json doc = ordered_json::parse(store_info_to_json(info, false));
  CHECK(doc["rows"] == 8);
  CHECK(doc["trees"].size() == 7);
  CHECK(doc["trees"][1]["root_count"] == 6);
  CHECK(doc.contains("build_seconds") == false);
  CHECK(store_info_to_text(info).find("wrote 7 trees") != std::string::npos);
}

TEST_CASE("the JSON report is byte-deterministic without timings") {
  const TempDir tmp;
  generate_dataset("demo", tmp.str());
  RunOptions options = demo_options(tmp);
  options.algo = "both";
  const std::string first = report_to_json(run_mine(options), false, true);
  const std::string second = report_to_json(run_mine(options), false, true);
  CHECK(first == second);

  options.threads = 3;
  const std::string threaded = report_to_json(run_mine(options), false, true);
  // Only the echoed thread count differs between the two documents.
  ordered_json a = ordered_json::parse(first);
  ordered_json b = ordered_json::parse(threaded);
  CHECK(a["threads"] == 1);
  CHECK(b["threads"] == 3);
  a["threads"] = 0;
  b["threads"] = 0;
  CHECK(a == b);

  // Timings make the document non-deterministic but parseable.
  const std::string timed = report_to_json(run_mine(options), true, false);
  const ordered_json t = ordered_json::parse(timed);
  CHECK(t["algorithms"][0].contains("build_seconds"));
}

TEST_CASE("the JSON report carries counts, fractions, and itemsets") {
  const TempDir tmp;
  generate_dataset("demo", tmp.str());
  RunOptions options = demo_options(tmp);
  const ordered_json doc =
      ordered_json::parse(report_to_json(run_mine(options), false, true));

  CHECK(doc["dataset"] == "demo");
  CHECK(doc["rows"] == 8);
  CHECK(doc["items"] == 7);
  CHECK(doc["padded_length"] == 16);
  CHECK(doc["minsup"]["text"] == "10%");
  CHECK(doc["minsup"]["fraction"] == "1/10");
  CHECK(doc["minconf"]["fraction"] == "3/10");
  CHECK(doc["mode"] == "fixed");
  CHECK(doc["decision_attributes"][0] == "G");
  REQUIRE(doc["algorithms"].size() == 1);
  const auto& algo = doc["algorithms"][0];
  CHECK(algo["name"] == "bfarm");
  CHECK(algo["bitmap_reads"]["mine"] == 0);
  CHECK(algo["rule_count"] == 7);
  CHECK(algo["frequent_count"] == algo["frequent_itemsets"].size());
  CHECK(algo.contains("build_seconds") == false);

  // Every rule row references items by label and carries exact fractions.
  bool found = false;
  for (const auto& rule : algo["rules"]) {
    if (rule["antecedent"].size() == 1 && rule["antecedent"][0] == "D=yes") {
      found = true;
      CHECK(rule["consequent"] == "G=yes");
      CHECK(rule["count"] == 3);
      CHECK(rule["antecedent_count"] == 5);
      CHECK(rule["support"] == "3/8");
      CHECK(rule["confidence"] == "3/5");
      CHECK(rule["confidence_value"].get<double>() == doctest::Approx(0.6));
    }
  }
  CHECK(found);
}

TEST_CASE("the CSV report has one line per rule with joined antecedents") {
  const TempDir tmp;
  generate_dataset("demo", tmp.str());
  RunOptions options = demo_options(tmp);
  const RunReport report = run_mine(options);
  const std::string csv = report_to_csv(report);

  REQUIRE(csv.rfind("algo,antecedent,consequent,count,antecedent_count,"
                    "support,confidence\n",
                    0) == 0);
  std::size_t lines = 0;
  for (const char c : csv) {
    lines += c == '\n' ? 1 : 0;
  }
  CHECK(lines == 1 + report.algos[0].result.rules.size());
  CHECK(csv.find("bfarm,B=yes|D=yes,G=yes,1,3,") != std::string::npos);
}

TEST_CASE("the text report names the dataset and lists rules") {
  const TempDir tmp;
  generate_dataset("demo", tmp.str());
  RunOptions options = demo_options(tmp);
  const RunReport report = run_mine(options);
  const std::string text = report_to_text(report, false);
  CHECK(text.find("demo") != std::string::npos);
  CHECK(text.find("rules (bfarm):") != std::string::npos);
  CHECK(text.find("D=yes") != std::string::npos);

  // A run with no rules still renders.
  options.minconf = "100%";
  const std::string empty = report_to_text(run_mine(options), false);
  CHECK(empty.find("(none)") != std::string::npos);
}

// ---- CLI subprocess tests ------------------------------------------------

TEST_CASE("cli: usage problems exit with code 2") {
  REQUIRE_CLI();
  CHECK(run_command(exe + " --help 2>&1").code == 0);
  CHECK(run_command(exe + " 2>&1").code == 2);                  // no subcommand
  CHECK(run_command(exe + " mine 2>&1").code == 2);             // no --input
  CHECK(run_command(exe + " mine --nope 2>&1").code == 2);      // unknown flag
  CHECK(run_command(exe + " frobnicate 2>&1").code == 2);       // bad verb
  const TempDir tmp;
  run_command(exe + " gen-data --name demo --data-dir " + tmp.str());
  const std::string base =
      exe + " mine --input demo --data-dir " + tmp.str();
  CHECK(run_command(base + " --mode sideways 2>&1").code == 2);
  CHECK(run_command(base + " --format yaml 2>&1").code == 2);
  CHECK(run_command(base + " --algo quantum 2>&1").code == 2);
  CHECK(run_command(base + " --delimiter ,, 2>&1").code == 2);
  CHECK(run_command(base + " --mode free --decision G 2>&1").code == 2);
}

TEST_CASE("cli: each error family keeps its documented exit code") {
  REQUIRE_CLI();
  const TempDir tmp;

  // 3: input that neither names a bundle nor exists.
  const CommandResult io =
      run_command(exe + " mine --input " + tmp.str() + "/absent.csv 2>&1");
  CHECK(io.code == 3);
  CHECK(io.output.find("error:") != std::string::npos);

  // 4: structurally broken input file.
  write_file(tmp.path / "ragged.csv", "a,b\n1,2\n3\n");
  CHECK(run_command(exe + " mine --input " + tmp.str() +
                    "/ragged.csv --mode free 2>&1")
            .code == 4);

  // 4: a header with no data rows.
  write_file(tmp.path / "empty.csv", "a,b\n");
  CHECK(run_command(exe + " mine --input " + tmp.str() +
                    "/empty.csv --mode free 2>&1")
            .code == 4);

  // 5: thresholds outside (0, 1].
  run_command(exe + " gen-data --name demo --data-dir " + tmp.str());
  const std::string base =
      exe + " mine --input demo --data-dir " + tmp.str();
  CHECK(run_command(base + " --minsup 150% 2>&1").code == 5);
  CHECK(run_command(base + " --minsup 0 2>&1").code == 5);
  CHECK(run_command(base + " --minconf elephants 2>&1").code == 5);

  // 6: a bundled file that fails its manifest check.
  write_file(tmp.path / "demo.csv", "A,B,C,D,E,F,G\nyes,no,no,no,no,no,no\n");
  const CommandResult manifest = run_command(base + " 2>&1");
  CHECK(manifest.code == 6);
  CHECK(manifest.output.find("must have 8 rows") != std::string::npos);
}

TEST_CASE("cli: gen-data, mine, and compare run end to end") {
  REQUIRE_CLI();
  const TempDir tmp;
  const CommandResult gen =
      run_command(exe + " gen-data --name all --data-dir " + tmp.str());
  CHECK(gen.code == 0);
  for (const char* f : {"demo.csv", "car.data", "mushroom.data", "adult.data"}) {
    CHECK(fs::exists(tmp.path / f));
    CHECK(gen.output.find(f) != std::string::npos);
  }

  const std::string base = exe + " mine --input demo --data-dir " + tmp.str() +
                           " --minsup 10% --minconf 30%";
  const CommandResult mined =
      run_command(base + " --format json 2>/dev/null");
  REQUIRE(mined.code == 0);
  const ordered_json doc = ordered_json::parse(mined.output);
  CHECK(doc["dataset"] == "demo");
  CHECK(doc["algorithms"][0]["rule_count"] == 7);

  const CommandResult compared = run_command(
      exe + " compare --input demo --data-dir " + tmp.str() +
      " --minsup 10% --minconf 30% --format json 2>/dev/null");
  CHECK(compared.code == 0);
  const ordered_json cmp = ordered_json::parse(compared.output);
  CHECK(cmp["outputs_equal"] == true);
  CHECK(cmp["algorithms"].size() == 2);
}

TEST_CASE("cli: store flows write and reuse tree files") {
  REQUIRE_CLI();
  const TempDir tmp;
  run_command(exe + " gen-data --name demo --data-dir " + tmp.str());

  const CommandResult built = run_command(
      exe + " build-store --input demo --data-dir " + tmp.str() + " --store " +
      tmp.str() + "/store --format json 2>/dev/null");
  REQUIRE(built.code == 0);
  CHECK(fs::exists(tmp.path / "store" / "manifest.json"));
  const ordered_json info = ordered_json::parse(built.output);
  CHECK(info["trees"].size() == 7);

  const CommandResult mined = run_command(
      exe + " mine --input demo --data-dir " + tmp.str() + " --minsup 10%" +
      " --minconf 30% --store " + tmp.str() + "/store2 --format json 2>/dev/null");
  REQUIRE(mined.code == 0);
  const ordered_json doc = ordered_json::parse(mined.output);
  CHECK(doc["store"] == tmp.str() + "/store2");
  CHECK(doc["algorithms"][0]["bitmap_reads"]["mine"] == 0);
}

TEST_CASE("cli: stdout is byte-identical across reruns and thread counts") {
  REQUIRE_CLI();
  const TempDir tmp;
  run_command(exe + " gen-data --name demo --data-dir " + tmp.str());
  const std::string base = exe + " mine --input demo --data-dir " + tmp.str() +
                           " --minsup 10% --minconf 30% --format json" +
                           " --itemsets 2>/dev/null";
  const CommandResult first = run_command(base);
  const CommandResult again = run_command(base);
  REQUIRE(first.code == 0);
  CHECK(first.output == again.output);

  // Thread count shows up in one echoed field and nowhere else.
  const CommandResult threaded = run_command(
      exe + " mine --input demo --data-dir " + tmp.str() +
      " --minsup 10% --minconf 30% --format json --itemsets --threads 3"
      " 2>/dev/null");
  ordered_json a = ordered_json::parse(first.output);
  ordered_json b = ordered_json::parse(threaded.output);
  a["threads"] = 0;
  b["threads"] = 0;
  CHECK(a == b);
}

TEST_CASE("cli: --out writes the report to a file instead of stdout") {
  REQUIRE_CLI();
  const TempDir tmp;
  run_command(exe + " gen-data --name demo --data-dir " + tmp.str());
  const fs::path out = tmp.path / "report.csv";
  const CommandResult run = run_command(
      exe + " mine --input demo --data-dir " + tmp.str() +
      " --minsup 10% --minconf 30% --format csv --out " + out.string() +
      " 2>/dev/null");
  CHECK(run.code == 0);
  CHECK(run.output.empty());
  const std::string csv = read_file(out);
  CHECK(csv.rfind("algo,antecedent,consequent", 0) == 0);
  CHECK(csv.find("bfarm,") != std::string::npos);
}
