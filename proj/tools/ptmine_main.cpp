// Command-line front end: mine rules, compare the two miners, build tree
// stores, and regenerate the bundled datasets. Exit codes mirror the error
// taxonomy so scripts can tell input problems from data corruption:
//   0 success            1 compare found a mismatch
//   2 usage              3 I/O
//   4 malformed input    5 bad threshold
//   6 dataset manifest   7 tree container (format/corruption/integrity)
//   9 internal
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptmine/dataset.hpp"
#include "ptmine/errors.hpp"
#include "ptmine/pipeline.hpp"

namespace {

struct OutputOptions {
  std::string format = "text";  // text | json | csv
  std::optional<std::string> out_path;
  bool itemsets = false;
  bool timings = false;
};

void write_output(const OutputOptions& out, const std::string& text) {
  if (out.out_path) {
    std::ofstream f(*out.out_path, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw ptmine::IoError("cannot write output file: " + *out.out_path);
    }
    f << text;
  } else {
    std::cout << text;
  }
}

char parse_delimiter(const std::string& text) {
  if (text == "\\t" || text == "tab") {
    return '\t';
  }
  if (text.size() != 1) {
    throw ptmine::UsageError("--delimiter needs a single character (or 'tab')");
  }
  return text[0];
}

void add_input_flags(CLI::App* cmd, ptmine::RunOptions& run,
                     std::string& delimiter_text) {
  cmd->add_option("--input", run.input,
                  "bundled dataset name or path to a delimited file")
      ->required();
  cmd->add_option("--schema", run.schema_path,
                  "preprocessing schema JSON (default: bundled or inferred)");
  cmd->add_option("--data-dir", run.data_dir,
                  "directory holding bundled dataset files");
  cmd->add_option("--delimiter", delimiter_text, "cell separator (default ,)");
  cmd->add_flag("--no-header", run.no_header,
                "file has no header line (column names come from --schema)");
}

void add_mining_flags(CLI::App* cmd, ptmine::RunOptions& run,
                      std::uint64_t& cache_mb) {
  cmd->add_option("--minsup", run.minsup,
                  "minimum support: percentage, decimal, or a/b");
  cmd->add_option("--minconf", run.minconf,
                  "minimum confidence: percentage, decimal, or a/b");
  cmd->add_option("--mode", run.mode, "decision mode: fixed or free");
  cmd->add_option("--decision", run.decisions,
                  "decision attributes for fixed mode (comma separated)")
      ->delimiter(',');
  cmd->add_option("--threads", run.threads, "worker threads (default 1)");
  cmd->add_option("--max-antecedent", run.max_antecedent,
                  "cap on antecedent size");
  cmd->add_option("--cache-mb", cache_mb,
                  "intermediate-tree cache budget in MiB (0 disables)");
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "output format: text, json, or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", out.out_path, "write output to a file");
  cmd->add_flag("--itemsets", out.itemsets,
                "include frequent itemsets in the output");
  cmd->add_flag("--timings", out.timings,
                "include wall-clock timings (JSON output is otherwise "
                "byte-deterministic)");
}

std::string render_report(const ptmine::RunReport& report,
                          const OutputOptions& out) {
  if (out.format == "json") {
    return ptmine::report_to_json(report, out.timings, out.itemsets);
  }
  if (out.format == "csv") {
    return ptmine::report_to_csv(report);
  }
  return ptmine::report_to_text(report, out.itemsets);
}

int run_cli(CLI::App& app, int argc, char** argv) {
  app.require_subcommand(1);

  ptmine::RunOptions mine_run;
  std::string mine_delim = ",";
  std::uint64_t mine_cache_mb = 256;
  OutputOptions mine_out;
  CLI::App* mine = app.add_subcommand("mine", "mine association rules");
  add_input_flags(mine, mine_run, mine_delim);
  add_mining_flags(mine, mine_run, mine_cache_mb);
  mine->add_option("--algo", mine_run.algo,
                   "algorithm: bfarm, apriori, or both")
      ->check(CLI::IsMember({"bfarm", "apriori", "both"}));
  mine->add_option("--store", mine_run.store_dir,
                   "write trees here and mine from the loaded copy");
  add_output_flags(mine, mine_out);

  ptmine::RunOptions cmp_run;
  std::string cmp_delim = ",";
  std::uint64_t cmp_cache_mb = 256;
  OutputOptions cmp_out;
  CLI::App* cmp = app.add_subcommand(
      "compare", "run both miners and fail on any output difference");
  add_input_flags(cmp, cmp_run, cmp_delim);
  add_mining_flags(cmp, cmp_run, cmp_cache_mb);
  add_output_flags(cmp, cmp_out);

  ptmine::RunOptions store_run;
  std::string store_delim = ",";
  CLI::App* store = app.add_subcommand("build-store",
                                       "build one tree per item on disk");
  add_input_flags(store, store_run, store_delim);
  store->add_option("--store", store_run.store_dir, "target directory")
      ->required();
  OutputOptions store_out;
  add_output_flags(store, store_out);

  std::string gen_name;
  std::string gen_dir = "data";
  CLI::App* gen = app.add_subcommand("gen-data",
                                     "write a bundled dataset and its schema");
  gen->add_option("--name", gen_name,
                  "dataset name (demo, car, mushroom, adult, or all)")
      ->required();
  gen->add_option("--data-dir", gen_dir, "target directory");

  app.parse(argc, argv);

  if (mine->parsed()) {
    mine_run.delimiter = parse_delimiter(mine_delim);
    mine_run.cache_limit_bytes = mine_cache_mb << 20;
    const ptmine::RunReport report = ptmine::run_mine(mine_run);
    write_output(mine_out, render_report(report, mine_out));
    return 0;
  }
  if (cmp->parsed()) {
    cmp_run.delimiter = parse_delimiter(cmp_delim);
    cmp_run.cache_limit_bytes = cmp_cache_mb << 20;
    cmp_run.algo = "both";
    const ptmine::RunReport report = ptmine::run_mine(cmp_run);
    write_output(cmp_out, render_report(report, cmp_out));
    if (!report.outputs_equal.value_or(false)) {
      std::cerr << "compare: miner outputs differ\n";
      return 1;
    }
    return 0;
  }
  if (store->parsed()) {
    store_run.delimiter = parse_delimiter(store_delim);
    const ptmine::StoreBuildInfo info = ptmine::run_build_store(store_run);
    write_output(store_out,
                 store_out.format == "json"
                     ? ptmine::store_info_to_json(info, store_out.timings)
                     : ptmine::store_info_to_text(info));
    return 0;
  }
  if (gen->parsed()) {
    if (gen_name == "all") {
      for (const auto& d : ptmine::bundled_datasets()) {
        std::cout << ptmine::generate_dataset(d.name, gen_dir) << '\n';
      }
    } else {
      std::cout << ptmine::generate_dataset(gen_name, gen_dir) << '\n';
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree-based association rule miner"};
  try {
    return run_cli(app, argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ptmine::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ptmine::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ptmine::StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ptmine::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ptmine::ThresholdError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const ptmine::DatasetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 6;
  } catch (const ptmine::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 7;
  } catch (const ptmine::CorruptionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 7;
  } catch (const ptmine::IntegrityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 7;
  } catch (const ptmine::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 9;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 9;
  }
}
