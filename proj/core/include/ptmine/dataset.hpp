#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptmine/schema.hpp"

namespace ptmine {

// Preprocessing schema: the core attribute kinds plus two harness-level
// directives applied before discretization. "binned" maps an integer column
// into labeled ranges; "ignored" drops a column. Plain binary/categorical
// attributes pass through unchanged, so every core schema is also a valid
// preprocessing schema.
enum class PrepKind { Binary, Categorical, Binned, Ignored };

struct PrepAttribute {
  std::string name;
  PrepKind kind = PrepKind::Categorical;
  Role role = Role::Condition;
  std::string positive;             // Binary
  std::vector<std::string> values;  // Categorical
  // Binned: strictly increasing upper-exclusive boundaries. A value v maps
  // to labels[i] for the first cut with v < cuts[i], else to labels.back();
  // labels.size() == cuts.size() + 1.
  std::vector<long long> cuts;
  std::vector<std::string> labels;
};

struct PrepSchema {
  std::vector<PrepAttribute> attributes;

  void validate() const;

  // Column names before any drop, in order; doubles as the header for
  // headerless files.
  std::vector<std::string> column_names() const;

  // Applies drops and binning; the result pairs the transformed table with
  // the core schema that describes it.
  std::pair<RawTable, TableSchema> apply(const RawTable& raw) const;

  static PrepSchema from_core(const TableSchema& schema);
  static PrepSchema from_json_text(const std::string& text);
  static PrepSchema from_json_file(const std::string& path);
  std::string to_json_text() const;
};

// A dataset this build can regenerate deterministically. `allowed_rows` and
// `arity` validate both generated files and user-supplied originals.
struct BundledDataset {
  std::string name;
  std::string file_name;
  std::vector<std::size_t> allowed_rows;
  std::size_t arity = 0;
  bool file_has_header = false;
  std::string source;  // canonical upstream location of the original
};

const std::vector<BundledDataset>& bundled_datasets();
const BundledDataset* find_bundled(const std::string& name);

// In-memory builders. Deterministic: same table on every call and platform.
RawTable demo_table();
PrepSchema demo_prep_schema();
RawTable car_table();
PrepSchema car_prep_schema();
RawTable mushroom_table();
PrepSchema mushroom_prep_schema();
RawTable adult_table();
PrepSchema adult_prep_schema();

RawTable bundled_table(const std::string& name);
PrepSchema bundled_prep_schema(const std::string& name);

// Writes <name>.data (demo: demo.csv with header) and <name>.schema.json
// into data_dir, creating it if needed. Returns the data file path.
std::string generate_dataset(const std::string& name, const std::string& data_dir);

// Input resolution for the pipeline. A bundled name loads
// data_dir/<file_name>, validating row count and arity against the manifest
// (DatasetError on mismatch) and failing with the canonical source plus
// regeneration instructions when the file is absent. Any other input is
// treated as a path to a delimited file. The preprocessing schema comes from
// schema_path when given, from the bundle for bundled names, and from
// inference otherwise.
struct ResolvedDataset {
  std::string display_name;
  RawTable table;      // after preprocessing
  TableSchema schema;  // describes `table`
};

ResolvedDataset fetch_or_validate_dataset(
    const std::string& name_or_path, const std::string& data_dir,
    const std::optional<std::string>& schema_path, char delimiter = ',',
    bool no_header = false);

}  // namespace ptmine
