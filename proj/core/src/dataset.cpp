#include "ptmine/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ptmine/errors.hpp"

namespace ptmine {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* prep_kind_name(PrepKind kind) {
  switch (kind) {
    case PrepKind::Binary:
      return "binary";
    case PrepKind::Categorical:
      return "categorical";
    case PrepKind::Binned:
      return "binned";
    case PrepKind::Ignored:
      return "ignored";
  }
  return "categorical";
}

long long parse_integer_cell(const std::string& cell, const std::string& attr,
                             std::size_t row) {
  long long value = 0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError("attribute '" + attr + "' expects an integer, got '" +
                          cell + "' (row " + std::to_string(row + 1) + ")");
  }
  return value;
}

}  // namespace

void PrepSchema::validate() const {
  if (attributes.empty()) {
    throw ValidationError("schema has no attributes");
  }
  std::set<std::string> names;
  bool any_kept = false;
  for (const auto& attr : attributes) {
    if (attr.name.empty()) {
      throw ValidationError("schema attribute with empty name");
    }
    if (!names.insert(attr.name).second) {
      throw ValidationError("duplicate attribute name: " + attr.name);
    }
    switch (attr.kind) {
      case PrepKind::Binary:
        if (attr.positive.empty()) {
          throw ValidationError("binary attribute '" + attr.name +
                                "' has no positive value");
        }
        any_kept = true;
        break;
      case PrepKind::Categorical: {
        if (attr.values.empty()) {
          throw ValidationError("categorical attribute '" + attr.name +
                                "' has an empty value list");
        }
        std::set<std::string> seen;
        for (const auto& v : attr.values) {
          if (!seen.insert(v).second) {
            throw ValidationError("categorical attribute '" + attr.name +
                                  "' lists value '" + v + "' twice");
          }
        }
        any_kept = true;
        break;
      }
      case PrepKind::Binned: {
        if (attr.labels.size() != attr.cuts.size() + 1) {
          throw ValidationError("binned attribute '" + attr.name +
                                "' needs exactly one more label than cuts");
        }
        for (std::size_t i = 1; i < attr.cuts.size(); ++i) {
          if (attr.cuts[i] <= attr.cuts[i - 1]) {
            throw ValidationError("binned attribute '" + attr.name +
                                  "' needs strictly increasing cuts");
          }
        }
        std::set<std::string> seen;
        for (const auto& l : attr.labels) {
          if (l.empty() || !seen.insert(l).second) {
            throw ValidationError("binned attribute '" + attr.name +
                                  "' needs unique non-empty labels");
          }
        }
        any_kept = true;
        break;
      }
      case PrepKind::Ignored:
        break;
    }
  }
  if (!any_kept) {
    throw ValidationError("schema ignores every attribute");
  }
}

std::vector<std::string> PrepSchema::column_names() const {
  std::vector<std::string> names;
  names.reserve(attributes.size());
  for (const auto& attr : attributes) {
    names.push_back(attr.name);
  }
  return names;
}

std::pair<RawTable, TableSchema> PrepSchema::apply(const RawTable& raw) const {
  validate();
  if (attributes.size() != raw.header.size()) {
    throw ValidationError("schema has " + std::to_string(attributes.size()) +
                          " attributes but the table has " +
                          std::to_string(raw.header.size()) + " columns");
  }
  for (std::size_t c = 0; c < attributes.size(); ++c) {
    if (attributes[c].name != raw.header[c]) {
      throw ValidationError("schema attribute '" + attributes[c].name +
                            "' does not match table column '" + raw.header[c] +
                            "' at position " + std::to_string(c + 1));
    }
  }

  RawTable out;
  TableSchema schema;
  std::vector<std::size_t> kept_columns;
  for (std::size_t c = 0; c < attributes.size(); ++c) {
    const PrepAttribute& attr = attributes[c];
    if (attr.kind == PrepKind::Ignored) {
      continue;
    }
    kept_columns.push_back(c);
    out.header.push_back(attr.name);
    AttributeSchema core;
    core.name = attr.name;
    core.role = attr.role;
    if (attr.kind == PrepKind::Binary) {
      core.kind = AttributeKind::Binary;
      core.positive = attr.positive;
    } else {
      core.kind = AttributeKind::Categorical;
      core.values = attr.kind == PrepKind::Binned ? attr.labels : attr.values;
    }
    schema.attributes.push_back(std::move(core));
  }

  out.rows.reserve(raw.rows.size());
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    if (raw.rows[r].size() != raw.header.size()) {
      throw StructuralError("row " + std::to_string(r + 1) + " has " +
                            std::to_string(raw.rows[r].size()) +
                            " cells, expected " +
                            std::to_string(raw.header.size()));
    }
    std::vector<std::string> row;
    row.reserve(kept_columns.size());
    for (const std::size_t c : kept_columns) {
      const PrepAttribute& attr = attributes[c];
      const std::string& cell = raw.rows[r][c];
      if (attr.kind == PrepKind::Binned) {
        const long long v = parse_integer_cell(cell, attr.name, r);
        std::size_t bin = attr.cuts.size();
        for (std::size_t i = 0; i < attr.cuts.size(); ++i) {
          if (v < attr.cuts[i]) {
            bin = i;
            break;
          }
        }
        row.push_back(attr.labels[bin]);
      } else {
        row.push_back(cell);
      }
    }
    out.rows.push_back(std::move(row));
  }

  schema.validate();
  return {std::move(out), std::move(schema)};
}

PrepSchema PrepSchema::from_core(const TableSchema& schema) {
  PrepSchema prep;
  for (const auto& attr : schema.attributes) {
    PrepAttribute p;
    p.name = attr.name;
    p.role = attr.role;
    if (attr.kind == AttributeKind::Binary) {
      p.kind = PrepKind::Binary;
      p.positive = attr.positive;
    } else {
      p.kind = PrepKind::Categorical;
      p.values = attr.values;
    }
    prep.attributes.push_back(std::move(p));
  }
  return prep;
}

PrepSchema PrepSchema::from_json_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("attributes") ||
      !doc["attributes"].is_array()) {
    throw ValidationError("schema JSON needs an 'attributes' array");
  }
  PrepSchema prep;
  for (const auto& a : doc["attributes"]) {
    PrepAttribute attr;
    if (!a.contains("name") || !a["name"].is_string()) {
      throw ValidationError("schema attribute without a string 'name'");
    }
    attr.name = a["name"].get<std::string>();
    const std::string role = a.value("role", std::string("condition"));
    if (role == "condition") {
      attr.role = Role::Condition;
    } else if (role == "decision") {
      attr.role = Role::Decision;
    } else {
      throw ValidationError("attribute '" + attr.name + "' has unknown role '" +
                            role + "'");
    }
    const std::string kind = a.value("kind", std::string("categorical"));
    if (kind == "binary") {
      attr.kind = PrepKind::Binary;
      attr.positive = a.value("positive", std::string{});
    } else if (kind == "categorical") {
      attr.kind = PrepKind::Categorical;
      if (a.contains("values")) {
        for (const auto& v : a["values"]) {
          attr.values.push_back(v.get<std::string>());
        }
      }
    } else if (kind == "binned") {
      attr.kind = PrepKind::Binned;
      if (a.contains("cuts")) {
        for (const auto& v : a["cuts"]) {
          attr.cuts.push_back(v.get<long long>());
        }
      }
      if (a.contains("labels")) {
        for (const auto& v : a["labels"]) {
          attr.labels.push_back(v.get<std::string>());
        }
      }
    } else if (kind == "ignored") {
      attr.kind = PrepKind::Ignored;
    } else {
      throw ValidationError("attribute '" + attr.name + "' has unknown kind '" +
                            kind + "'");
    }
    prep.attributes.push_back(std::move(attr));
  }
  prep.validate();
  return prep;
}

PrepSchema PrepSchema::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open schema file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string PrepSchema::to_json_text() const {
  ordered_json doc;
  doc["attributes"] = ordered_json::array();
  for (const auto& attr : attributes) {
    ordered_json a;
    a["name"] = attr.name;
    a["kind"] = prep_kind_name(attr.kind);
    if (attr.kind != PrepKind::Ignored) {
      a["role"] = role_name(attr.role);
    }
    if (attr.kind == PrepKind::Binary) {
      a["positive"] = attr.positive;
    } else if (attr.kind == PrepKind::Categorical) {
      a["values"] = attr.values;
    } else if (attr.kind == PrepKind::Binned) {
      a["cuts"] = attr.cuts;
      a["labels"] = attr.labels;
    }
    doc["attributes"].push_back(std::move(a));
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Bundled tables. All generators are seeded with fixed constants and draw in
// a fixed per-row order, so the emitted files are identical on every run and
// platform.

namespace {

std::size_t weighted_pick(std::mt19937& rng, const std::vector<int>& weights) {
  const long long total = std::accumulate(weights.begin(), weights.end(), 0LL);
  auto r = static_cast<long long>(rng() % static_cast<std::uint32_t>(total));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    r -= weights[i];
    if (r < 0) {
      return i;
    }
  }
  return weights.size() - 1;
}

long long uniform_in(std::mt19937& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(
                  rng() % static_cast<std::uint32_t>(hi - lo + 1));
}

}  // namespace

RawTable demo_table() {
  RawTable t;
  t.header = {"A", "B", "C", "D", "E", "F", "G"};
  const char* bits[8] = {
      "1100000",  // A B
      "1111110",  // A B C D E F
      "0101001",  // B D G
      "0100101",  // B E G
      "0001011",  // D F G
      "0001101",  // D E G
      "0100100",  // B E
      "0101110",  // B D E F
  };
  for (const char* row_bits : bits) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < 7; ++c) {
      row.emplace_back(row_bits[c] == '1' ? "yes" : "no");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

PrepSchema demo_prep_schema() {
  PrepSchema prep;
  for (const char* name : {"A", "B", "C", "D", "E", "F", "G"}) {
    PrepAttribute attr;
    attr.name = name;
    attr.kind = PrepKind::Binary;
    attr.positive = "yes";
    attr.role = std::string(name) == "G" ? Role::Decision : Role::Condition;
    prep.attributes.push_back(std::move(attr));
  }
  return prep;
}

namespace {

int car_price_points(const std::string& v) {
  if (v == "vhigh") return 3;
  if (v == "high") return 2;
  if (v == "med") return 1;
  return 0;
}

int car_doors_points(const std::string& v) {
  if (v == "2") return 0;
  if (v == "3") return 1;
  return 2;
}

int car_lug_points(const std::string& v) {
  if (v == "small") return 0;
  if (v == "med") return 1;
  return 2;
}

// Deterministic label over the six inputs; no randomness at all.
std::string car_label(const std::string& buying, const std::string& maint,
                      const std::string& doors, const std::string& persons,
                      const std::string& lug, const std::string& safety) {
  if (persons == "2" || safety == "low") {
    return "unacc";
  }
  const int price = car_price_points(buying) + car_price_points(maint);
  const int comfort = car_doors_points(doors) + (persons == "more" ? 2 : 1) +
                      car_lug_points(lug);
  const int saf = safety == "high" ? 2 : 1;
  if (price >= 5) {
    return "unacc";
  }
  if (comfort <= 1 && price >= 2) {
    return "unacc";
  }
  const int score = comfort + 3 * saf - price;
  if (price <= 1 && saf == 2 && comfort >= 5) {
    return "vgood";
  }
  if (price <= 2 && score >= 8) {
    return "good";
  }
  if (score >= 5) {
    return "acc";
  }
  return "unacc";
}

}  // namespace

RawTable car_table() {
  RawTable t;
  t.header = {"buying", "maint", "doors", "persons", "lug_boot", "safety",
              "class"};
  const std::vector<std::string> buying = {"vhigh", "high", "med", "low"};
  const std::vector<std::string> doors = {"2", "3", "4", "5more"};
  const std::vector<std::string> persons = {"2", "4", "more"};
  const std::vector<std::string> lug = {"small", "med", "big"};
  const std::vector<std::string> safety = {"low", "med", "high"};
  for (const auto& b : buying) {
    for (const auto& m : buying) {
      for (const auto& d : doors) {
        for (const auto& p : persons) {
          for (const auto& l : lug) {
            for (const auto& s : safety) {
              t.rows.push_back({b, m, d, p, l, s, car_label(b, m, d, p, l, s)});
            }
          }
        }
      }
    }
  }
  return t;
}

PrepSchema car_prep_schema() {
  PrepSchema prep;
  const auto cat = [&prep](const char* name, std::vector<std::string> values,
                           Role role = Role::Condition) {
    PrepAttribute attr;
    attr.name = name;
    attr.kind = PrepKind::Categorical;
    attr.values = std::move(values);
    attr.role = role;
    prep.attributes.push_back(std::move(attr));
  };
  cat("buying", {"vhigh", "high", "med", "low"});
  cat("maint", {"vhigh", "high", "med", "low"});
  cat("doors", {"2", "3", "4", "5more"});
  cat("persons", {"2", "4", "more"});
  cat("lug_boot", {"small", "med", "big"});
  cat("safety", {"low", "med", "high"});
  cat("class", {"unacc", "acc", "good", "vgood"}, Role::Decision);
  return prep;
}

namespace {

struct MushroomAttr {
  const char* name;
  // Values the generator emits, with class-conditional weights.
  std::vector<std::string> emitted;
  std::vector<int> weight_edible;
  std::vector<int> weight_poisonous;
  // Complete value list for the schema (superset of emitted).
  std::vector<std::string> alphabet;
};

const std::vector<MushroomAttr>& mushroom_attrs() {
  static const std::vector<MushroomAttr> attrs = {
      {"cap-shape",
       {"x", "f", "k", "b", "s"},
       {38, 32, 12, 14, 4},
       {42, 30, 20, 6, 2},
       {"b", "c", "x", "f", "k", "s"}},
      {"cap-surface",
       {"y", "s", "f"},
       {32, 30, 38},
       {46, 30, 24},
       {"f", "g", "y", "s"}},
      {"cap-color",
       {"n", "g", "e", "y", "w", "b"},
       {30, 25, 15, 12, 12, 6},
       {32, 22, 20, 10, 8, 8},
       {"n", "b", "c", "g", "r", "p", "u", "e", "w", "y"}},
      {"bruises", {"t", "f"}, {62, 38}, {18, 82}, {"t", "f"}},
      {"odor",
       {"n", "a", "l", "f", "y", "s", "p", "c"},
       {86, 6, 6, 0, 0, 0, 1, 1},
       {3, 0, 0, 52, 16, 15, 9, 5},
       {"a", "l", "c", "y", "f", "m", "n", "p", "s"}},
      {"gill-attachment", {"f", "a"}, {96, 4}, {99, 1}, {"a", "d", "f", "n"}},
      {"gill-spacing", {"c", "w"}, {72, 28}, {88, 12}, {"c", "w", "d"}},
      {"gill-size", {"b", "n"}, {76, 24}, {34, 66}, {"b", "n"}},
      {"gill-color",
       {"b", "p", "w", "n", "g", "h", "u", "k"},
       {20, 18, 22, 14, 10, 8, 4, 4},
       {26, 16, 10, 12, 10, 18, 4, 4},
       {"k", "n", "b", "h", "g", "r", "o", "p", "u", "e", "w", "y"}},
      {"stalk-shape", {"t", "e"}, {56, 44}, {42, 58}, {"e", "t"}},
      {"stalk-root",
       {"b", "e", "c", "r", "?"},
       {46, 24, 14, 6, 10},
       {36, 10, 6, 2, 46},
       {"b", "c", "u", "e", "z", "r", "?"}},
      {"stalk-surface-above-ring",
       {"s", "k", "f", "y"},
       {82, 8, 8, 2},
       {28, 62, 6, 4},
       {"f", "y", "k", "s"}},
      {"stalk-surface-below-ring",
       {"s", "k", "f", "y"},
       {76, 10, 10, 4},
       {30, 58, 8, 4},
       {"f", "y", "k", "s"}},
      {"stalk-color-above-ring",
       {"w", "p", "g", "n", "b", "o"},
       {70, 10, 10, 4, 4, 2},
       {48, 22, 12, 10, 6, 2},
       {"n", "b", "c", "g", "o", "p", "e", "w", "y"}},
      {"stalk-color-below-ring",
       {"w", "p", "g", "n", "b", "o"},
       {68, 12, 10, 4, 4, 2},
       {46, 24, 12, 10, 6, 2},
       {"n", "b", "c", "g", "o", "p", "e", "w", "y"}},
      {"veil-type", {"p"}, {1}, {1}, {"p", "u"}},
      {"veil-color",
       {"w", "n", "o", "y"},
       {97, 1, 1, 1},
       {98, 1, 0, 1},
       {"n", "o", "w", "y"}},
      {"ring-number", {"o", "t", "n"}, {86, 13, 1}, {90, 8, 2}, {"n", "o", "t"}},
      {"ring-type",
       {"p", "e", "l", "f"},
       {56, 36, 4, 4},
       {30, 24, 42, 4},
       {"c", "e", "f", "l", "n", "p", "s", "z"}},
      {"spore-print-color",
       {"w", "n", "k", "h", "u", "o"},
       {18, 36, 36, 4, 3, 3},
       {50, 13, 11, 24, 1, 1},
       {"k", "n", "b", "h", "r", "o", "u", "w", "y"}},
      {"population",
       {"v", "y", "s", "n", "a", "c"},
       {34, 26, 20, 10, 6, 4},
       {44, 28, 16, 6, 4, 2},
       {"a", "c", "n", "s", "v", "y"}},
      {"habitat",
       {"d", "g", "l", "m", "p", "u", "w"},
       {30, 32, 12, 10, 6, 4, 6},
       {36, 24, 18, 8, 8, 4, 2},
       {"g", "l", "m", "p", "u", "w", "d"}},
  };
  return attrs;
}

}  // namespace

RawTable mushroom_table() {
  RawTable t;
  t.header.push_back("class");
  for (const auto& attr : mushroom_attrs()) {
    t.header.push_back(attr.name);
  }
  std::mt19937 rng(8124);
  const std::size_t n = 8124;
  const std::size_t n_edible = 4208;
  for (std::size_t r = 0; r < n; ++r) {
    const bool edible = rng() % n < n_edible;
    std::vector<std::string> row;
    row.reserve(t.header.size());
    row.emplace_back(edible ? "e" : "p");
    for (const auto& attr : mushroom_attrs()) {
      const auto& weights = edible ? attr.weight_edible : attr.weight_poisonous;
      row.push_back(attr.emitted[weighted_pick(rng, weights)]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

PrepSchema mushroom_prep_schema() {
  PrepSchema prep;
  PrepAttribute cls;
  cls.name = "class";
  cls.kind = PrepKind::Categorical;
  cls.values = {"e", "p"};
  cls.role = Role::Decision;
  prep.attributes.push_back(std::move(cls));
  for (const auto& attr : mushroom_attrs()) {
    PrepAttribute p;
    p.name = attr.name;
    p.kind = PrepKind::Categorical;
    p.values.assign(attr.alphabet.begin(), attr.alphabet.end());
    p.role = Role::Condition;
    prep.attributes.push_back(std::move(p));
  }
  return prep;
}

namespace {

const std::vector<std::string>& adult_educations() {
  static const std::vector<std::string> v = {
      "Bachelors", "Some-college", "11th",      "HS-grad",   "Prof-school",
      "Assoc-acdm", "Assoc-voc",   "9th",       "7th-8th",   "12th",
      "Masters",    "1st-4th",     "10th",      "Doctorate", "5th-6th",
      "Preschool"};
  return v;
}

int adult_education_num(std::size_t edu_index) {
  static const int nums[] = {13, 10, 7, 9, 15, 12, 11, 5, 4, 8,
                             14, 2,  6, 16, 3,  1};
  return nums[edu_index];
}

int adult_education_points(std::size_t edu_index) {
  static const int pts[] = {1, 0, -2, -1, 2, 0, 0, -2, -2, -2,
                            2, -2, -2, 2,  -2, -2};
  return pts[edu_index];
}

}  // namespace

RawTable adult_table() {
  RawTable t;
  t.header = {"age",          "workclass",     "fnlwgt",
              "education",    "education-num", "marital-status",
              "occupation",   "relationship",  "race",
              "sex",          "capital-gain",  "capital-loss",
              "hours-per-week", "native-country", "income"};

  const std::vector<int> age_bin_w = {18, 26, 24, 17, 10, 5};
  const long long age_lo[6] = {17, 26, 36, 46, 56, 66};
  const long long age_hi[6] = {25, 35, 45, 55, 65, 90};
  const int age_pts[6] = {-2, 0, 1, 1, 0, -1};

  const std::vector<std::string> marital = {
      "Married-civ-spouse", "Never-married",        "Divorced", "Separated",
      "Widowed",            "Married-spouse-absent", "Married-AF-spouse"};
  const std::vector<std::vector<int>> marital_w = {
      {12, 78, 4, 2, 1, 2, 1},  {42, 42, 9, 3, 1, 2, 1},
      {56, 18, 17, 4, 2, 2, 1}, {60, 10, 20, 4, 4, 1, 1},
      {62, 7, 18, 3, 8, 1, 1},  {55, 5, 15, 2, 21, 1, 1}};
  const int marital_pts[7] = {2, -2, -1, -1, -1, -1, 2};

  const std::vector<int> education_w = {16, 22, 4, 32, 2, 3, 4, 2, // Bachelors..9th
                                        2, 1, 5, 1, 3, 1, 1, 1};

  const std::vector<std::string> hours_bins = {"part-time", "full-time",
                                               "overtime", "heavy"};
  const std::vector<std::vector<int>> hours_w = {
      {45, 42, 9, 4},  {16, 50, 22, 12}, {13, 49, 24, 14},
      {14, 50, 23, 13}, {25, 50, 17, 8},  {55, 35, 7, 3}};
  const long long hours_lo[4] = {10, 35, 41, 51};
  const long long hours_hi[4] = {34, 40, 50, 80};
  const int hours_pts[4] = {-2, 0, 1, 1};

  const std::vector<int> gain_w = {916, 42, 42};
  const int gain_pts[3] = {0, 1, 3};
  const std::vector<int> loss_w = {953, 30, 17};
  const int loss_pts[3] = {0, 0, 1};

  const std::vector<std::string> workclass = {
      "Private",    "Self-emp-not-inc", "Self-emp-inc", "Federal-gov",
      "Local-gov",  "State-gov",        "Without-pay",  "Never-worked",
      "?"};
  const std::vector<int> workclass_w = {695, 79, 35, 29, 64, 40, 1, 1, 56};

  const std::vector<std::string> occupation = {
      "Tech-support",     "Craft-repair",   "Other-service",
      "Sales",            "Exec-managerial", "Prof-specialty",
      "Handlers-cleaners", "Machine-op-inspct", "Adm-clerical",
      "Farming-fishing",  "Transport-moving", "Priv-house-serv",
      "Protective-serv",  "Armed-Forces",   "?"};
  const std::vector<int> occupation_w = {3, 13, 10, 11, 12, 12, 4, 6,
                                         11, 3, 5, 1, 2, 1, 6};

  const std::vector<std::string> race = {"White", "Black", "Asian-Pac-Islander",
                                         "Amer-Indian-Eskimo", "Other"};
  const std::vector<int> race_w = {854, 96, 32, 10, 8};

  const std::vector<std::string> country = {
      "United-States", "Mexico",     "?",       "Philippines", "Germany",
      "Canada",        "Puerto-Rico", "El-Salvador", "India",  "Cuba",
      "England",       "South"};
  const std::vector<int> country_w = {930, 20, 18, 6, 4, 4, 4, 3, 3, 3, 3, 2};

  const std::vector<int> other_rel_w = {45, 25, 20, 10};
  const std::vector<std::string> other_rel = {"Not-in-family", "Own-child",
                                              "Unmarried", "Other-relative"};

  // P(income > 50K) by clamped score.
  const double p_high[12] = {0.004, 0.01, 0.02, 0.05, 0.10, 0.17,
                             0.28,  0.42, 0.56, 0.70, 0.80, 0.88};

  std::mt19937 rng(32561);
  const std::size_t n = 32561;
  t.rows.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t ab = weighted_pick(rng, age_bin_w);
    const long long age = uniform_in(rng, age_lo[ab], age_hi[ab]);
    const std::size_t wc = weighted_pick(rng, workclass_w);
    const long long fnlwgt = uniform_in(rng, 12285, 488285);
    const std::size_t edu = weighted_pick(rng, education_w);
    const std::size_t ms = weighted_pick(rng, marital_w[ab]);
    const std::size_t oc = weighted_pick(rng, occupation_w);
    const std::size_t rc = weighted_pick(rng, race_w);
    const bool male = rng() % 1000 < 670;
    const std::size_t gb = weighted_pick(rng, gain_w);
    const long long gain =
        gb == 0 ? 0 : (gb == 1 ? uniform_in(rng, 100, 4999)
                                : uniform_in(rng, 5000, 99999));
    const std::size_t lb = weighted_pick(rng, loss_w);
    const long long loss =
        lb == 0 ? 0 : (lb == 1 ? uniform_in(rng, 100, 1499)
                                : uniform_in(rng, 1500, 4356));
    const std::size_t hb = weighted_pick(rng, hours_w[ab]);
    const long long hours = uniform_in(rng, hours_lo[hb], hours_hi[hb]);
    const std::size_t co = weighted_pick(rng, country_w);

    std::string relationship;
    if (ms == 0 || ms == 6) {
      relationship = male ? "Husband" : "Wife";
    } else {
      relationship = other_rel[weighted_pick(rng, other_rel_w)];
    }

    const int score = age_pts[ab] + adult_education_points(edu) +
                      marital_pts[ms] + hours_pts[hb] + gain_pts[gb] +
                      loss_pts[lb] + (male ? 1 : 0);
    const int idx = std::clamp(score + 4, 0, 11);
    const bool high = (rng() % 1000000) < static_cast<std::uint32_t>(
                                              p_high[idx] * 1000000.0);

    t.rows.push_back({std::to_string(age),
                      workclass[wc],
                      std::to_string(fnlwgt),
                      adult_educations()[edu],
                      std::to_string(adult_education_num(edu)),
                      marital[ms],
                      occupation[oc],
                      relationship,
                      race[rc],
                      male ? "Male" : "Female",
                      std::to_string(gain),
                      std::to_string(loss),
                      std::to_string(hours),
                      country[co],
                      high ? ">50K" : "<=50K"});
  }
  return t;
}

PrepSchema adult_prep_schema() {
  PrepSchema prep;
  const auto add = [&prep](PrepAttribute attr) {
    prep.attributes.push_back(std::move(attr));
  };
  {
    PrepAttribute a;
    a.name = "age";
    a.kind = PrepKind::Binned;
    a.cuts = {26, 36, 46, 56, 66};
    a.labels = {"17-25", "26-35", "36-45", "46-55", "56-65", "66+"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "workclass";
    a.kind = PrepKind::Categorical;
    a.values = {"Private",    "Self-emp-not-inc", "Self-emp-inc",
                "Federal-gov", "Local-gov",       "State-gov",
                "Without-pay", "Never-worked",    "?"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "fnlwgt";
    a.kind = PrepKind::Ignored;
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "education";
    a.kind = PrepKind::Categorical;
    a.values = adult_educations();
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "education-num";
    a.kind = PrepKind::Ignored;
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "marital-status";
    a.kind = PrepKind::Categorical;
    a.values = {"Married-civ-spouse", "Divorced",
                "Never-married",      "Separated",
                "Widowed",            "Married-spouse-absent",
                "Married-AF-spouse"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "occupation";
    a.kind = PrepKind::Categorical;
    a.values = {"Tech-support",      "Craft-repair",      "Other-service",
                "Sales",             "Exec-managerial",   "Prof-specialty",
                "Handlers-cleaners", "Machine-op-inspct", "Adm-clerical",
                "Farming-fishing",   "Transport-moving",  "Priv-house-serv",
                "Protective-serv",   "Armed-Forces",      "?"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "relationship";
    a.kind = PrepKind::Categorical;
    a.values = {"Wife", "Own-child", "Husband", "Not-in-family",
                "Other-relative", "Unmarried"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "race";
    a.kind = PrepKind::Categorical;
    a.values = {"White", "Asian-Pac-Islander", "Amer-Indian-Eskimo", "Other",
                "Black"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "sex";
    a.kind = PrepKind::Categorical;
    a.values = {"Female", "Male"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "capital-gain";
    a.kind = PrepKind::Binned;
    a.cuts = {1, 5000};
    a.labels = {"none", "low", "high"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "capital-loss";
    a.kind = PrepKind::Binned;
    a.cuts = {1, 1500};
    a.labels = {"none", "low", "high"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "hours-per-week";
    a.kind = PrepKind::Binned;
    a.cuts = {35, 41, 51};
    a.labels = {"part-time", "full-time", "overtime", "heavy"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "native-country";
    a.kind = PrepKind::Categorical;
    a.values = {"United-States", "Cambodia", "England",
                "Puerto-Rico",   "Canada",   "Germany",
                "Outlying-US(Guam-USVI-etc)", "India", "Japan",
                "Greece",        "South",    "China",
                "Cuba",          "Iran",     "Honduras",
                "Philippines",   "Italy",    "Poland",
                "Jamaica",       "Vietnam",  "Mexico",
                "Portugal",      "Ireland",  "France",
                "Dominican-Republic", "Laos", "Ecuador",
                "Taiwan",        "Haiti",    "Columbia",
                "Hungary",       "Guatemala", "Nicaragua",
                "Scotland",      "Thailand", "Yugoslavia",
                "El-Salvador",   "Trinadad&Tobago", "Peru",
                "Hong",          "Holand-Netherlands", "?"};
    add(std::move(a));
  }
  {
    PrepAttribute a;
    a.name = "income";
    a.kind = PrepKind::Categorical;
    a.values = {"<=50K", ">50K"};
    a.role = Role::Decision;
    add(std::move(a));
  }
  return prep;
}

const std::vector<BundledDataset>& bundled_datasets() {
  static const std::vector<BundledDataset> sets = {
      {"demo", "demo.csv", {8}, 7, true,
       "built into this repository (worked example)"},
      {"car", "car.data", {1728}, 7, false,
       "https://archive.ics.uci.edu/dataset/19/car+evaluation"},
      {"mushroom", "mushroom.data", {8124}, 23, false,
       "https://archive.ics.uci.edu/dataset/73/mushroom"},
      {"adult", "adult.data", {32561}, 15, false,
       "https://archive.ics.uci.edu/dataset/2/adult"},
  };
  return sets;
}

const BundledDataset* find_bundled(const std::string& name) {
  for (const auto& d : bundled_datasets()) {
    if (d.name == name) {
      return &d;
    }
  }
  return nullptr;
}

RawTable bundled_table(const std::string& name) {
  if (name == "demo") return demo_table();
  if (name == "car") return car_table();
  if (name == "mushroom") return mushroom_table();
  if (name == "adult") return adult_table();
  throw UsageError("unknown bundled dataset: " + name);
}

PrepSchema bundled_prep_schema(const std::string& name) {
  if (name == "demo") return demo_prep_schema();
  if (name == "car") return car_prep_schema();
  if (name == "mushroom") return mushroom_prep_schema();
  if (name == "adult") return adult_prep_schema();
  throw UsageError("unknown bundled dataset: " + name);
}

std::string generate_dataset(const std::string& name,
                             const std::string& data_dir) {
  const BundledDataset* b = find_bundled(name);
  if (b == nullptr) {
    throw UsageError("unknown bundled dataset: " + name);
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(data_dir, ec);
  if (ec) {
    throw IoError("cannot create data directory: " + data_dir);
  }
  const RawTable table = bundled_table(name);
  const PrepSchema prep = bundled_prep_schema(name);

  const fs::path data_path = fs::path(data_dir) / b->file_name;
  {
    std::ofstream out(data_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write " + data_path.string());
    }
    const auto write_row = [&out](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != 0) {
          out << ',';
        }
        out << cells[c];
      }
      out << '\n';
    };
    if (b->file_has_header) {
      write_row(table.header);
    }
    for (const auto& row : table.rows) {
      write_row(row);
    }
  }
  const fs::path schema_path = fs::path(data_dir) / (name + ".schema.json");
  std::ofstream out(schema_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + schema_path.string());
  }
  out << prep.to_json_text();
  return data_path.string();
}

ResolvedDataset fetch_or_validate_dataset(
    const std::string& name_or_path, const std::string& data_dir,
    const std::optional<std::string>& schema_path, char delimiter,
    bool no_header) {
  namespace fs = std::filesystem;
  const BundledDataset* b = find_bundled(name_or_path);
  if (b != nullptr) {
    const fs::path path = fs::path(data_dir) / b->file_name;
    if (!fs::exists(path)) {
      throw IoError("dataset '" + b->name + "' not found at " + path.string() +
                    "\n  canonical source: " + b->source +
                    "\n  to generate the bundled stand-in: ptmine gen-data --name " +
                    b->name + " --data-dir " + data_dir);
    }
    const PrepSchema prep = schema_path ? PrepSchema::from_json_file(*schema_path)
                                        : bundled_prep_schema(b->name);
    RawTable raw = b->file_has_header
                       ? load_delimited_file(path.string(), delimiter)
                       : load_delimited_file(path.string(), delimiter,
                                             prep.column_names());
    if (raw.header.size() != b->arity) {
      throw DatasetError("dataset '" + b->name + "' must have " +
                         std::to_string(b->arity) + " columns, found " +
                         std::to_string(raw.header.size()) +
                         "; canonical source: " + b->source);
    }
    if (std::find(b->allowed_rows.begin(), b->allowed_rows.end(),
                  raw.rows.size()) == b->allowed_rows.end()) {
      std::string allowed;
      for (const std::size_t r : b->allowed_rows) {
        if (!allowed.empty()) {
          allowed += " or ";
        }
        allowed += std::to_string(r);
      }
      throw DatasetError("dataset '" + b->name + "' must have " + allowed +
                         " rows, found " + std::to_string(raw.rows.size()) +
                         "; canonical source: " + b->source);
    }
    auto [table, schema] = prep.apply(raw);
    return {b->name, std::move(table), std::move(schema)};
  }

  if (!fs::exists(name_or_path)) {
    std::string names;
    for (const auto& d : bundled_datasets()) {
      if (!names.empty()) {
        names += ", ";
      }
      names += d.name;
    }
    throw IoError("no such input file: " + name_or_path +
                  " (bundled dataset names: " + names + ")");
  }
  if (no_header && !schema_path) {
    throw UsageError("--no-header needs --schema to supply the column names");
  }
  PrepSchema prep;
  RawTable raw;
  if (schema_path) {
    prep = PrepSchema::from_json_file(*schema_path);
    raw = no_header
              ? load_delimited_file(name_or_path, delimiter, prep.column_names())
              : load_delimited_file(name_or_path, delimiter);
  } else {
    raw = load_delimited_file(name_or_path, delimiter);
    prep = PrepSchema::from_core(infer_schema(raw));
  }
  auto [table, schema] = prep.apply(raw);
  return {name_or_path, std::move(table), std::move(schema)};
}

}  // namespace ptmine
