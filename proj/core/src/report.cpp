#include "ptmine/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ptmine {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string join_labels(const std::vector<std::string>& labels,
                        const Itemset& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) {
      out += sep;
    }
    out += labels.at(items[i]);
  }
  return out;
}

ordered_json threshold_json(const std::string& text, const Fraction& f) {
  ordered_json t;
  t["text"] = text;
  t["fraction"] = f.str();
  t["value"] = f.value();
  return t;
}

ordered_json rule_json(const RunReport& report, const AssociationRule& rule) {
  ordered_json r;
  r["antecedent"] = ordered_json::array();
  for (const auto item : rule.antecedent) {
    r["antecedent"].push_back(report.item_labels.at(item));
  }
  r["consequent"] = report.item_labels.at(rule.consequent);
  r["count"] = rule.count;
  r["antecedent_count"] = rule.antecedent_count;
  r["support"] = std::to_string(rule.count) + "/" + std::to_string(report.n_rows);
  r["support_value"] = rule.support(report.n_rows);
  r["confidence"] = std::to_string(rule.count) + "/" +
                    std::to_string(rule.antecedent_count);
  r["confidence_value"] = rule.confidence();
  return r;
}

ordered_json itemset_json(const RunReport& report, const FrequentItemset& f) {
  ordered_json s;
  s["items"] = ordered_json::array();
  for (const auto item : f.items) {
    s["items"].push_back(report.item_labels.at(item));
  }
  s["count"] = f.count;
  s["support"] = std::to_string(f.count) + "/" + std::to_string(report.n_rows);
  s["support_value"] =
      report.n_rows == 0
          ? 0.0
          : static_cast<double>(f.count) / static_cast<double>(report.n_rows);
  return s;
}

}  // namespace

std::string report_to_json(const RunReport& report, bool include_timings,
                           bool include_itemsets) {
  ordered_json doc;
  doc["dataset"] = report.dataset;
  doc["rows"] = report.n_rows;
  doc["items"] = report.n_items;
  doc["padded_length"] = report.padded_length;
  doc["minsup"] = threshold_json(report.minsup_text, report.minsup);
  doc["minconf"] = threshold_json(report.minconf_text, report.minconf);
  doc["mode"] = report.mode;
  doc["decision_attributes"] = report.decision_attributes;
  doc["threads"] = report.threads;
  if (report.store_directory) {
    doc["store"] = *report.store_directory;
  }
  doc["algorithms"] = ordered_json::array();
  for (const auto& algo : report.algos) {
    ordered_json a;
    a["name"] = algo.name;
    if (include_timings) {
      a["build_seconds"] = algo.build_seconds;
      a["mine_seconds"] = algo.mine_seconds;
    }
    ordered_json reads;
    reads["build"] = algo.bitmap_reads_build;
    reads["mine"] = algo.bitmap_reads_mine;
    a["bitmap_reads"] = std::move(reads);
    a["frequent_count"] = algo.result.frequents.size();
    a["frequents_by_level"] = algo.result.frequents_by_level();
    a["rule_count"] = algo.result.rules.size();
    if (include_itemsets) {
      a["frequent_itemsets"] = ordered_json::array();
      for (const auto& f : algo.result.frequents) {
        a["frequent_itemsets"].push_back(itemset_json(report, f));
      }
    }
    a["rules"] = ordered_json::array();
    for (const auto& rule : algo.result.rules) {
      a["rules"].push_back(rule_json(report, rule));
    }
    doc["algorithms"].push_back(std::move(a));
  }
  if (report.outputs_equal) {
    doc["outputs_equal"] = *report.outputs_equal;
  }
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "algo,antecedent,consequent,count,antecedent_count,support,confidence\n";
  for (const auto& algo : report.algos) {
    for (const auto& rule : algo.result.rules) {
      out << algo.name << ','
          << join_labels(report.item_labels, rule.antecedent, "|") << ','
          << report.item_labels.at(rule.consequent) << ',' << rule.count << ','
          << rule.antecedent_count << ',' << fixed6(rule.support(report.n_rows))
          << ',' << fixed6(rule.confidence()) << '\n';
    }
  }
  return out.str();
}

std::string report_to_text(const RunReport& report, bool include_itemsets) {
  std::ostringstream out;
  out << "dataset: " << report.dataset << " (" << report.n_rows << " rows, "
      << report.n_items << " items, padded to " << report.padded_length
      << ")\n";
  out << "thresholds: minsup " << report.minsup_text << " ("
      << report.minsup.str() << "), minconf " << report.minconf_text << " ("
      << report.minconf.str() << ")\n";
  out << "mode: " << report.mode << ", decision attributes:";
  for (const auto& attr : report.decision_attributes) {
    out << ' ' << attr;
  }
  out << "\nthreads: " << report.threads << '\n';
  if (report.store_directory) {
    out << "store: " << *report.store_directory << '\n';
  }
  for (const auto& algo : report.algos) {
    out << "algorithm " << algo.name << ": " << algo.result.frequents.size()
        << " frequent itemsets, " << algo.result.rules.size() << " rules, "
        << "build " << fixed4(algo.build_seconds) << "s, mine "
        << fixed4(algo.mine_seconds) << "s, bitmap reads build="
        << algo.bitmap_reads_build << " mine=" << algo.bitmap_reads_mine
        << '\n';
    if (include_itemsets) {
      out << "frequent itemsets (" << algo.name << "):\n";
      for (const auto& f : algo.result.frequents) {
        out << "  " << join_labels(report.item_labels, f.items, ", ")
            << "  count " << f.count << " (support " << f.count << '/'
            << report.n_rows << ")\n";
      }
    }
    out << "rules (" << algo.name << "):\n";
    if (algo.result.rules.empty()) {
      out << "  (none)\n";
    }
    for (const auto& rule : algo.result.rules) {
      out << "  " << join_labels(report.item_labels, rule.antecedent, ", ")
          << " -> " << report.item_labels.at(rule.consequent) << "  support "
          << rule.count << '/' << report.n_rows << " ("
          << fixed4(rule.support(report.n_rows)) << ")  confidence "
          << rule.count << '/' << rule.antecedent_count << " ("
          << fixed4(rule.confidence()) << ")\n";
    }
  }
  if (report.outputs_equal) {
    out << "outputs equal: " << (*report.outputs_equal ? "yes" : "no") << '\n';
  }
  return out.str();
}

}  // namespace ptmine
