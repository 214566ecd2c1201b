/// @file report.hpp
/// @brief JSON and table renderings of steady states and search results.

#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bnclass/network.hpp"
#include "bnclass/search.hpp"

namespace bnclass {

enum class Format { Table, Json };

namespace detail {

/// Component names of @p set in ASCII order.
inline std::vector<std::string> sorted_names(const VarSet& set, const VarTable& vars) {
  std::vector<std::string> out;
  for (Var v : set) out.push_back(vars.name(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string state_text(const State& s) {
  std::string out;
  for (bool b : s) out += b ? '1' : '0';
  return out;
}

}  // namespace detail

/// Minimal sets ordered by cardinality, then by their ASCII-sorted name lists.
inline std::vector<const MinimalClassifier*> report_order(const SearchResult& r, const VarTable& vars) {
  std::vector<const MinimalClassifier*> out;
  for (const auto& m : r.minimal_sets) out.push_back(&m);
  std::stable_sort(out.begin(), out.end(), [&](const MinimalClassifier* a, const MinimalClassifier* b) {
    if (a->components.size() != b->components.size()) return a->components.size() < b->components.size();
    return detail::sorted_names(a->components, vars) < detail::sorted_names(b->components, vars);
  });
  return out;
}

inline nlohmann::ordered_json result_json(const SearchResult& r, const VarTable& vars) {
  nlohmann::ordered_json j;
  j["phenotype"] = r.phenotype;
  j["minimal_sets"] = nlohmann::ordered_json::array();
  for (const auto* m : report_order(r, vars))
    j["minimal_sets"].push_back({{"components", detail::sorted_names(m->components, vars)}, {"classifier", m->text}});
  j["constant"] = r.constant ? nlohmann::ordered_json(*r.constant) : nlohmann::ordered_json(nullptr);
  j["stats"] = {{"iterations", r.stats.iterations}, {"gb_runs", r.stats.gb_runs}, {"nf_runs", r.stats.nf_runs}};
  if (!r.complete) j["complete"] = false;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline std::string emit_results(const std::vector<SearchResult>& results, const VarTable& vars, Format format) {
  if (format == Format::Json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : results) arr.push_back(result_json(r, vars));
    return arr.dump(2) + "\n";
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& r : results) {
    if (!first) out << "\n";
    first = false;
    out << "Phenotype: " << r.phenotype << "\n";
    if (!r.error.empty()) {
      out << "error: " << r.error << "\n";
      continue;
    }
    if (r.constant) {
      out << "constant classifier: " << (*r.constant ? "1" : "0") << "\n";
      continue;
    }
    const auto rows = report_order(r, vars);
    std::vector<std::string> left;
    std::size_t width = std::string("Components").size();
    for (const auto* m : rows) {
      std::string cell;
      for (const auto& name : detail::sorted_names(m->components, vars)) cell += (cell.empty() ? "" : ", ") + name;
      width = std::max(width, cell.size());
      left.push_back(std::move(cell));
    }
    out << "Components" << std::string(width - 10, ' ') << " | Expression\n";
    out << std::string(width, '-') << "-+-" << std::string(10, '-') << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << left[i] << std::string(width - left[i].size(), ' ') << " | " << rows[i]->text << "\n";
    out << rows.size() << " minimal classifier" << (rows.size() == 1 ? "" : "s");
    if (!r.complete) out << " (incomplete: limit reached)";
    out << "\n";
  }
  return out.str();
}

/// Steady states with an optional phenotype assignment.
inline std::string emit_states(const BooleanNetwork& bn, const std::vector<State>& states,
                               const std::optional<PhenotypeReport>& phenotypes, Format format) {
  const auto& names = bn.vars().names();
  auto labels = [&](std::size_t i) {
    std::vector<std::string> out;
    if (!phenotypes) return out;
    for (std::size_t k = 0; k < phenotypes->phenotypes.size(); ++k)
      if (phenotypes->membership[i][k]) out.push_back(phenotypes->phenotypes[k]);
    return out;
  };
  if (format == Format::Json) {
    nlohmann::ordered_json j;
    j["components"] = names;
    j["count"] = states.size();
    j["states"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
      nlohmann::ordered_json s;
      s["values"] = detail::state_text(states[i]);
      if (phenotypes) s["phenotypes"] = labels(i);
      j["states"].push_back(std::move(s));
    }
    if (phenotypes) {
      j["unassigned"] = phenotypes->unassigned;
      j["overlapping"] = phenotypes->overlapping;
      j["disjoint"] = phenotypes->disjoint();
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "# components:";
  for (const auto& n : names) out << " " << n;
  out << "\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    out << detail::state_text(states[i]);
    if (phenotypes) {
      const auto l = labels(i);
      out << "  ";
      if (l.empty()) out << "-";
      for (std::size_t k = 0; k < l.size(); ++k) out << (k ? "," : "") << l[k];
    }
    out << "\n";
  }
  out << states.size() << " steady state" << (states.size() == 1 ? "" : "s");
  if (phenotypes)
    out << ", " << phenotypes->unassigned << " unassigned, " << phenotypes->overlapping << " overlapping";
  out << "\n";
  return out.str();
}

}  // namespace bnclass
