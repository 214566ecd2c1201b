/// @file cli.hpp
/// @brief Command-line front end: steady-states, classify, verify, nf.
///
/// Exit codes: 0 success, 1 usage error, 2 parse error, 3 overlapping
/// phenotypes (verify), 4 limit exceeded, 5 analysis failure (oracle
/// mismatch in verify, or a phenotype whose search failed).

#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnclass/error.hpp"
#include "bnclass/network.hpp"
#include "bnclass/report.hpp"
#include "bnclass/search.hpp"

namespace bnclass {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitOverlap = 3,
  kExitLimit = 4,
  kExitFailure = 5,
};

namespace detail {

/// Usage problem found after argument parsing (unreadable file, unknown
/// phenotype name).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ParseError tagged with the input it came from.
class SourceParseError : public std::runtime_error {
 public:
  SourceParseError(const std::string& source, const ParseError& e) : std::runtime_error(source + ": " + e.what()) {}
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline BooleanNetwork load_network(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_network(text);
  } catch (const ParseError& e) {
    throw SourceParseError(path, e);
  }
}

inline std::vector<PhenotypeSpec> load_phenotypes(const std::string& path, const BooleanNetwork& bn) {
  const std::string text = read_file(path);
  try {
    return parse_phenotypes(text, bn);
  } catch (const ParseError& e) {
    throw SourceParseError(path, e);
  }
}

inline Format parse_format(const std::string& s) { return s == "json" ? Format::Json : Format::Table; }

}  // namespace detail

/// Runs the command line @p argv, writing results to @p out and diagnostics
/// to @p err. Returns the exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal classifiers of Boolean network steady states"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string model, pheno_path, format = "table";

  auto* ss = app.add_subcommand("steady-states", "List the fixed points of a network");
  std::size_t limit = 1'000'000;
  ss->add_option("model", model, "Model file")->required();
  ss->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
  ss->add_option("--limit", limit, "Maximum number of states to list")->check(CLI::PositiveNumber);
  ss->add_option("--phenotypes", pheno_path, "Phenotype file for labelling the states");

  auto* cl = app.add_subcommand("classify", "Minimal classifiers per phenotype");
  std::string phenotype, select = "min-card", engine = "auto";
  bool gb_cache = false, no_exclusion = false;
  unsigned jobs = 1;
  std::size_t max_iterations = 0;
  double time_limit = 0;
  cl->add_option("model", model, "Model file")->required();
  cl->add_option("--phenotypes", pheno_path, "Phenotype file")->required();
  cl->add_option("--phenotype", phenotype, "Only this phenotype");
  cl->add_option("--select", select, "Candidate selection")->check(CLI::IsMember({"min-card", "first"}));
  cl->add_flag("--gb-cache", gb_cache, "Reuse bases through marked-basis cones");
  cl->add_flag("--no-exclusion", no_exclusion, "Disable the exclusion families (slower, same result)");
  cl->add_option("--engine", engine, "Basis engine")->check(CLI::IsMember({"auto", "buchberger", "points"}));
  cl->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
  cl->add_option("--jobs", jobs, "Phenotypes searched in parallel")->check(CLI::Range(1u, 256u));
  cl->add_option("--max-iterations", max_iterations, "Iteration limit per phenotype (0 = none)");
  cl->add_option("--time-limit", time_limit, "Time limit per phenotype in seconds (0 = none)")->check(CLI::NonNegativeNumber);

  auto* vf = app.add_subcommand("verify", "Compare the search with the exhaustive oracle");
  std::size_t max_n = 16;
  vf->add_option("model", model, "Model file")->required();
  vf->add_option("--phenotypes", pheno_path, "Phenotype file")->required();
  vf->add_option("--max-n", max_n, "Largest component count the oracle accepts (at most 32)")->check(CLI::Range(1, 32));

  auto* nf = app.add_subcommand("nf", "Normal form of an expression modulo the steady-state ideal");
  std::string expr, order;
  nf->add_option("model", model, "Model file")->required();
  nf->add_option("--expr", expr, "Expression")->required();
  nf->add_option("--order", order, "Lex order, most significant first, e.g. \"x3>x2>x1\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const BooleanNetwork bn = detail::load_network(model);

    if (*ss) {
      std::optional<PhenotypeReport> report;
      const auto states = enumerate_steady_states(bn, limit);
      if (!pheno_path.empty()) report = check_phenotypes(states, detail::load_phenotypes(pheno_path, bn));
      out << emit_states(bn, states, report, detail::parse_format(format));
      return kExitOk;
    }

    if (*cl) {
      auto specs = detail::load_phenotypes(pheno_path, bn);
      if (!phenotype.empty()) {
        std::vector<PhenotypeSpec> chosen;
        for (const auto& s : specs)
          if (s.name == phenotype) chosen.push_back(s);
        if (chosen.empty()) throw detail::UsageError("no phenotype named '" + phenotype + "'");
        specs = std::move(chosen);
      }
      SearchConfig config;
      config.selection = select == "first" ? Selection::First : Selection::MinCardinality;
      config.engine = engine == "buchberger" ? BasisEngine::Buchberger : engine == "points" ? BasisEngine::Points : BasisEngine::Auto;
      config.gb_cone_cache = gb_cache;
      config.exclusion_sets = !no_exclusion;
      config.max_iterations = max_iterations;
      config.time_limit = std::chrono::milliseconds(static_cast<long long>(time_limit * 1000));
      const MulticlassResult mc = run_multiclass(bn, specs, config, jobs);
      if (!mc.phenotypes.disjoint())
        err << "warning: " << mc.phenotypes.overlapping << " steady states belong to more than one phenotype\n";
      out << emit_results(mc.results, bn.vars(), detail::parse_format(format));
      int code = kExitOk;
      for (const auto& r : mc.results) {
        if (!r.error.empty()) {
          err << "error: " << r.phenotype << ": " << r.error << "\n";
          code = std::max(code, static_cast<int>(kExitFailure));
        } else if (!r.complete) {
          err << "error: " << r.phenotype << ": limit reached before the search finished\n";
          code = code == kExitOk ? kExitLimit : code;
        }
      }
      return code;
    }

    if (*vf) {
      const auto specs = detail::load_phenotypes(pheno_path, bn);
      const auto states = enumerate_steady_states(bn);
      const PhenotypeReport report = check_phenotypes(states, specs);
      if (!report.disjoint()) {
        err << "error: " << report.overlapping << " steady states belong to more than one phenotype\n";
        return kExitOverlap;
      }
      if (bn.size() > max_n)
        throw LimitExceeded("network has " + std::to_string(bn.size()) + " components, above --max-n " + std::to_string(max_n));
      if (states.empty()) throw UnitIdeal();
      int code = kExitOk;
      for (const auto& spec : specs) {
        const auto oracle = brute_force_solutions(spec.readout, states, bn.size(), max_n);
        const auto found = compute_solutions(spec.readout, steady_state_ideal(bn), bn.vars());
        std::vector<VarSet> sets;
        for (const auto& m : found.minimal_sets) sets.push_back(m.components);
        const bool constant_ok = oracle.constant == found.constant.has_value();
        const bool ok = constant_ok && sets == oracle.minimal_sets;
        out << spec.name << ": ";
        if (oracle.constant)
          out << "constant";
        else
          out << oracle.minimal_sets.size() << " minimal set" << (oracle.minimal_sets.size() == 1 ? "" : "s");
        out << (ok ? ", search agrees with oracle\n" : ", MISMATCH\n");
        if (!ok) code = kExitFailure;
      }
      return code;
    }

    if (*nf) {
      BoolPoly f;
      LexOrder ord;
      try {
        f = parse_poly(expr, bn.vars(), bn.store());
      } catch (const ParseError& e) {
        throw detail::SourceParseError("--expr", e);
      }
      try {
        ord = parse_lex_order(order, bn.vars());
      } catch (const ParseError& e) {
        throw detail::SourceParseError("--order", e);
      }
      const MarkedGB gb = buchberger(steady_state_ideal(bn), ord);
      if (gb.is_unit()) throw UnitIdeal();
      out << to_text(normal_form(f, gb), bn.vars(), ord) << "\n";
      return kExitOk;
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const detail::SourceParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace bnclass
