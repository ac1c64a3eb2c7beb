// mvc: completability analysis of two-view sampling patterns.
//
// Exit status: 0 decisive result, 2 Unknown, 1 error (JSON on stderr),
// 64 usage error.

#include "mvc/basis.hpp"
#include "mvc/bounds.hpp"
#include "mvc/checker.hpp"
#include "mvc/constraint.hpp"
#include "mvc/experiments.hpp"
#include "mvc/oracle.hpp"
#include "mvc/serialize.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mvc;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;

struct Globals {
  std::uint64_t seed = 0;
  std::size_t trials = 3;
  std::string arith = "prime";
  std::uint64_t prime = 2147483647;
  double svd_tol = 1e-9;
  std::uint64_t max_enum = std::uint64_t{1} << 24;
  std::string log_base = "e";
  bool strict_subsets = false;
  std::string format = "json";
  std::size_t threads = 0;
};

RankTriple parse_ranks(const std::string& text) {
  std::vector<std::size_t> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      parts.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::UsageError, "--ranks expects r,r1,r2 (nonnegative integers), got \"" + text + "\"");
    }
  }
  if (parts.size() != 3) throw Error(ErrorCode::UsageError, "--ranks expects exactly three values r,r1,r2");
  return RankTriple(parts[0], parts[1], parts[2]);
}

std::vector<std::size_t> parse_list(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(static_cast<std::size_t>(std::stoull(item)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::UsageError, std::string(flag) + " expects comma-separated integers");
    }
  }
  return out;
}

OracleConfig oracle_config(const Globals& g) {
  OracleConfig c;
  if (g.arith == "prime") {
    c.arithmetic = Arithmetic::PrimeField;
  } else if (g.arith == "float") {
    c.arithmetic = Arithmetic::Float;
  } else {
    throw Error(ErrorCode::UsageError, "--arith must be prime or float");
  }
  c.prime = g.prime;
  c.svd_tolerance = g.svd_tol;
  c.trials = g.trials;
  c.seed = g.seed;
  c.validate();
  return c;
}

CheckerOptions checker_options(const Globals& g, const std::string& search, const std::string& engine) {
  CheckerOptions o;
  o.strict_subsets = g.strict_subsets;
  o.max_enum = g.max_enum;
  o.seed = g.seed;
  if (search == "auto") {
    o.search = CandidateSearch::Auto;
  } else if (search == "exhaustive") {
    o.search = CandidateSearch::Exhaustive;
  } else if (search == "greedy") {
    o.search = CandidateSearch::Greedy;
  } else {
    throw Error(ErrorCode::UsageError, "--search must be auto, exhaustive or greedy");
  }
  if (engine == "mincut") {
    o.engine = VerifyEngine::MinCut;
  } else if (engine == "enumerate") {
    o.engine = VerifyEngine::Enumerate;
  } else {
    throw Error(ErrorCode::UsageError, "--engine must be mincut or enumerate");
  }
  return o;
}

PivotOptions pivot_options(const std::string& rule, std::uint64_t seed) {
  if (rule == "smallest") return {PivotRule::SmallestIndex, seed};
  if (rule == "random") return {PivotRule::SeededRandom, seed};
  throw Error(ErrorCode::UsageError, "--pivot must be smallest or random");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::IoError, "cannot write " + path);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

/// Top-level scalars as "key,value" lines.
std::string flat_csv(const Json& doc) {
  std::string out = "key,value\n";
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it->is_structured()) continue;
    out += it.key() + "," + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
  }
  return out;
}

std::string render(const Json& doc, const Globals& g) {
  if (g.format == "csv") return flat_csv(doc);
  return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite and unique completability of two-view sampling patterns"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Base random seed");
  app.add_option("--trials", g.trials, "Random points per oracle rank evaluation")->check(CLI::PositiveNumber);
  app.add_option("--arith", g.arith, "Oracle arithmetic: prime or float")->check(CLI::IsMember({"prime", "float"}));
  app.add_option("--prime", g.prime, "Prime modulus for exact rank");
  app.add_option("--svd-tol", g.svd_tol, "Relative singular-value threshold for float rank");
  app.add_option("--max-enum", g.max_enum, "Node cap for subset enumeration");
  app.add_option("--log-base", g.log_base, "Logarithm base of the bounds: e, 2 or 10")
      ->check(CLI::IsMember({"e", "2", "10"}));
  app.add_flag("--strict-subsets", g.strict_subsets,
               "Quantify only over subsets drawn from distinct pattern columns");
  app.add_option("--format", g.format, "Output format: json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads (0: hardware concurrency)");

  std::string pattern_path, ranks_text, out_path, search = "auto", engine = "mincut", pivot = "smallest";
  auto add_pattern_opts = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--pattern", pattern_path, "Sampling pattern file")->required();
    sub->add_option("--ranks", ranks_text, "Rank triple r,r1,r2")->required();
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--pivot", pivot, "Pivot rule: smallest or random");
  };

  auto* check = app.add_subcommand("check", "Decide finite completability from the pattern");
  add_pattern_opts(check);
  check->add_option("--search", search, "Candidate search: auto, exhaustive, greedy");
  check->add_option("--engine", engine, "Subset verification engine: mincut or enumerate");

  auto* unique = app.add_subcommand("unique", "Try to certify unique completability");
  add_pattern_opts(unique);
  unique->add_option("--search", search, "Candidate search: auto, exhaustive, greedy");
  unique->add_option("--engine", engine, "Subset verification engine: mincut or enumerate");

  auto* oracle = app.add_subcommand("oracle", "Generic Jacobian-rank finiteness test");
  add_pattern_opts(oracle);

  auto* build = app.add_subcommand("build-constraint", "Write the constraint matrix and its provenance");
  add_pattern_opts(build);

  std::size_t n = 0, m1 = 0, m2 = 0;
  double eps = 1e-4;
  auto* bounds = app.add_subcommand("bounds", "Evaluate sample-count and probability bounds");
  bounds->fallthrough();
  bounds->add_option("--n", n, "Rows")->required();
  bounds->add_option("--ranks", ranks_text, "Rank triple r,r1,r2")->required();
  bounds->add_option("--eps", eps, "Failure probability in (0,1)");
  bounds->add_option("--m1", m1, "Columns of view 1 (enables assumption checks)");
  bounds->add_option("--m2", m2, "Columns of view 2");
  bounds->add_option("--out", out_path, "Output file (default: stdout)");

  std::string basis_path;
  auto* canon = app.add_subcommand("canonicalize", "Canonical representative of a basis");
  canon->fallthrough();
  canon->add_option("--basis", basis_path, "Basis matrix file (n x r)")->required();
  canon->add_option("--ranks", ranks_text, "Rank triple r,r1,r2")->required();
  canon->add_option("--out", out_path, "Output file (default: stdout)");

  std::string out_dir = ".", r_list = "40,60,100";
  std::size_t sweep_n = 500, sweep_m1 = 50000, sweep_m2 = 50000;
  auto* sweep = app.add_subcommand("sweep", "Proposed vs baseline bound as r1 = r2 varies");
  sweep->fallthrough();
  sweep->add_option("--out-dir", out_dir, "Directory for figure3_r{r}.csv");
  sweep->add_option("--n", sweep_n, "Rows");
  sweep->add_option("--m1", sweep_m1, "Columns of view 1");
  sweep->add_option("--m2", sweep_m2, "Columns of view 2");
  sweep->add_option("--eps", eps, "Failure probability in (0,1)");
  sweep->add_option("--r", r_list, "Comma-separated joint ranks");

  std::string mode = "finite", decider = "oracle", l_text, records_path;
  std::size_t phase_trials = 100;
  bool no_checker = false;
  auto* phase = app.add_subcommand("phase", "Monte-Carlo success rate against samples per column");
  phase->fallthrough();
  phase->add_option("--n", n, "Rows")->required();
  phase->add_option("--m1", m1, "Columns of view 1")->required();
  phase->add_option("--m2", m2, "Columns of view 2")->required();
  phase->add_option("--ranks", ranks_text, "Rank triple r,r1,r2")->required();
  phase->add_option("--l", l_text, "Comma-separated samples per column (default: 0..n)");
  phase->add_option("--patterns", phase_trials, "Patterns per l")->check(CLI::PositiveNumber);
  phase->add_option("--mode", mode, "finite or unique")->check(CLI::IsMember({"finite", "unique"}));
  phase->add_option("--decider", decider, "Finite mode success criterion: oracle or checker")
      ->check(CLI::IsMember({"oracle", "checker"}));
  phase->add_flag("--no-checker", no_checker, "Skip the checker when the oracle decides");
  phase->add_option("--out", out_path, "CSV path (default: phase_{mode}.csv)");
  phase->add_option("--records", records_path, "Per-trial CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json(ErrorCode::UsageError, e.what()).dump() << "\n";
    return kExitUsage;
  }

  try {
    const LogBase base = parse_log_base(g.log_base);
    if (check->parsed() || unique->parsed() || oracle->parsed() || build->parsed()) {
      const auto ranks = parse_ranks(ranks_text);
      const auto pattern = load_pattern(pattern_path);
      pattern.shape().require_compatible(ranks);
      if (oracle->parsed()) {
        const auto config = oracle_config(g);
        const auto result = finiteness_oracle(pattern, ranks, config);
        emit(render(oracle_json(result, config), g), out_path);
        return kExitOk;
      }
      const auto cm = build_constraint(pattern, ranks, pivot_options(pivot, g.seed));
      if (build->parsed()) {
        if (out_path.empty()) {
          std::cout << format_constraint(cm);
        } else {
          write_file(out_path, format_constraint(cm));
          write_file(out_path + ".prov", format_provenance(cm, pattern.shape()));
        }
        return kExitOk;
      }
      const auto opts = checker_options(g, search, engine);
      const auto verdict =
          check->parsed() ? check_finite(cm, pattern.shape(), opts) : check_unique(cm, pattern.shape(), opts);
      emit(render(verdict_json(verdict, cm, pattern.shape()), g), out_path);
      return verdict.status == VerdictStatus::Unknown ? kExitUnknown : kExitOk;
    }
    if (bounds->parsed()) {
      const auto ranks = parse_ranks(ranks_text);
      std::optional<ProblemShape> shape;
      if (m1 > 0 || m2 > 0) shape = ProblemShape(n, m1, m2);
      emit(render(bound_report_json(bound_report(n, ranks, eps, base, shape)), g), out_path);
      return kExitOk;
    }
    if (canon->parsed()) {
      const auto ranks = parse_ranks(ranks_text);
      emit(format_matrix(canonicalize(load_matrix(basis_path), ranks)), out_path);
      return kExitOk;
    }
    if (sweep->parsed()) {
      SweepConfig sc{sweep_n, sweep_m1, sweep_m2, eps, base};
      std::filesystem::create_directories(out_dir);
      for (auto r : parse_list(r_list, "--r")) {
        const auto path = (std::filesystem::path(out_dir) / ("figure3_r" + std::to_string(r) + ".csv")).string();
        write_file(path, format_sweep_csv(figure3_sweep(sc, r)));
        std::cout << path << "\n";
      }
      return kExitOk;
    }
    if (phase->parsed()) {
      PhaseConfig pc;
      pc.shape = ProblemShape(n, m1, m2);
      pc.ranks = parse_ranks(ranks_text);
      if (l_text.empty()) {
        for (std::size_t l = 0; l <= n; ++l) pc.l_values.push_back(l);
      } else {
        pc.l_values = parse_list(l_text, "--l");
      }
      pc.trials = phase_trials;
      pc.seed = g.seed;
      pc.mode = mode == "unique" ? PhaseMode::Unique : PhaseMode::Finite;
      pc.decider = decider == "checker" ? PhaseDecider::Checker : PhaseDecider::Oracle;
      pc.run_checker = !no_checker;
      pc.threads = g.threads;
      pc.oracle = oracle_config(g);
      pc.checker = checker_options(g, search, engine);
      const auto result = phase_transition(pc);
      const std::string path = out_path.empty() ? "phase_" + mode + ".csv" : out_path;
      write_file(path, format_phase_csv(result.rows));
      if (!records_path.empty()) write_file(records_path, format_records_csv(result.records));
      std::cout << path << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << "\n";
    return e.code() == ErrorCode::UsageError ? kExitUsage : kExitError;
  } catch (const std::exception& e) {
    std::cerr << error_json(ErrorCode::IoError, e.what()).dump() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
