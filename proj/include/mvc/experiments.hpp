#pragma once

// Bound-comparison sweeps and Monte-Carlo phase-transition studies.

#include "mvc/bounds.hpp"
#include "mvc/checker.hpp"
#include "mvc/oracle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mvc {

struct SweepRow {
  std::size_t r1 = 0;  // = r2
  std::size_t l_proposed = 0;
  std::size_t l_baseline = 0;
  bool assumptions_ok = false;
};

struct SweepConfig {
  std::size_t n = 500;
  std::size_t m1 = 50000;
  std::size_t m2 = 50000;
  double eps = 1e-4;
  LogBase base = LogBase::E;
};

/// One row per r1 = r2 in [ceil(r/2), r].
std::vector<SweepRow> figure3_sweep(const SweepConfig& config, std::size_t r);
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

enum class PhaseMode { Finite, Unique };
enum class PhaseDecider { Oracle, Checker };

struct PhaseConfig {
  ProblemShape shape{1, 1, 1};
  RankTriple ranks{0, 0, 0};
  std::vector<std::size_t> l_values;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  PhaseMode mode = PhaseMode::Finite;
  /// Finite mode only: which verdict defines success. Unique mode always
  /// uses the checker.
  PhaseDecider decider = PhaseDecider::Oracle;
  /// Also run the checker in finite/oracle mode, for agreement statistics.
  bool run_checker = true;
  std::size_t threads = 0;  // 0: hardware concurrency
  OracleConfig oracle;
  CheckerOptions checker;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t l = 0;
  std::size_t trial = 0;
  bool assumption1 = true;
  std::optional<VerdictStatus> checker_verdict;
  std::optional<VerdictStatus> oracle_verdict;
  double wall_time = 0.0;  // seconds
};

struct PhaseRow {
  std::size_t l = 0;
  double success_rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double unknown_rate = 0.0;
  std::size_t trials = 0;               // denominator of success_rate
  std::size_t assumption1_failures = 0; // excluded from every rate
  std::size_t unknown = 0;
};

struct PhaseResult {
  std::vector<PhaseRow> rows;
  std::vector<TrialRecord> records;  // ordered by (l, trial)
};

/// Seed of trial t at sample count l.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t l, std::size_t trial);

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t total);

PhaseResult phase_transition(const PhaseConfig& config);
std::string format_phase_csv(const std::vector<PhaseRow>& rows);
std::string format_records_csv(const std::vector<TrialRecord>& records);

}  // namespace mvc
