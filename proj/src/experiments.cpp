#include "mvc/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace mvc {

std::vector<SweepRow> figure3_sweep(const SweepConfig& config, std::size_t r) {
  const ProblemShape shape(config.n, config.m1, config.m2);
  std::vector<SweepRow> rows;
  for (std::size_t r1 = (r + 1) / 2; r1 <= r; ++r1) {
    const RankTriple ranks(r, r1, r1);
    SweepRow row;
    row.r1 = r1;
    row.l_proposed = finite_sample_bound(config.n, ranks, config.eps, config.base);
    row.l_baseline = baseline_sample_bound(config.n, ranks, config.eps, config.base);
    row.assumptions_ok = all_pass(check_dimension_assumptions(shape, ranks, false));
    rows.push_back(row);
  }
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "r1,l_proposed,l_baseline,assumptions_ok\n";
  for (const auto& row : rows) {
    out += std::to_string(row.r1) + "," + std::to_string(row.l_proposed) + "," + std::to_string(row.l_baseline) +
           "," + (row.assumptions_ok ? "1" : "0") + "\n";
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t l, std::size_t trial) {
  return derive_seed(derive_seed(seed, l), trial);
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t total) {
  if (total == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

TrialRecord run_trial(const PhaseConfig& cfg, std::size_t l, std::size_t t) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.seed = trial_seed(cfg.seed, l, t);
  rec.l = l;
  rec.trial = t;
  const auto pattern = gen_fixed_per_column(cfg.shape, l, rec.seed);
  rec.assumption1 = validate_assumption1(pattern, cfg.ranks);
  if (rec.assumption1) {
    const bool unique = cfg.mode == PhaseMode::Unique;
    const bool want_checker = unique || cfg.run_checker || cfg.decider == PhaseDecider::Checker;
    const bool want_oracle = !unique || cfg.decider == PhaseDecider::Oracle;
    if (want_checker) {
      const auto cm = build_constraint(pattern, cfg.ranks);
      rec.checker_verdict =
          (unique ? check_unique(cm, cfg.shape, cfg.checker) : check_finite(cm, cfg.shape, cfg.checker)).status;
    }
    if (want_oracle) {
      OracleConfig oc = cfg.oracle;
      oc.seed = derive_seed(rec.seed, 0x0AC1E);
      rec.oracle_verdict = finiteness_oracle(pattern, cfg.ranks, oc).status;
    }
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

PhaseResult phase_transition(const PhaseConfig& cfg) {
  cfg.shape.require_compatible(cfg.ranks);
  if (cfg.mode == PhaseMode::Finite && cfg.decider == PhaseDecider::Oracle) cfg.oracle.validate();
  for (auto l : cfg.l_values) {
    if (l > cfg.shape.n()) throw Error(ErrorCode::LExceedsN, "l = " + std::to_string(l) + " exceeds n");
  }
  const std::size_t total = cfg.l_values.size() * cfg.trials;
  PhaseResult result;
  result.records.resize(total);

  std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(total, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t job; (job = next.fetch_add(1)) < total;) {
      try {
        result.records[job] = run_trial(cfg, cfg.l_values[job / cfg.trials], job % cfg.trials);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t li = 0; li < cfg.l_values.size(); ++li) {
    PhaseRow row;
    row.l = cfg.l_values[li];
    std::size_t success = 0, valid = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto& rec = result.records[li * cfg.trials + t];
      if (!rec.assumption1) {
        ++row.assumption1_failures;
        continue;
      }
      ++valid;
      if (cfg.mode == PhaseMode::Unique) {
        if (*rec.checker_verdict == VerdictStatus::UniqueCertified) {
          ++success;
        } else {
          ++row.unknown;
        }
        ++row.trials;
      } else if (cfg.decider == PhaseDecider::Checker) {
        if (*rec.checker_verdict == VerdictStatus::Unknown) {
          ++row.unknown;
          continue;
        }
        ++row.trials;
        if (*rec.checker_verdict == VerdictStatus::Finite) ++success;
      } else {
        ++row.trials;
        if (*rec.oracle_verdict == VerdictStatus::Finite) ++success;
        if (rec.checker_verdict && *rec.checker_verdict == VerdictStatus::Unknown) ++row.unknown;
      }
    }
    row.success_rate = row.trials ? static_cast<double>(success) / static_cast<double>(row.trials) : 0.0;
    std::tie(row.ci_low, row.ci_high) = wilson_interval(success, row.trials);
    row.unknown_rate = valid ? static_cast<double>(row.unknown) / static_cast<double>(valid) : 0.0;
    result.rows.push_back(row);
  }
  return result;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string verdict_or_empty(const std::optional<VerdictStatus>& v) {
  return v ? std::string(verdict_name(*v)) : std::string();
}

}  // namespace

std::string format_phase_csv(const std::vector<PhaseRow>& rows) {
  std::string out = "l,success_rate,ci_low,ci_high,unknown_rate,trials\n";
  for (const auto& row : rows) {
    out += std::to_string(row.l) + "," + num(row.success_rate) + "," + num(row.ci_low) + "," + num(row.ci_high) +
           "," + num(row.unknown_rate) + "," + std::to_string(row.trials) + "\n";
  }
  return out;
}

std::string format_records_csv(const std::vector<TrialRecord>& records) {
  std::string out = "l,trial,seed,assumption1,checker_verdict,oracle_verdict,wall_time\n";
  for (const auto& rec : records) {
    out += std::to_string(rec.l) + "," + std::to_string(rec.trial) + "," + std::to_string(rec.seed) + "," +
           (rec.assumption1 ? "1" : "0") + "," + verdict_or_empty(rec.checker_verdict) + "," +
           verdict_or_empty(rec.oracle_verdict) + "," + num(rec.wall_time) + "\n";
  }
  return out;
}

}  // namespace mvc
