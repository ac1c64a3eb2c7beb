#pragma once

// Closed-form sample-count and sampling-probability bounds.
//
// Every l-bound has the shape  l > max{ log branch, rank terms }  and is
// reported as the smallest integer strictly above the real value.

#include "mvc/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mvc {

enum class LogBase { E, Two, Ten };

std::string_view log_base_name(LogBase base);
/// Accepts "e", "2", "10". Throws UsageError otherwise.
LogBase parse_log_base(std::string_view text);

/// One evaluated bound with its intermediates.
struct BoundTerms {
  double log_n = 0.0;          // coefficient * log(n / eps)
  double log_rank = 0.0;       // 3 * max log(c r / eps) over nonzero r (0 when none)
  std::string log_rank_source; // "r1p", "r2p", "rp" or "none"
  double log_branch = 0.0;     // full logarithmic expression
  std::vector<std::pair<std::string, double>> rank_terms;  // e.g. {"2r1", 100}
  double value = 0.0;          // max of all branches
  std::string branch;          // which branch attains the max
  std::size_t l = 0;           // smallest integer > value
};

/// 9 log(n/eps) + 3 max log(3 r/eps) + 6 against 2 r1, 2 r2.
BoundTerms finite_bound_terms(std::size_t n, const RankTriple& ranks, double eps, LogBase base = LogBase::E);
/// As above with 6 r inside the logs.
BoundTerms unique_bound_terms(std::size_t n, const RankTriple& ranks, double eps, LogBase base = LogBase::E);
/// 12 log(n/eps) against 2 r1, 2 r2, 2 r.
BoundTerms baseline_bound_terms(std::size_t n, const RankTriple& ranks, double eps, LogBase base = LogBase::E);

std::size_t finite_sample_bound(std::size_t n, const RankTriple& ranks, double eps, LogBase base = LogBase::E);
std::size_t unique_sample_bound(std::size_t n, const RankTriple& ranks, double eps, LogBase base = LogBase::E);
std::size_t baseline_sample_bound(std::size_t n, const RankTriple& ranks, double eps, LogBase base = LogBase::E);

/// Per-entry observation probability threshold: value / n + n^(-1/4).
/// May exceed 1, meaning the guarantee is vacuous at this n.
double probability_bounds(std::size_t n, const RankTriple& ranks, double eps, bool unique,
                          LogBase base = LogBase::E);

struct AssumptionCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// n/6 >= max{r1, r2, r'}, the two per-view column counts and the combined
/// count; the view terms use r_v' + 1 when `unique`.
std::vector<AssumptionCheck> check_dimension_assumptions(const ProblemShape& shape, const RankTriple& ranks,
                                                         bool unique);
bool all_pass(const std::vector<AssumptionCheck>& checks);

/// (1 - eps) (1 - exp(-sqrt(n)/2))^(m1 + m2); eps in [0, 1).
double bernoulli_success_probability(const ProblemShape& shape, double eps);

struct BoundReport {
  std::size_t n = 0;
  RankTriple ranks{0, 0, 0};
  double eps = 0.0;
  LogBase base = LogBase::E;
  BoundTerms finite, unique, baseline;
  std::size_t l_finite = 0;
  std::size_t l_unique = 0;
  std::size_t l_baseline = 0;
  double p_finite = 0.0;
  double p_unique = 0.0;
  std::optional<ProblemShape> shape;  // assumptions and success probability need m1, m2
  std::vector<AssumptionCheck> assumptions_finite;
  std::vector<AssumptionCheck> assumptions_unique;
  std::optional<double> success_prob_bernoulli;
};

BoundReport bound_report(std::size_t n, const RankTriple& ranks, double eps, LogBase base = LogBase::E,
                         std::optional<ProblemShape> shape = std::nullopt);

}  // namespace mvc
