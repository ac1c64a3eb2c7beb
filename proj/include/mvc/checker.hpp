#pragma once

// Combinatorial decision procedures on the constraint matrix.
//
// For a column set T with view blocks T1, T2 the number of basis unknowns
// touched by its polynomials is at most
//
//   r1' (g(T1) - r1)+ + r2' (g(T2) - r2)+ + r' (g(T) - r')+
//
// A pattern is finitely completable iff some set of m = basis_dof columns
// keeps that count at or above c(T) for every nonempty T inside it.

#include "mvc/constraint.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mvc {

enum class VerdictStatus { Finite, Infinite, UniqueCertified, Unknown };

std::string_view verdict_name(VerdictStatus status);

struct Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::size_t budget = 0;                     // m = basis_dof
  std::vector<std::size_t> certificate;       // the m-column witness
  std::vector<std::size_t> view1_certificate; // uniqueness: n - r1 view-1 columns
  std::vector<std::size_t> view2_certificate; // uniqueness: n - r2 view-2 columns
  std::vector<std::size_t> violated_subset;   // a T whose bound caps the rank below m
  std::optional<std::size_t> available;       // upper bound on independent polynomials (< budget)
  std::string reason;
};

enum class VerifyEngine {
  MinCut,     // exact, polynomial: one max-flow per forced column (pair)
  Enumerate,  // DFS over subsets with slack pruning, capped
};

enum class CandidateSearch {
  Auto,        // greedy, then exhaustive when c <= exhaustive_limit
  Exhaustive,
  Greedy,
};

struct CheckerOptions {
  VerifyEngine engine = VerifyEngine::MinCut;
  /// Only quantify over subsets whose columns come from distinct pattern
  /// columns. Forces the Enumerate engine.
  bool strict_subsets = false;
  std::uint64_t max_enum = std::uint64_t{1} << 24;
  CandidateSearch search = CandidateSearch::Auto;
  std::size_t exhaustive_limit = 28;
  std::size_t greedy_restarts = 8;
  std::uint64_t seed = 0;
};

/// r1'(g1 - r1)+ + r2'(g2 - r2)+ + r'(g - r')+ for the subset.
std::size_t count_bound(const ColumnSubset& subset);

/// A nonempty T inside `candidate` with count_bound(T) < c(T), if any.
/// Throws EnumerationCapExceeded when the Enumerate engine runs out of nodes.
std::optional<ColumnSubset> find_violation(const ColumnSubset& candidate, const CheckerOptions& options = {});

/// True iff every nonempty subset T of `candidate` has count_bound(T) >= c(T).
bool verify_candidate(const ColumnSubset& candidate, const CheckerOptions& options = {});

/// True iff every nonempty subset T of a single-view column set has
/// g(T) - rank >= c(T).
bool single_view_condition(const ColumnSubset& subset, std::size_t view_rank,
                           const CheckerOptions& options = {});

/// Upper bound on the number of independent polynomials a column set can
/// host: min over the probed T of count_bound(T) + c(S) - c(T).
std::size_t rank_upper_bound(const ColumnSubset& columns, std::vector<std::size_t>* witness = nullptr);

Verdict check_finite(const ConstraintMatrix& constraint, const ProblemShape& shape,
                     const CheckerOptions& options = {});

/// Pattern-level decision. A column sampled fewer than r_v times leaves its
/// coefficients underdetermined, so under-sampled columns are reported as
/// Infinite instead of raising.
Verdict check_finite(const SamplingPattern& pattern, const RankTriple& ranks, const CheckerOptions& options = {},
                     const PivotOptions& pivots = {});

/// Sufficient-only: UniqueCertified or Unknown.
Verdict check_unique(const ConstraintMatrix& constraint, const ProblemShape& shape,
                     const CheckerOptions& options = {});

}  // namespace mvc
