#pragma once

// Generic-point Jacobian rank of the sampled-entry polynomial system.
//
// Unknowns are the free entries of a canonical basis V (identity / zero
// blocks fixed) followed by T1 and T2. Each observed entry U(x, i) of view v
// contributes the bilinear equation  U(x, i) = sum_k V(x, c_v + k) T_v(k, i).
// With every column sampled at least r_v times the pattern is finitely completable iff the Jacobian has
// full column rank at a generic point.

#include "mvc/checker.hpp"
#include "mvc/constraint.hpp"
#include "mvc/pattern.hpp"

#include <cstdint>
#include <vector>

namespace mvc {

struct Equation {
  int view = 1;
  std::size_t row = 0;
  std::size_t column = 0;  // global pattern column
};

class PolynomialSystem {
 public:
  static constexpr std::size_t kFixed = static_cast<std::size_t>(-1);

  PolynomialSystem(const ProblemShape& shape, const RankTriple& ranks);

  const ProblemShape& shape() const noexcept { return shape_; }
  const RankTriple& ranks() const noexcept { return ranks_; }

  std::size_t basis_variables() const noexcept { return basis_vars_; }
  std::size_t variable_count() const noexcept { return t2_offset_ + ranks_.r2() * shape_.m2(); }
  std::size_t equation_count() const noexcept { return equations_.size(); }
  const std::vector<Equation>& equations() const noexcept { return equations_; }

  /// Variable index of V(x, c), or kFixed for canonical constants.
  std::size_t basis_variable(std::size_t x, std::size_t c) const { return basis_index_[x * ranks_.r() + c]; }
  /// Value of a fixed canonical entry (0 or 1).
  int fixed_value(std::size_t x, std::size_t c) const { return fixed_value_[x * ranks_.r() + c]; }
  /// Variable index of T_view(k, i), i local to the view.
  std::size_t coefficient_variable(int view, std::size_t k, std::size_t i) const;
  /// First basis column used by a view: 0 for view 1, r1' for view 2.
  std::size_t view_column_offset(int view) const noexcept { return view == 1 ? 0 : ranks_.r1p(); }

  void add_equation(const Equation& eq);
  /// Index of the equation for observed entry (row, column), or kFixed.
  std::size_t equation_index(std::size_t row, std::size_t column) const;

 private:
  ProblemShape shape_;
  RankTriple ranks_;
  std::vector<std::size_t> basis_index_;
  std::vector<int> fixed_value_;
  std::size_t basis_vars_ = 0;
  std::size_t t1_offset_ = 0;
  std::size_t t2_offset_ = 0;
  std::vector<Equation> equations_;
  std::vector<std::size_t> lookup_;
};

enum class Arithmetic { PrimeField, Float };

struct OracleConfig {
  Arithmetic arithmetic = Arithmetic::PrimeField;
  std::uint64_t prime = 2147483647;  // 2^31 - 1
  double svd_tolerance = 1e-9;
  std::size_t trials = 3;
  std::uint64_t seed = 0;

  /// Throws InvalidConfig: p must be a prime in (2^30, 2^32), the tolerance
  /// in (0, 1e-2), trials positive.
  void validate() const;
};

PolynomialSystem build_system(const SamplingPattern& pattern, const RankTriple& ranks);

/// The Jacobian evaluated at one random point; row subsets can be ranked
/// repeatedly without re-evaluation.
class JacobianPoint {
 public:
  JacobianPoint(const PolynomialSystem& system, const OracleConfig& config, std::uint64_t point_seed);

  std::size_t rank() const;
  std::size_t rank(const std::vector<std::size_t>& equation_ids) const;

 private:
  const PolynomialSystem& system_;
  OracleConfig config_;
  std::vector<std::vector<std::pair<std::size_t, double>>> float_rows_;
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> prime_rows_;
};

struct RankReport {
  std::size_t rank = 0;
  std::vector<std::size_t> trial_ranks;
  std::size_t variables = 0;
  std::size_t equations = 0;
  bool reseeded = false;
};

/// Max rank over config.trials random points. Trials that disagree are
/// re-drawn once with a fresh seed; persistent disagreement throws
/// DegenerateRandomPoint.
RankReport jacobian_generic_rank(const PolynomialSystem& system, const OracleConfig& config);

struct OracleResult {
  VerdictStatus status = VerdictStatus::Unknown;  // Finite or Infinite
  RankReport rank;
  std::size_t basis_dof = 0;
};

/// Throws Assumption1Violated when some column is under-sampled.
OracleResult finiteness_oracle(const SamplingPattern& pattern, const RankTriple& ranks, const OracleConfig& config);

/// Number of algebraically independent polynomials among those encoded by
/// `subset`: rank of {pivot equations of touched source columns} together
/// with the subset's own equations, minus the pivot equation count. `system`
/// must be built from the pattern the constraint matrix came from.
std::size_t independent_count(const ColumnSubset& subset, const PolynomialSystem& system,
                              const OracleConfig& config);

/// Same, evaluated at one fixed point.
std::size_t independent_count(const ColumnSubset& subset, const PolynomialSystem& system,
                              const JacobianPoint& point);

}  // namespace mvc
