#pragma once

// Canonical representatives of span-equivalence classes of multi-view bases.
//
// V = [V1 | V2 | V3] with widths (r1', r', r2'). Two bases are equivalent when
//   V1' = [V1|V2] A1,  V2' = V2 A2,  V3' = [V2|V3] A3.
// The canonical member has, with M = max(r1', r2'):
//   B1: V1 rows [0, r1')          = I
//   B2: V3 rows [0, r2')          = I
//   B3: V2 rows [M, M + r')       = I
//   B4: V1 rows [M, M + r')       = 0
//   B5: V3 rows [M, M + r')       = 0

#include "mvc/core.hpp"
#include "mvc/pattern.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <utility>

namespace mvc {

struct EquivalenceWitness {
  Eigen::MatrixXd A1;  // r1 x r1'
  Eigen::MatrixXd A2;  // r' x r'
  Eigen::MatrixXd A3;  // r2 x r2'
};

/// Throws DimensionMismatch unless V is n x r with n >= r.
void require_basis_shape(const Eigen::MatrixXd& V, const RankTriple& ranks);

/// Maps V to [[V1|V2] A1 | V2 A2 | [V2|V3] A3].
Eigen::MatrixXd apply_equivalence(const Eigen::MatrixXd& V, const RankTriple& ranks,
                                  const EquivalenceWitness& witness);

/// Standard-normal witness matrices; full column rank with probability one.
EquivalenceWitness random_equivalence(const RankTriple& ranks, std::uint64_t seed);

/// The witness taking V to its canonical representative. Throws
/// SingularRowBlock when a required row block is not invertible.
EquivalenceWitness canonical_witness(const Eigen::MatrixXd& V, const RankTriple& ranks);

Eigen::MatrixXd canonicalize(const Eigen::MatrixXd& V, const RankTriple& ranks);

/// Largest deviation of the five fixed blocks from their canonical values.
double canonical_deviation(const Eigen::MatrixXd& V, const RankTriple& ranks);
bool is_canonical(const Eigen::MatrixXd& V, const RankTriple& ranks, double tol = 1e-9);

/// Equal column spaces for V2, [V1|V2] and [V2|V3], by numerical rank.
bool is_span_equivalent(const Eigen::MatrixXd& V, const Eigen::MatrixXd& W, const RankTriple& ranks,
                        double rel_tol = 1e-8);

/// Coefficients reproducing each column's pivot observations: the r_v
/// smallest-index observed rows of every column. U holds the observed values
/// (other entries are ignored). Throws Assumption1Violated or
/// SingularPivotSystem.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> solve_coefficients(const Eigen::MatrixXd& V,
                                                               const SamplingPattern& pattern,
                                                               const Eigen::MatrixXd& U,
                                                               const RankTriple& ranks);

/// Text format: a "rows cols" line, then one line of values per row.
Eigen::MatrixXd parse_matrix(std::istream& in);
Eigen::MatrixXd load_matrix(const std::string& path);
std::string format_matrix(const Eigen::MatrixXd& M);

}  // namespace mvc
