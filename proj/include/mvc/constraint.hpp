#pragma once

// The binary constraint matrix: one column per observed entry beyond the
// r_v pivot samples of its source column. Each column marks the r_v pivot
// rows plus one extra row, i.e. the rows touched by one polynomial in V.

#include "mvc/core.hpp"
#include "mvc/pattern.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mvc {

struct ConstraintColumn {
  int view = 1;                         // 1 or 2
  std::size_t source_column = 0;        // column of the sampling pattern (0-based, global)
  std::vector<std::size_t> pivot_rows;  // r_view rows, ascending
  std::size_t extra_row = 0;
  Bitset support;                       // pivot_rows plus extra_row
};

enum class PivotRule {
  SmallestIndex,  // the r_v observed rows with smallest index
  SeededRandom,   // a uniformly random r_v-subset of the observed rows
};

struct PivotOptions {
  PivotRule rule = PivotRule::SmallestIndex;
  std::uint64_t seed = 0;
};

class ConstraintMatrix {
 public:
  ConstraintMatrix(std::size_t n, RankTriple ranks, std::vector<ConstraintColumn> columns);

  std::size_t n() const noexcept { return n_; }
  const RankTriple& ranks() const noexcept { return ranks_; }
  std::size_t size() const noexcept { return columns_.size(); }
  std::size_t k1() const noexcept { return k1_; }
  std::size_t k2() const noexcept { return columns_.size() - k1_; }
  const ConstraintColumn& column(std::size_t j) const { return columns_[j]; }
  const std::vector<ConstraintColumn>& columns() const noexcept { return columns_; }

 private:
  std::size_t n_;
  RankTriple ranks_;
  std::vector<ConstraintColumn> columns_;
  std::size_t k1_ = 0;
};

/// A set of constraint-matrix columns. Holds a pointer to its parent, which
/// must outlive the subset.
class ColumnSubset {
 public:
  explicit ColumnSubset(const ConstraintMatrix& parent);
  ColumnSubset(const ConstraintMatrix& parent, const std::vector<std::size_t>& members);

  static ColumnSubset all(const ConstraintMatrix& parent);

  const ConstraintMatrix& parent() const noexcept { return *parent_; }
  const Bitset& bits() const noexcept { return members_; }
  bool contains(std::size_t j) const { return members_.test(j); }
  void insert(std::size_t j) { members_.set(j); }
  void erase(std::size_t j) { members_.reset(j); }
  std::size_t count() const noexcept { return members_.count(); }
  bool empty() const noexcept { return members_.none(); }
  std::vector<std::size_t> indices() const;

  bool operator==(const ColumnSubset& other) const {
    return parent_ == other.parent_ && members_ == other.members_;
  }

 private:
  const ConstraintMatrix* parent_;
  Bitset members_;
};

/// Throws Assumption1Violated naming the first offending column.
ConstraintMatrix build_constraint(const SamplingPattern& pattern, const RankTriple& ranks,
                                  const PivotOptions& pivots = {});

/// g(.): number of rows touched by at least one member column.
std::size_t nonzero_rows(const ColumnSubset& subset);
/// Union of member supports.
Bitset support_union(const ColumnSubset& subset);

std::pair<ColumnSubset, ColumnSubset> split_by_view(const ColumnSubset& subset);

/// Dense dump in the pattern-file format: header "n k1 k2".
std::string format_constraint(const ConstraintMatrix& constraint);
/// One line per column: "view source_column extra_row" (1-based, source
/// column numbered within its view).
std::string format_provenance(const ConstraintMatrix& constraint, const ProblemShape& shape);

}  // namespace mvc
