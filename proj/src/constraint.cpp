#include "mvc/constraint.hpp"

#include <algorithm>
#include <sstream>

namespace mvc {

ConstraintMatrix::ConstraintMatrix(std::size_t n, RankTriple ranks, std::vector<ConstraintColumn> columns)
    : n_(n), ranks_(ranks), columns_(std::move(columns)) {
  k1_ = static_cast<std::size_t>(
      std::count_if(columns_.begin(), columns_.end(), [](const auto& c) { return c.view == 1; }));
}

ColumnSubset::ColumnSubset(const ConstraintMatrix& parent)
    : parent_(&parent), members_(parent.size()) {}

ColumnSubset::ColumnSubset(const ConstraintMatrix& parent, const std::vector<std::size_t>& members)
    : ColumnSubset(parent) {
  for (auto j : members) members_.set(j);
}

ColumnSubset ColumnSubset::all(const ConstraintMatrix& parent) {
  ColumnSubset s(parent);
  s.members_.set();
  return s;
}

std::vector<std::size_t> ColumnSubset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(members_.count());
  for (auto j = members_.find_first(); j != Bitset::npos; j = members_.find_next(j)) out.push_back(j);
  return out;
}

ConstraintMatrix build_constraint(const SamplingPattern& pattern, const RankTriple& ranks,
                                  const PivotOptions& pivots) {
  const auto& shape = pattern.shape();
  shape.require_compatible(ranks);
  if (auto bad = pattern.first_assumption1_violation(ranks); bad != SamplingPattern::npos) {
    const int view = shape.view_of(bad);
    std::ostringstream os;
    os << "column " << bad + 1 << " (view " << view << ") has " << pattern.column_count(bad)
       << " observed entries, fewer than r" << view << " = " << ranks.view_rank(view);
    throw Error(ErrorCode::Assumption1Violated, os.str());
  }

  Rng rng(pivots.seed);
  std::vector<ConstraintColumn> columns;
  columns.reserve(pattern.total_observed());
  for (std::size_t col = 0; col < shape.columns(); ++col) {
    const int view = shape.view_of(col);
    const std::size_t rv = ranks.view_rank(view);
    std::vector<std::size_t> rows = pattern.column_rows(col);
    std::vector<std::size_t> pivot(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(rv));
    std::vector<std::size_t> extras(rows.begin() + static_cast<std::ptrdiff_t>(rv), rows.end());
    if (pivots.rule == PivotRule::SeededRandom) {
      for (std::size_t k = 0; k < rv; ++k) {
        const std::size_t pick = k + static_cast<std::size_t>(rng.uniform_below(rows.size() - k));
        std::swap(rows[k], rows[pick]);
      }
      pivot.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(rv));
      extras.assign(rows.begin() + static_cast<std::ptrdiff_t>(rv), rows.end());
      std::sort(pivot.begin(), pivot.end());
      std::sort(extras.begin(), extras.end());
    }
    for (auto extra : extras) {
      ConstraintColumn c;
      c.view = view;
      c.source_column = col;
      c.pivot_rows = pivot;
      c.extra_row = extra;
      c.support = Bitset(shape.n());
      for (auto x : pivot) c.support.set(x);
      c.support.set(extra);
      columns.push_back(std::move(c));
    }
  }
  return ConstraintMatrix(shape.n(), ranks, std::move(columns));
}

Bitset support_union(const ColumnSubset& subset) {
  Bitset rows(subset.parent().n());
  const auto& bits = subset.bits();
  for (auto j = bits.find_first(); j != Bitset::npos; j = bits.find_next(j)) {
    rows |= subset.parent().column(j).support;
  }
  return rows;
}

std::size_t nonzero_rows(const ColumnSubset& subset) {
  return support_union(subset).count();
}

std::pair<ColumnSubset, ColumnSubset> split_by_view(const ColumnSubset& subset) {
  ColumnSubset first(subset.parent());
  ColumnSubset second(subset.parent());
  for (auto j : subset.indices()) {
    if (subset.parent().column(j).view == 1) {
      first.insert(j);
    } else {
      second.insert(j);
    }
  }
  return {first, second};
}

std::string format_constraint(const ConstraintMatrix& constraint) {
  std::ostringstream out;
  out << constraint.n() << ' ' << constraint.k1() << ' ' << constraint.k2() << "\ndense\n";
  for (std::size_t x = 0; x < constraint.n(); ++x) {
    for (const auto& c : constraint.columns()) out << (c.support.test(x) ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

std::string format_provenance(const ConstraintMatrix& constraint, const ProblemShape& shape) {
  std::ostringstream out;
  for (const auto& c : constraint.columns()) {
    const std::size_t local = c.view == 1 ? c.source_column : c.source_column - shape.m1();
    out << c.view << ' ' << local + 1 << ' ' << c.extra_row + 1 << '\n';
  }
  return out.str();
}

}  // namespace mvc
