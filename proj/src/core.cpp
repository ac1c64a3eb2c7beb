#include "mvc/core.hpp"

#include "mvc/pattern.hpp"

#include <sstream>

namespace mvc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidRankTriple: return "invalid-rank-triple";
    case ErrorCode::InvalidShape: return "invalid-shape";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::DuplicateCoordinate: return "duplicate-coordinate";
    case ErrorCode::LExceedsN: return "l-exceeds-n";
    case ErrorCode::ProbabilityOutOfRange: return "probability-out-of-range";
    case ErrorCode::Assumption1Violated: return "assumption1-violated";
    case ErrorCode::EnumerationCapExceeded: return "enumeration-cap-exceeded";
    case ErrorCode::EpsilonOutOfRange: return "epsilon-out-of-range";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::SingularRowBlock: return "singular-row-block";
    case ErrorCode::SingularPivotSystem: return "singular-pivot-system";
    case ErrorCode::DegenerateRandomPoint: return "degenerate-random-point";
    case ErrorCode::IoError: return "io-error";
    case ErrorCode::UsageError: return "usage-error";
  }
  return "unknown";
}

std::size_t checked_add(std::size_t a, std::size_t b) {
  std::size_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::Overflow, "integer overflow in addition");
  }
  return out;
}

std::size_t checked_mul(std::size_t a, std::size_t b) {
  std::size_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::Overflow, "integer overflow in multiplication");
  }
  return out;
}

RankTriple::RankTriple(std::size_t r, std::size_t r1, std::size_t r2)
    : r_(r), r1_(r1), r2_(r2) {
  if (r1 > r || r2 > r || r > checked_add(r1, r2)) {
    std::ostringstream os;
    os << "rank triple (r=" << r << ", r1=" << r1 << ", r2=" << r2
       << ") violates r1 <= r, r2 <= r, r <= r1 + r2";
    throw Error(ErrorCode::InvalidRankTriple, os.str());
  }
}

ProblemShape::ProblemShape(std::size_t n, std::size_t m1, std::size_t m2)
    : n_(n), m1_(m1), m2_(m2) {
  if (n == 0 || m1 == 0 || m2 == 0) {
    throw Error(ErrorCode::InvalidShape, "n, m1 and m2 must be positive");
  }
  checked_mul(n, checked_add(m1, m2));
}

void ProblemShape::require_compatible(const RankTriple& ranks) const {
  if (n_ < ranks.r() || m1_ < ranks.r1() || m2_ < ranks.r2()) {
    std::ostringstream os;
    os << "shape (n=" << n_ << ", m1=" << m1_ << ", m2=" << m2_
       << ") cannot host ranks (" << ranks.r() << ", " << ranks.r1() << ", " << ranks.r2() << ")";
    throw Error(ErrorCode::InvalidShape, os.str());
  }
}

DerivedRanks derived_ranks(const RankTriple& ranks) {
  return {ranks.r1p(), ranks.r2p(), ranks.rp()};
}

std::size_t basis_dof(const ProblemShape& shape, const RankTriple& ranks) {
  shape.require_compatible(ranks);
  // r1'(n - r1) + r2'(n - r2) + r'(n - r'), equal to the closed form and free
  // of intermediate negatives.
  const std::size_t n = shape.n();
  std::size_t dof = checked_mul(ranks.r1p(), n - ranks.r1());
  dof = checked_add(dof, checked_mul(ranks.r2p(), n - ranks.r2()));
  dof = checked_add(dof, checked_mul(ranks.rp(), n - ranks.rp()));
  return dof;
}

bool validate_assumption1(const SamplingPattern& pattern, const RankTriple& ranks) {
  return pattern.first_assumption1_violation(ranks) == SamplingPattern::npos;
}

}  // namespace mvc
