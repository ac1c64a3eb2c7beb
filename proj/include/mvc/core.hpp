#pragma once

// Rank bookkeeping for two-view matrices U = [U1 | U2] with
// rank(U) = r, rank(U1) = r1, rank(U2) = r2.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mvc {

enum class ErrorCode {
  InvalidRankTriple,
  InvalidShape,
  Overflow,
  ParseError,
  DimensionMismatch,
  DuplicateCoordinate,
  LExceedsN,
  ProbabilityOutOfRange,
  Assumption1Violated,
  EnumerationCapExceeded,
  EpsilonOutOfRange,
  InvalidConfig,
  SingularRowBlock,
  SingularPivotSystem,
  DegenerateRandomPoint,
  IoError,
  UsageError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

std::size_t checked_add(std::size_t a, std::size_t b);
std::size_t checked_mul(std::size_t a, std::size_t b);

/// Derived block widths of a multi-view basis V = [V1 | V2 | V3]:
/// V1 is n x r1', V2 is n x r', V3 is n x r2'.
struct DerivedRanks {
  std::size_t r1p;  // r - r2
  std::size_t r2p;  // r - r1
  std::size_t rp;   // r1 + r2 - r

  bool operator==(const DerivedRanks&) const = default;
};

class RankTriple {
 public:
  /// Throws InvalidRankTriple unless r1 <= r, r2 <= r and r <= r1 + r2.
  RankTriple(std::size_t r, std::size_t r1, std::size_t r2);

  std::size_t r() const noexcept { return r_; }
  std::size_t r1() const noexcept { return r1_; }
  std::size_t r2() const noexcept { return r2_; }
  std::size_t r1p() const noexcept { return r_ - r2_; }
  std::size_t r2p() const noexcept { return r_ - r1_; }
  std::size_t rp() const noexcept { return r1_ + r2_ - r_; }
  /// Rank of view v (1 or 2).
  std::size_t view_rank(int view) const noexcept { return view == 1 ? r1_ : r2_; }
  /// Row offset max(r1', r2') of the shared identity block in a canonical basis.
  std::size_t canonical_offset() const noexcept { return r1p() > r2p() ? r1p() : r2p(); }

  bool operator==(const RankTriple&) const = default;

 private:
  std::size_t r_;
  std::size_t r1_;
  std::size_t r2_;
};

class ProblemShape {
 public:
  ProblemShape(std::size_t n, std::size_t m1, std::size_t m2);

  std::size_t n() const noexcept { return n_; }
  std::size_t m1() const noexcept { return m1_; }
  std::size_t m2() const noexcept { return m2_; }
  std::size_t columns() const noexcept { return m1_ + m2_; }
  int view_of(std::size_t column) const noexcept { return column < m1_ ? 1 : 2; }

  /// Throws InvalidShape when n < r, m1 < r1 or m2 < r2.
  void require_compatible(const RankTriple& ranks) const;

  bool operator==(const ProblemShape&) const = default;

 private:
  std::size_t n_;
  std::size_t m1_;
  std::size_t m2_;
};

DerivedRanks derived_ranks(const RankTriple& ranks);

/// Dimension of one span-equivalence class of bases,
/// n r - r^2 - r1^2 - r2^2 + r (r1 + r2).
std::size_t basis_dof(const ProblemShape& shape, const RankTriple& ranks);

class SamplingPattern;

/// Every view-1 column holds at least r1 samples and every view-2 column at
/// least r2.
bool validate_assumption1(const SamplingPattern& pattern, const RankTriple& ranks);

}  // namespace mvc
