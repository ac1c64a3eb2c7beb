#pragma once

#include "mvc/core.hpp"

#include <Eigen/Dense>
#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace mvc {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Portable seeded generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the transforms below avoid the
/// implementation-defined std:: distributions so streams replay bit for bit
/// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  /// Standard normal (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes a base seed with a stream index (splitmix64 finaliser), used to give
/// every trial its own independent stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// n x (m1 + m2) binary observation matrix. Columns [0, m1) are view 1 and
/// [m1, m1 + m2) view 2. Indices are 0-based in the API and 1-based in files.
class SamplingPattern {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit SamplingPattern(ProblemShape shape);

  const ProblemShape& shape() const noexcept { return shape_; }
  bool observed(std::size_t row, std::size_t col) const { return rows_[row].test(col); }
  void set(std::size_t row, std::size_t col, bool value = true);
  const Bitset& row_bits(std::size_t row) const { return rows_[row]; }

  /// Observed row indices of one column, ascending.
  std::vector<std::size_t> column_rows(std::size_t col) const;
  std::size_t column_count(std::size_t col) const;
  /// N_Omega over the whole matrix, or over one view (1 or 2).
  std::size_t total_observed() const;
  std::size_t view_observed(int view) const;

  /// First column with fewer than r_v observed entries, or npos.
  std::size_t first_assumption1_violation(const RankTriple& ranks) const;

  bool operator==(const SamplingPattern& other) const {
    return shape_ == other.shape_ && rows_ == other.rows_;
  }

 private:
  ProblemShape shape_;
  std::vector<Bitset> rows_;
};

enum class PatternEncoding { Dense, Coords };

SamplingPattern parse_pattern(std::istream& in);
SamplingPattern parse_pattern(const std::string& text);
SamplingPattern load_pattern(const std::string& path);
std::string format_pattern(const SamplingPattern& pattern,
                           PatternEncoding encoding = PatternEncoding::Dense);
void save_pattern(const SamplingPattern& pattern, const std::string& path,
                  PatternEncoding encoding = PatternEncoding::Dense);

/// Every column gets exactly l samples at uniformly random distinct rows.
SamplingPattern gen_fixed_per_column(const ProblemShape& shape, std::size_t l, std::uint64_t seed);
/// Every entry is observed independently with probability p.
SamplingPattern gen_bernoulli(const ProblemShape& shape, double p, std::uint64_t seed);

/// A generic point of the multi-view model: U1 = [V1|V2] T1, U2 = [V2|V3] T2.
struct GenericInstance {
  RankTriple ranks;
  Eigen::MatrixXd V;   // n x r, column blocks of widths (r1', r', r2')
  Eigen::MatrixXd T1;  // r1 x m1
  Eigen::MatrixXd T2;  // r2 x m2
  Eigen::MatrixXd U;   // n x (m1 + m2)

  Eigen::MatrixXd view1_basis() const { return V.leftCols(ranks.r1()); }
  Eigen::MatrixXd view2_basis() const { return V.rightCols(ranks.r2()); }
};

GenericInstance gen_generic_instance(const ProblemShape& shape, const RankTriple& ranks,
                                     std::uint64_t seed);

/// Assemble U from a basis and coefficient matrices.
Eigen::MatrixXd assemble_views(const Eigen::MatrixXd& V, const RankTriple& ranks,
                               const Eigen::MatrixXd& T1, const Eigen::MatrixXd& T2);

/// Number of singular values above rel_tol * sigma_max.
std::size_t numerical_rank(const Eigen::MatrixXd& M, double rel_tol);

}  // namespace mvc
