#include "mvc/pattern.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace mvc {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SamplingPattern::SamplingPattern(ProblemShape shape)
    : shape_(shape), rows_(shape.n(), Bitset(shape.columns())) {}

void SamplingPattern::set(std::size_t row, std::size_t col, bool value) {
  rows_.at(row).set(col, value);
}

std::vector<std::size_t> SamplingPattern::column_rows(std::size_t col) const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < shape_.n(); ++x) {
    if (rows_[x].test(col)) out.push_back(x);
  }
  return out;
}

std::size_t SamplingPattern::column_count(std::size_t col) const {
  std::size_t count = 0;
  for (const auto& row : rows_) count += row.test(col) ? 1 : 0;
  return count;
}

std::size_t SamplingPattern::total_observed() const {
  std::size_t count = 0;
  for (const auto& row : rows_) count += row.count();
  return count;
}

std::size_t SamplingPattern::view_observed(int view) const {
  const std::size_t begin = view == 1 ? 0 : shape_.m1();
  const std::size_t end = view == 1 ? shape_.m1() : shape_.columns();
  std::size_t count = 0;
  for (std::size_t col = begin; col < end; ++col) count += column_count(col);
  return count;
}

std::size_t SamplingPattern::first_assumption1_violation(const RankTriple& ranks) const {
  for (std::size_t col = 0; col < shape_.columns(); ++col) {
    if (column_count(col) < ranks.view_rank(shape_.view_of(col))) return col;
  }
  return npos;
}

namespace {

[[noreturn]] void parse_fail(const std::string& msg) {
  throw Error(ErrorCode::ParseError, "pattern: " + msg);
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

SamplingPattern parse_pattern(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) parse_fail("empty document");
  long long n = 0, m1 = 0, m2 = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m1 >> m2) || (header >> extra)) {
      parse_fail("first line must be 'n m1 m2'");
    }
  }
  if (n <= 0 || m1 <= 0 || m2 <= 0) parse_fail("n, m1, m2 must be positive");
  SamplingPattern pattern(ProblemShape(static_cast<std::size_t>(n), static_cast<std::size_t>(m1),
                                       static_cast<std::size_t>(m2)));
  const std::size_t cols = pattern.shape().columns();

  if (!next_content_line(in, line)) parse_fail("missing 'dense' or 'coords' marker");
  std::istringstream marker_stream(line);
  std::string marker;
  marker_stream >> marker;

  if (marker == "dense") {
    for (std::size_t x = 0; x < pattern.shape().n(); ++x) {
      if (!next_content_line(in, line)) {
        throw Error(ErrorCode::DimensionMismatch, "pattern: expected " + std::to_string(n) + " dense rows");
      }
      const auto first = line.find_first_not_of(" \t");
      const auto last = line.find_last_not_of(" \t");
      const std::string body = line.substr(first, last - first + 1);
      if (body.size() != cols) {
        throw Error(ErrorCode::DimensionMismatch,
                    "pattern: dense row " + std::to_string(x + 1) + " has " +
                        std::to_string(body.size()) + " entries, expected " + std::to_string(cols));
      }
      for (std::size_t y = 0; y < cols; ++y) {
        if (body[y] == '1') {
          pattern.set(x, y);
        } else if (body[y] != '0') {
          parse_fail("dense rows may only contain '0' and '1'");
        }
      }
    }
    if (next_content_line(in, line)) {
      throw Error(ErrorCode::DimensionMismatch, "pattern: trailing rows after dense grid");
    }
  } else if (marker == "coords") {
    std::set<std::pair<long long, long long>> seen;
    while (next_content_line(in, line)) {
      std::istringstream pair(line);
      long long row = 0, col = 0;
      std::string extra;
      if (!(pair >> row >> col) || (pair >> extra)) parse_fail("coordinate lines must be 'row col'");
      if (row < 1 || col < 1 || row > n || col > static_cast<long long>(cols)) {
        throw Error(ErrorCode::DimensionMismatch,
                    "pattern: coordinate (" + std::to_string(row) + "," + std::to_string(col) +
                        ") outside " + std::to_string(n) + "x" + std::to_string(cols));
      }
      if (!seen.emplace(row, col).second) {
        throw Error(ErrorCode::DuplicateCoordinate,
                    "pattern: duplicate coordinate (" + std::to_string(row) + "," + std::to_string(col) + ")");
      }
      pattern.set(static_cast<std::size_t>(row - 1), static_cast<std::size_t>(col - 1));
    }
  } else {
    parse_fail("second line must be 'dense' or 'coords'");
  }
  return pattern;
}

SamplingPattern parse_pattern(const std::string& text) {
  std::istringstream in(text);
  return parse_pattern(in);
}

SamplingPattern load_pattern(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open pattern file '" + path + "'");
  return parse_pattern(in);
}

std::string format_pattern(const SamplingPattern& pattern, PatternEncoding encoding) {
  const auto& shape = pattern.shape();
  std::ostringstream out;
  out << shape.n() << ' ' << shape.m1() << ' ' << shape.m2() << '\n';
  if (encoding == PatternEncoding::Dense) {
    out << "dense\n";
    for (std::size_t x = 0; x < shape.n(); ++x) {
      for (std::size_t y = 0; y < shape.columns(); ++y) out << (pattern.observed(x, y) ? '1' : '0');
      out << '\n';
    }
  } else {
    out << "coords\n";
    for (std::size_t x = 0; x < shape.n(); ++x) {
      for (std::size_t y = 0; y < shape.columns(); ++y) {
        if (pattern.observed(x, y)) out << x + 1 << ' ' << y + 1 << '\n';
      }
    }
  }
  return out.str();
}

void save_pattern(const SamplingPattern& pattern, const std::string& path, PatternEncoding encoding) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write pattern file '" + path + "'");
  out << format_pattern(pattern, encoding);
}

SamplingPattern gen_fixed_per_column(const ProblemShape& shape, std::size_t l, std::uint64_t seed) {
  if (l > shape.n()) {
    throw Error(ErrorCode::LExceedsN, "samples per column l=" + std::to_string(l) +
                                          " exceeds n=" + std::to_string(shape.n()));
  }
  SamplingPattern pattern(shape);
  Rng rng(seed);
  std::vector<std::size_t> rows(shape.n());
  for (std::size_t col = 0; col < shape.columns(); ++col) {
    for (std::size_t x = 0; x < rows.size(); ++x) rows[x] = x;
    // Partial Fisher-Yates: the first l slots are a uniform l-subset.
    for (std::size_t k = 0; k < l; ++k) {
      const std::size_t pick = k + static_cast<std::size_t>(rng.uniform_below(rows.size() - k));
      std::swap(rows[k], rows[pick]);
      pattern.set(rows[k], col);
    }
  }
  return pattern;
}

SamplingPattern gen_bernoulli(const ProblemShape& shape, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::ProbabilityOutOfRange, "probability must lie in [0, 1]");
  }
  SamplingPattern pattern(shape);
  Rng rng(seed);
  for (std::size_t x = 0; x < shape.n(); ++x) {
    for (std::size_t y = 0; y < shape.columns(); ++y) {
      if (rng.uniform01() < p) pattern.set(x, y);
    }
  }
  return pattern;
}

Eigen::MatrixXd assemble_views(const Eigen::MatrixXd& V, const RankTriple& ranks,
                               const Eigen::MatrixXd& T1, const Eigen::MatrixXd& T2) {
  const Eigen::Index n = V.rows();
  Eigen::MatrixXd U(n, T1.cols() + T2.cols());
  const auto r1 = static_cast<Eigen::Index>(ranks.r1());
  const auto r2 = static_cast<Eigen::Index>(ranks.r2());
  if (r1 > 0) {
    U.leftCols(T1.cols()) = V.leftCols(r1) * T1;
  } else {
    U.leftCols(T1.cols()).setZero();
  }
  if (r2 > 0) {
    U.rightCols(T2.cols()) = V.rightCols(r2) * T2;
  } else {
    U.rightCols(T2.cols()).setZero();
  }
  return U;
}

GenericInstance gen_generic_instance(const ProblemShape& shape, const RankTriple& ranks,
                                     std::uint64_t seed) {
  shape.require_compatible(ranks);
  Rng rng(seed);
  auto draw = [&rng](Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd M(rows, cols);
    // Row-major fill order is part of the replay contract.
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = rng.normal();
    }
    return M;
  };
  const auto n = static_cast<Eigen::Index>(shape.n());
  GenericInstance inst{ranks, draw(n, static_cast<Eigen::Index>(ranks.r())),
                       draw(static_cast<Eigen::Index>(ranks.r1()), static_cast<Eigen::Index>(shape.m1())),
                       draw(static_cast<Eigen::Index>(ranks.r2()), static_cast<Eigen::Index>(shape.m2())),
                       {}};
  inst.U = assemble_views(inst.V, ranks, inst.T1, inst.T2);
  return inst;
}

std::size_t numerical_rank(const Eigen::MatrixXd& M, double rel_tol) {
  if (M.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace mvc
