#include "mvc/basis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace mvc {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;

Index idx(std::size_t v) { return static_cast<Index>(v); }

struct Blocks {
  Index r1p, rp, r2p, r1, r2, M;
  explicit Blocks(const RankTriple& k)
      : r1p(idx(k.r1p())), rp(idx(k.rp())), r2p(idx(k.r2p())), r1(idx(k.r1())), r2(idx(k.r2())),
        M(idx(k.canonical_offset())) {}
};

MatrixXd select_rows(const MatrixXd& A, Index top, Index start, Index count) {
  MatrixXd out(top + count, A.cols());
  out.topRows(top) = A.topRows(top);
  out.bottomRows(count) = A.middleRows(start, count);
  return out;
}

MatrixXd checked_inverse(const MatrixXd& A, const char* what) {
  if (A.rows() == 0) return MatrixXd(0, 0);
  Eigen::FullPivLU<MatrixXd> lu(A);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::SingularRowBlock, std::string("row block ") + what + " is singular");
  }
  return lu.inverse();
}

MatrixXd normal_matrix(Rng& rng, Index rows, Index cols) {
  MatrixXd A(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) A(i, j) = rng.normal();
  }
  return A;
}

}  // namespace

void require_basis_shape(const Eigen::MatrixXd& V, const RankTriple& ranks) {
  if (V.cols() != idx(ranks.r()) || V.rows() < idx(ranks.r())) {
    std::ostringstream os;
    os << "basis is " << V.rows() << "x" << V.cols() << ", expected n x " << ranks.r() << " with n >= "
       << ranks.r();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

Eigen::MatrixXd apply_equivalence(const Eigen::MatrixXd& V, const RankTriple& ranks,
                                  const EquivalenceWitness& w) {
  require_basis_shape(V, ranks);
  const Blocks b(ranks);
  MatrixXd out(V.rows(), V.cols());
  out.leftCols(b.r1p) = V.leftCols(b.r1) * w.A1;
  out.middleCols(b.r1p, b.rp) = V.middleCols(b.r1p, b.rp) * w.A2;
  out.rightCols(b.r2p) = V.rightCols(b.r2) * w.A3;
  return out;
}

EquivalenceWitness random_equivalence(const RankTriple& ranks, std::uint64_t seed) {
  const Blocks b(ranks);
  Rng rng(seed);
  EquivalenceWitness w;
  w.A1 = normal_matrix(rng, b.r1, b.r1p);
  w.A2 = normal_matrix(rng, b.rp, b.rp);
  w.A3 = normal_matrix(rng, b.r2, b.r2p);
  return w;
}

EquivalenceWitness canonical_witness(const Eigen::MatrixXd& V, const RankTriple& ranks) {
  require_basis_shape(V, ranks);
  const Blocks b(ranks);
  EquivalenceWitness w;
  w.A2 = checked_inverse(V.block(b.M, b.r1p, b.rp, b.rp), "B3");
  // [V1|V2] at the B1 rows then the B3 rows: inverting maps those rows to I,
  // so its first r1' columns put I on B1 and 0 on B4.
  w.A1 = checked_inverse(select_rows(V.leftCols(b.r1), b.r1p, b.M, b.rp), "B1/B4").leftCols(b.r1p);
  w.A3 = checked_inverse(select_rows(V.rightCols(b.r2), b.r2p, b.M, b.rp), "B2/B5").leftCols(b.r2p);
  return w;
}

Eigen::MatrixXd canonicalize(const Eigen::MatrixXd& V, const RankTriple& ranks) {
  MatrixXd C = apply_equivalence(V, ranks, canonical_witness(V, ranks));
  // The fixed blocks equal I / 0 up to rounding; write them exactly.
  const Blocks b(ranks);
  C.block(0, 0, b.r1p, b.r1p).setIdentity();
  C.block(0, b.r1, b.r2p, b.r2p).setIdentity();
  C.block(b.M, b.r1p, b.rp, b.rp).setIdentity();
  C.block(b.M, 0, b.rp, b.r1p).setZero();
  C.block(b.M, b.r1, b.rp, b.r2p).setZero();
  return C;
}

double canonical_deviation(const Eigen::MatrixXd& V, const RankTriple& ranks) {
  require_basis_shape(V, ranks);
  const Blocks b(ranks);
  auto dev = [](const MatrixXd& block, bool identity) {
    if (block.size() == 0) return 0.0;
    MatrixXd target = MatrixXd::Zero(block.rows(), block.cols());
    if (identity) target.setIdentity();
    return (block - target).cwiseAbs().maxCoeff();
  };
  double worst = 0.0;
  worst = std::max(worst, dev(V.block(0, 0, b.r1p, b.r1p), true));
  worst = std::max(worst, dev(V.block(0, b.r1, b.r2p, b.r2p), true));
  worst = std::max(worst, dev(V.block(b.M, b.r1p, b.rp, b.rp), true));
  worst = std::max(worst, dev(V.block(b.M, 0, b.rp, b.r1p), false));
  worst = std::max(worst, dev(V.block(b.M, b.r1, b.rp, b.r2p), false));
  return worst;
}

bool is_canonical(const Eigen::MatrixXd& V, const RankTriple& ranks, double tol) {
  return canonical_deviation(V, ranks) <= tol;
}

bool is_span_equivalent(const Eigen::MatrixXd& V, const Eigen::MatrixXd& W, const RankTriple& ranks,
                        double rel_tol) {
  require_basis_shape(V, ranks);
  require_basis_shape(W, ranks);
  if (V.rows() != W.rows()) return false;
  const Blocks b(ranks);
  auto same_span = [&](const MatrixXd& A, const MatrixXd& B) {
    if (A.cols() == 0) return true;
    MatrixXd joint(A.rows(), A.cols() + B.cols());
    joint << A, B;
    const auto ra = numerical_rank(A, rel_tol);
    return ra == static_cast<std::size_t>(A.cols()) && numerical_rank(B, rel_tol) == ra &&
           numerical_rank(joint, rel_tol) == ra;
  };
  return same_span(V.middleCols(b.r1p, b.rp), W.middleCols(b.r1p, b.rp)) &&
         same_span(V.leftCols(b.r1), W.leftCols(b.r1)) && same_span(V.rightCols(b.r2), W.rightCols(b.r2));
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> solve_coefficients(const Eigen::MatrixXd& V,
                                                               const SamplingPattern& pattern,
                                                               const Eigen::MatrixXd& U,
                                                               const RankTriple& ranks) {
  const auto& shape = pattern.shape();
  require_basis_shape(V, ranks);
  if (V.rows() != idx(shape.n()) || U.rows() != idx(shape.n()) || U.cols() != idx(shape.columns())) {
    throw Error(ErrorCode::DimensionMismatch, "basis, pattern and values disagree in size");
  }
  const Blocks b(ranks);
  MatrixXd T1(b.r1, idx(shape.m1())), T2(b.r2, idx(shape.m2()));
  for (std::size_t col = 0; col < shape.columns(); ++col) {
    const int view = shape.view_of(col);
    const Index rv = view == 1 ? b.r1 : b.r2;
    const auto rows = pattern.column_rows(col);
    if (idx(rows.size()) < rv) {
      throw Error(ErrorCode::Assumption1Violated, "column " + std::to_string(col + 1) + " has " +
                                                      std::to_string(rows.size()) + " samples, needs " +
                                                      std::to_string(rv));
    }
    if (rv == 0) continue;
    const MatrixXd basis = view == 1 ? MatrixXd(V.leftCols(b.r1)) : MatrixXd(V.rightCols(b.r2));
    MatrixXd A(rv, rv);
    Eigen::VectorXd rhs(rv);
    for (Index k = 0; k < rv; ++k) {
      A.row(k) = basis.row(idx(rows[static_cast<std::size_t>(k)]));
      rhs(k) = U(idx(rows[static_cast<std::size_t>(k)]), idx(col));
    }
    Eigen::FullPivLU<MatrixXd> lu(A);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
      throw Error(ErrorCode::SingularPivotSystem, "pivot system of column " + std::to_string(col + 1) + " is singular");
    }
    const Eigen::VectorXd t = lu.solve(rhs);
    if (view == 1) {
      T1.col(idx(col)) = t;
    } else {
      T2.col(idx(col - shape.m1())) = t;
    }
  }
  return {T1, T2};
}

Eigen::MatrixXd parse_matrix(std::istream& in) {
  long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw Error(ErrorCode::ParseError, "matrix header must be \"rows cols\"");
  }
  MatrixXd M(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if (!(in >> M(i, j))) {
        throw Error(ErrorCode::ParseError, "matrix entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                               ") missing or malformed");
      }
    }
  }
  std::string trailing;
  if (in >> trailing) throw Error(ErrorCode::DimensionMismatch, "matrix has more entries than its header declares");
  return M;
}

Eigen::MatrixXd load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return parse_matrix(in);
}

std::string format_matrix(const Eigen::MatrixXd& M) {
  std::string out = std::to_string(M.rows()) + " " + std::to_string(M.cols()) + "\n";
  char buf[40];
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      // Normalise -0 so canonical zeros print identically.
      const double v = M(i, j) == 0.0 ? 0.0 : M(i, j);
      std::snprintf(buf, sizeof buf, "%.17g", v);
      if (j > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace mvc
