#include "doctest.h"
#include "helpers.hpp"

#include "mvc/pattern.hpp"

#include <cmath>

using namespace mvc;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    parse_pattern(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::UsageError;
}

}  // namespace

TEST_SUITE("pattern") {
  TEST_CASE("coordinate and dense encodings agree") {
    const auto coords = parse_pattern(
        "4 2 2\ncoords\n1 1\n1 2\n1 3\n1 4\n2 1\n2 3\n2 4\n3 1\n3 3\n4 3\n4 4\n");
    const auto dense = testing::example_pattern();
    CHECK(coords == dense);
    CHECK(dense.total_observed() == 11);
    CHECK(dense.view_observed(1) == 4);
    CHECK(dense.view_observed(2) == 7);
    CHECK(dense.column_rows(0) == std::vector<std::size_t>{0, 1, 2});
  }

  TEST_CASE("empty coordinate list") {
    const auto p = parse_pattern("2 1 1\ncoords\n");
    CHECK(p.total_observed() == 0);
  }

  TEST_CASE("malformed inputs") {
    CHECK(parse_error("4 2 2\ncoords\n5 1\n") == ErrorCode::DimensionMismatch);
    CHECK(parse_error("4 2 2\ncoords\n1 1\n1 1\n") == ErrorCode::DuplicateCoordinate);
    CHECK(parse_error("4 2 2\ndense\n1111\n1111\n") == ErrorCode::DimensionMismatch);
    CHECK(parse_error("4 2 2\ndense\n1111\n11x1\n1111\n1111\n") == ErrorCode::ParseError);
    CHECK(parse_error("4 2\ndense\n") == ErrorCode::ParseError);
    CHECK(parse_error("2 1 1\nsparse\n") == ErrorCode::ParseError);
  }

  TEST_CASE("writers round trip") {
    const auto p = gen_bernoulli(ProblemShape(7, 3, 4), 0.4, 11);
    CHECK(parse_pattern(format_pattern(p, PatternEncoding::Dense)) == p);
    CHECK(parse_pattern(format_pattern(p, PatternEncoding::Coords)) == p);
    CHECK(format_pattern(testing::example_pattern()) == "4 2 2\ndense\n1111\n1011\n1010\n0011\n");
  }

  TEST_CASE("fixed samples per column") {
    const ProblemShape shape(10, 3, 3);
    const auto p = gen_fixed_per_column(shape, 4, 7);
    for (std::size_t c = 0; c < shape.columns(); ++c) CHECK(p.column_count(c) == 4);
    CHECK(p == gen_fixed_per_column(shape, 4, 7));
    CHECK_FALSE(p == gen_fixed_per_column(shape, 4, 8));
    CHECK(gen_fixed_per_column(shape, 10, 1).total_observed() == 60);
    CHECK(gen_fixed_per_column(shape, 0, 1).total_observed() == 0);
    CHECK_THROWS_AS(gen_fixed_per_column(shape, 11, 1), Error);
  }

  TEST_CASE("row placement is uniform") {
    // Each row is hit with probability l/n; 2000 columns give a tight band.
    const ProblemShape shape(8, 1000, 1000);
    const auto p = gen_fixed_per_column(shape, 3, 5);
    for (std::size_t x = 0; x < 8; ++x) {
      const double hits = static_cast<double>(p.row_bits(x).count());
      CHECK(std::abs(hits - 750.0) < 5 * std::sqrt(2000 * 0.375 * 0.625));
    }
  }

  TEST_CASE("bernoulli sampling") {
    CHECK(gen_bernoulli(ProblemShape(5, 2, 2), 1.0, 1).total_observed() == 20);
    CHECK(gen_bernoulli(ProblemShape(5, 2, 2), 0.0, 1).total_observed() == 0);
    const auto p = gen_bernoulli(ProblemShape(1000, 1, 1), 0.5, 3);
    CHECK(std::abs(static_cast<double>(p.total_observed()) - 1000.0) < 3 * std::sqrt(500.0));
    CHECK_THROWS_AS(gen_bernoulli(ProblemShape(5, 2, 2), 1.5, 1), Error);
    CHECK(p == gen_bernoulli(ProblemShape(1000, 1, 1), 0.5, 3));
  }

  TEST_CASE("generic instance ranks") {
    const ProblemShape shape(4, 2, 2);
    const RankTriple k(2, 1, 2);
    const auto inst = gen_generic_instance(shape, k, 3);
    CHECK(numerical_rank(inst.U, 1e-8) == 2);
    CHECK(numerical_rank(inst.U.leftCols(2), 1e-8) == 1);
    CHECK(numerical_rank(inst.U.rightCols(2), 1e-8) == 2);
    CHECK((inst.U - assemble_views(inst.V, k, inst.T1, inst.T2)).norm() == 0.0);

    const auto again = gen_generic_instance(shape, k, 3);
    CHECK(again.U == inst.U);

    const auto zero = gen_generic_instance(ProblemShape(3, 2, 2), RankTriple(0, 0, 0), 1);
    CHECK(zero.U.isZero());

    // r' = r1 = r2: both views live in the shared block.
    const auto shared = gen_generic_instance(ProblemShape(6, 4, 4), RankTriple(3, 3, 3), 2);
    CHECK(shared.view1_basis() == shared.view2_basis());
  }

  TEST_CASE("rank equalities hold for almost every seed") {
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(seed);
      const std::size_t n = 5 + rng.uniform_below(46);
      const std::size_t r = 1 + rng.uniform_below(std::min<std::size_t>(n, 8));
      const std::size_t r1 = (r + 1) / 2 + rng.uniform_below(r - (r + 1) / 2 + 1);
      const std::size_t r2 = r - r1 + rng.uniform_below(r1 - (r - r1) + 1);
      const RankTriple k(r, r1, std::max(r2, r - r1));
      const auto inst = gen_generic_instance(ProblemShape(n, r1 + 3, k.r2() + 3), k, seed);
      const auto m1 = static_cast<Eigen::Index>(r1 + 3);
      good += numerical_rank(inst.U, 1e-8) == k.r() && numerical_rank(inst.U.leftCols(m1), 1e-8) == k.r1() &&
              numerical_rank(inst.U.rightCols(inst.U.cols() - m1), 1e-8) == k.r2();
    }
    CHECK(good >= 99);
  }

  TEST_CASE("rng transforms") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
      const auto v = c.uniform_below(7);
      CHECK(v < 7);
      const double u = c.uniform01();
      CHECK((u >= 0.0 && u < 1.0));
    }
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));
  }
}
