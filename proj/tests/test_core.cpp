#include "doctest.h"
#include "helpers.hpp"

#include "mvc/core.hpp"

using namespace mvc;

TEST_SUITE("core") {
  TEST_CASE("derived ranks") {
    CHECK(derived_ranks(RankTriple(2, 1, 2)) == DerivedRanks{0, 1, 1});
    CHECK(derived_ranks(RankTriple(4, 2, 3)) == DerivedRanks{1, 2, 1});
    CHECK(derived_ranks(RankTriple(5, 5, 5)) == DerivedRanks{0, 0, 5});
  }

  TEST_CASE("invalid rank triples are rejected") {
    auto code_of = [](auto fn) {
      try {
        fn();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::UsageError;
    };
    CHECK(code_of([] { RankTriple(2, 3, 1); }) == ErrorCode::InvalidRankTriple);
    CHECK(code_of([] { RankTriple(2, 1, 3); }) == ErrorCode::InvalidRankTriple);
    CHECK(code_of([] { RankTriple(5, 2, 2); }) == ErrorCode::InvalidRankTriple);
    CHECK(code_of([] { ProblemShape(0, 1, 1); }) == ErrorCode::InvalidShape);
    CHECK(code_of([] { ProblemShape(3, 2, 2).require_compatible(RankTriple(4, 2, 2)); }) ==
          ErrorCode::InvalidShape);
    CHECK(code_of([] { ProblemShape(8, 1, 2).require_compatible(RankTriple(3, 2, 2)); }) ==
          ErrorCode::InvalidShape);
  }

  TEST_CASE("basis degrees of freedom") {
    CHECK(basis_dof(ProblemShape(4, 2, 2), RankTriple(2, 1, 2)) == 5);
    CHECK(basis_dof(ProblemShape(4, 3, 4), RankTriple(4, 2, 3)) == 7);
    CHECK(basis_dof(ProblemShape(6, 1, 1), RankTriple(0, 0, 0)) == 0);
  }

  TEST_CASE("dof equals the block-wise sum") {
    for (std::size_t n = 1; n <= 12; ++n) {
      for (std::size_t r = 0; r <= n; ++r) {
        for (std::size_t r1 = 0; r1 <= r; ++r1) {
          for (std::size_t r2 = r - r1; r2 <= r; ++r2) {
            const RankTriple k(r, r1, r2);
            const std::size_t expected = k.r1p() * (n - r1) + k.r2p() * (n - r2) + k.rp() * (n - k.rp());
            CHECK(basis_dof(ProblemShape(n, std::max<std::size_t>(r1, 1), std::max<std::size_t>(r2, 1)), k) ==
                  expected);
          }
        }
      }
    }
  }

  TEST_CASE("checked arithmetic") {
    CHECK(checked_mul(1u << 20, 1u << 20) == (std::size_t{1} << 40));
    CHECK_THROWS_AS(checked_mul(std::size_t{1} << 40, std::size_t{1} << 40), Error);
    CHECK_THROWS_AS(checked_add(static_cast<std::size_t>(-1), 1), Error);
  }

  TEST_CASE("per-column sample count") {
    CHECK(validate_assumption1(testing::example_pattern(), testing::kExampleRanks));
    SamplingPattern empty(ProblemShape(3, 2, 2));
    CHECK_FALSE(validate_assumption1(empty, RankTriple(1, 1, 1)));
    CHECK(validate_assumption1(empty, RankTriple(0, 0, 0)));
    // One view-2 column holds exactly r2 - 1 samples.
    SamplingPattern p(ProblemShape(4, 1, 2));
    for (std::size_t x = 0; x < 4; ++x) {
      p.set(x, 0);
      p.set(x, 1);
    }
    p.set(0, 2);
    CHECK_FALSE(validate_assumption1(p, RankTriple(2, 1, 2)));
    p.set(1, 2);
    CHECK(validate_assumption1(p, RankTriple(2, 1, 2)));
  }

  TEST_CASE("error names are kebab case") {
    CHECK(error_code_name(ErrorCode::Assumption1Violated) == "assumption1-violated");
    CHECK(error_code_name(ErrorCode::EpsilonOutOfRange) == "epsilon-out-of-range");
  }
}
