#include "doctest.h"
#include "helpers.hpp"

#include "mvc/constraint.hpp"

using namespace mvc;

TEST_SUITE("constraint") {
  TEST_CASE("worked example dump is byte exact") {
    const auto cm = build_constraint(testing::example_pattern(), testing::kExampleRanks);
    CHECK(format_constraint(cm) == "4 2 3\ndense\n11111\n10111\n01100\n00011\n");
    CHECK(format_provenance(cm, ProblemShape(4, 2, 2)) == "1 1 2\n1 1 3\n2 1 3\n2 1 4\n2 2 4\n");
    CHECK(cm.k1() == 2);
    CHECK(cm.k2() == 3);
  }

  TEST_CASE("column counts and support sizes") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ProblemShape shape(9, 4, 5);
      const RankTriple k(4, 2, 3);
      const auto p = gen_fixed_per_column(shape, 3 + seed % 6, seed);
      const auto cm = build_constraint(p, k);
      CHECK(cm.k1() == p.view_observed(1) - shape.m1() * k.r1());
      CHECK(cm.k2() == p.view_observed(2) - shape.m2() * k.r2());
      CHECK(cm.size() == p.total_observed() - shape.m1() * k.r1() - shape.m2() * k.r2());
      for (const auto& c : cm.columns()) {
        CHECK(c.support.count() == k.view_rank(c.view) + 1);
        for (auto x = c.support.find_first(); x != Bitset::npos; x = c.support.find_next(x)) {
          CHECK(p.observed(x, c.source_column));
        }
      }
    }
  }

  TEST_CASE("minimal columns contribute nothing") {
    SamplingPattern p(ProblemShape(5, 1, 1));
    p.set(2, 0);
    for (std::size_t x = 0; x < 5; ++x) p.set(x, 1);
    const auto cm = build_constraint(p, RankTriple(1, 1, 1));
    CHECK(cm.k1() == 0);
    CHECK(cm.k2() == 4);
  }

  TEST_CASE("fully observed pair of columns") {
    const std::size_t n = 6;
    SamplingPattern p(ProblemShape(n, 1, 1));
    for (std::size_t x = 0; x < n; ++x) {
      p.set(x, 0);
      p.set(x, 1);
    }
    const auto cm = build_constraint(p, RankTriple(1, 1, 1));
    CHECK(cm.k1() == n - 1);
    CHECK(cm.k2() == n - 1);
    for (std::size_t j = 0; j < cm.size(); ++j) {
      const auto& c = cm.column(j);
      CHECK(c.pivot_rows == std::vector<std::size_t>{0});
      CHECK(c.extra_row == j % (n - 1) + 1);
    }
  }

  TEST_CASE("under-sampled column is named") {
    SamplingPattern p(ProblemShape(4, 2, 2));
    for (std::size_t x = 0; x < 4; ++x) {
      p.set(x, 0);
      p.set(x, 1);
      p.set(x, 2);
    }
    p.set(0, 3);
    try {
      build_constraint(p, RankTriple(2, 1, 2));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Assumption1Violated);
      CHECK(std::string(e.what()).find("column 4") != std::string::npos);
    }
  }

  TEST_CASE("nonzero rows and view split") {
    const auto cm = build_constraint(testing::example_pattern(), testing::kExampleRanks);
    const ColumnSubset none(cm);
    CHECK(nonzero_rows(none) == 0);
    CHECK(nonzero_rows(ColumnSubset(cm, {2, 3, 4})) == 4);
    CHECK(nonzero_rows(ColumnSubset(cm, {0})) == 2);
    const auto [a, b] = split_by_view(ColumnSubset::all(cm));
    CHECK(a.count() == 2);
    CHECK(b.count() == 3);
    const auto [c, d] = split_by_view(none);
    CHECK(c.empty());
    CHECK(d.empty());
    const auto [e, f] = split_by_view(ColumnSubset(cm, {0, 1}));
    CHECK(e == ColumnSubset(cm, {0, 1}));
    CHECK(f.empty());
  }

  TEST_CASE("g is monotone and subadditive") {
    const auto p = gen_fixed_per_column(ProblemShape(10, 6, 6), 5, 3);
    const auto cm = build_constraint(p, RankTriple(3, 2, 2));
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
      ColumnSubset a(cm), b(cm);
      for (std::size_t j = 0; j < cm.size(); ++j) {
        if (rng.uniform01() < 0.2) a.insert(j);
        if (rng.uniform01() < 0.2) b.insert(j);
      }
      ColumnSubset u = a;
      for (auto j : b.indices()) u.insert(j);
      CHECK(nonzero_rows(u) >= nonzero_rows(a));
      CHECK(nonzero_rows(u) <= nonzero_rows(a) + nonzero_rows(b));
    }
  }

  TEST_CASE("seeded random pivots") {
    const auto p = gen_fixed_per_column(ProblemShape(8, 3, 3), 5, 4);
    const RankTriple k(3, 2, 2);
    const auto a = build_constraint(p, k, {PivotRule::SeededRandom, 17});
    const auto b = build_constraint(p, k, {PivotRule::SeededRandom, 17});
    CHECK(format_constraint(a) == format_constraint(b));
    CHECK(a.size() == build_constraint(p, k).size());
    for (const auto& c : a.columns()) {
      CHECK(c.pivot_rows.size() == 2);
      CHECK(std::find(c.pivot_rows.begin(), c.pivot_rows.end(), c.extra_row) == c.pivot_rows.end());
    }
  }

  TEST_CASE("rebuild is deterministic") {
    const auto p = gen_fixed_per_column(ProblemShape(9, 4, 4), 6, 1);
    CHECK(format_constraint(build_constraint(p, RankTriple(3, 2, 2))) ==
          format_constraint(build_constraint(p, RankTriple(3, 2, 2))));
  }
}
