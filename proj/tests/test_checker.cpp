#include "doctest.h"
#include "helpers.hpp"

#include "mvc/checker.hpp"

using namespace mvc;

namespace {

std::vector<std::size_t> all_columns(const ConstraintMatrix& cm) {
  std::vector<std::size_t> out(cm.size());
  for (std::size_t j = 0; j < cm.size(); ++j) out[j] = j;
  return out;
}

CheckerOptions enumerate_engine() {
  CheckerOptions o;
  o.engine = VerifyEngine::Enumerate;
  return o;
}

// A random desk-scale instance and a random candidate of at most 15 columns.
struct RandomCase {
  ConstraintMatrix cm;
  std::vector<std::size_t> candidate;
};

RandomCase random_case(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = 5 + rng.uniform_below(5);
  const std::size_t r = 1 + rng.uniform_below(3);
  const std::size_t r1 = (r + 1) / 2 + rng.uniform_below(r - (r + 1) / 2 + 1);
  const std::size_t r2 = r - r1 + rng.uniform_below(r1 - (r - r1) + 1);
  const RankTriple k(r, r1, std::max(r2, r - r1));
  const ProblemShape shape(n, k.r1() + 1 + rng.uniform_below(2), k.r2() + 1 + rng.uniform_below(2));
  const std::size_t l = std::max(k.r1(), k.r2()) + 1 + rng.uniform_below(n - std::max(k.r1(), k.r2()));
  auto cm = build_constraint(gen_fixed_per_column(shape, l, seed), k);
  std::vector<std::size_t> cand;
  for (std::size_t j = 0; j < cm.size() && cand.size() < 15; ++j) {
    if (rng.uniform01() < 0.5) cand.push_back(j);
  }
  return {std::move(cm), cand};
}

}  // namespace

TEST_SUITE("checker") {
  TEST_CASE("count bound on the worked example") {
    const auto cm = build_constraint(testing::example_pattern(), testing::kExampleRanks);
    CHECK(count_bound(ColumnSubset(cm)) == 0);
    CHECK(count_bound(ColumnSubset::all(cm)) == 5);
    CHECK(count_bound(ColumnSubset(cm, {2, 3, 4})) == 5);  // g2 = 4: 1*(4-2) + 1*(4-1)
    CHECK(count_bound(ColumnSubset(cm, {0})) == 1);
  }

  TEST_CASE("worked example: every subset follows the three-case analysis") {
    const auto cm = build_constraint(testing::example_pattern(), testing::kExampleRanks);
    const auto cols = all_columns(cm);
    for (std::uint64_t mask = 1; mask < 32; ++mask) {
      const ColumnSubset t(cm, testing::pick(cols, mask));
      const auto [t1, t2] = split_by_view(t);
      const auto g2 = nonzero_rows(t2);
      const auto g = nonzero_rows(t);
      const auto c = t.count();
      const auto bound = count_bound(t);
      CAPTURE(mask);
      CHECK(bound == static_cast<std::size_t>(testing::naive_bound(cm, t.indices())));
      if (g2 == 0) {
        CHECK(bound == nonzero_rows(t1) - 1);
      } else if (g2 == 3) {
        CHECK(bound == 1 + (g - 1));
      } else {
        REQUIRE(g2 == 4);
        CHECK(g == 4);
        CHECK(bound == 5);
      }
      CHECK(bound >= c);
    }
    CHECK(verify_candidate(ColumnSubset::all(cm)));
    CHECK(verify_candidate(ColumnSubset::all(cm), enumerate_engine()));
  }

  TEST_CASE("pigeonhole violation") {
    // r = r1 = 1, r2 = 0: r1' = 1, r2' = r' = 0. Two view-1 columns with the
    // same two rows give bound 1 < 2.
    SamplingPattern p(ProblemShape(4, 2, 1));
    for (std::size_t c = 0; c < 2; ++c) {
      p.set(0, c);
      p.set(1, c);
    }
    const auto cm = build_constraint(p, RankTriple(1, 1, 0));
    REQUIRE(cm.size() == 2);
    CHECK_FALSE(verify_candidate(ColumnSubset::all(cm)));
    CHECK_FALSE(verify_candidate(ColumnSubset::all(cm), enumerate_engine()));
    const auto bad = find_violation(ColumnSubset::all(cm));
    REQUIRE(bad);
    CHECK(count_bound(*bad) < bad->count());
  }

  TEST_CASE("min-cut, enumeration and brute force agree") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const auto rc = random_case(seed);
      if (rc.candidate.empty()) continue;
      const ColumnSubset cand(rc.cm, rc.candidate);
      const bool expected = testing::naive_verify(rc.cm, rc.candidate);
      CAPTURE(seed);
      CHECK(verify_candidate(cand) == expected);
      CHECK(verify_candidate(cand, enumerate_engine()) == expected);
      ++checked;
    }
    CHECK(checked > 250);
  }

  TEST_CASE("single-view condition agrees with brute force") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto rc = random_case(seed);
      std::vector<std::size_t> view1;
      for (auto j : rc.candidate) {
        if (rc.cm.column(j).view == 1) view1.push_back(j);
      }
      if (view1.empty()) continue;
      const auto rank = rc.cm.ranks().r1();
      const bool expected = testing::naive_single_view(rc.cm, view1, rank);
      CAPTURE(seed);
      CHECK(single_view_condition(ColumnSubset(rc.cm, view1), rank) == expected);
      CHECK(single_view_condition(ColumnSubset(rc.cm, view1), rank, enumerate_engine()) == expected);
    }
  }

  TEST_CASE("single-view condition examples") {
    // Shared pivot row 0, distinct extra rows: g grows by one per column.
    const std::size_t n = 6;
    SamplingPattern p(ProblemShape(n, 1, 1));
    for (std::size_t x = 0; x < n; ++x) p.set(x, 0);
    p.set(0, 1);
    p.set(1, 1);
    const auto cm = build_constraint(p, RankTriple(1, 1, 1));
    CHECK(single_view_condition(ColumnSubset(cm, {0, 1, 2, 3, 4}), 1));
    // Two view-1 columns on the same rows: g - r = 1 < 2.
    SamplingPattern q(ProblemShape(4, 2, 1));
    for (std::size_t c = 0; c < 2; ++c) {
      q.set(0, c);
      q.set(1, c);
    }
    q.set(0, 2);
    const auto cq = build_constraint(q, RankTriple(1, 1, 1));
    CHECK_FALSE(single_view_condition(ColumnSubset(cq, {0, 1}), 1));
  }

  TEST_CASE("strict subsets") {
    const auto cm = build_constraint(testing::example_pattern(), testing::kExampleRanks);
    CheckerOptions strict;
    strict.strict_subsets = true;
    CHECK(verify_candidate(ColumnSubset::all(cm), strict));
    CHECK(check_finite(cm, ProblemShape(4, 2, 2), strict).status == VerdictStatus::Finite);
  }

  TEST_CASE("check_finite on the worked example") {
    const auto cm = build_constraint(testing::example_pattern(), testing::kExampleRanks);
    const auto v = check_finite(cm, ProblemShape(4, 2, 2));
    CHECK(v.status == VerdictStatus::Finite);
    CHECK(v.budget == 5);
    CHECK(v.certificate.size() == 5);
    CHECK(testing::naive_verify(cm, v.certificate));

    CheckerOptions exhaustive;
    exhaustive.search = CandidateSearch::Exhaustive;
    CHECK(check_finite(cm, ProblemShape(4, 2, 2), exhaustive).status == VerdictStatus::Finite);
  }

  TEST_CASE("single deletions are infinite") {
    const auto base = testing::example_pattern();
    for (std::size_t x = 0; x < 4; ++x) {
      for (std::size_t c = 0; c < 4; ++c) {
        if (!base.observed(x, c)) continue;
        auto p = base;
        p.set(x, c, false);
        if (!validate_assumption1(p, testing::kExampleRanks)) continue;
        const auto cm = build_constraint(p, testing::kExampleRanks);
        CHECK(cm.size() == 4);
        const auto v = check_finite(cm, p.shape());
        CHECK(v.status == VerdictStatus::Infinite);
        REQUIRE(v.available);
        CHECK(*v.available < 5);
      }
    }
  }

  TEST_CASE("zero rank is trivially finite") {
    SamplingPattern p(ProblemShape(3, 2, 2));
    const auto cm = build_constraint(p, RankTriple(0, 0, 0));
    const auto v = check_finite(cm, p.shape());
    CHECK(v.status == VerdictStatus::Finite);
    CHECK(v.certificate.empty());
  }

  TEST_CASE("exhaustive search settles small instances") {
    CheckerOptions exhaustive;
    exhaustive.search = CandidateSearch::Exhaustive;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const ProblemShape shape(6, 3, 3);
      const RankTriple k(2, 1, 2);
      const auto p = gen_fixed_per_column(shape, 3 + seed % 2, seed);
      const auto cm = build_constraint(p, k);
      if (cm.size() > 18) continue;
      const auto v = check_finite(cm, shape, exhaustive);
      CAPTURE(seed);
      CHECK(v.status != VerdictStatus::Unknown);
      if (v.status == VerdictStatus::Finite) CHECK(testing::naive_verify(cm, v.certificate));
    }
  }

  TEST_CASE("adding samples never loses finiteness") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const ProblemShape shape(8, 4, 4);
      const RankTriple k(2, 2, 1);
      auto p = gen_fixed_per_column(shape, 3, seed);
      auto before = check_finite(build_constraint(p, k), shape).status;
      Rng rng(seed);
      for (int step = 0; step < 6; ++step) {
        p.set(rng.uniform_below(8), rng.uniform_below(8));
        const auto after = check_finite(build_constraint(p, k), shape).status;
        if (before == VerdictStatus::Finite) CHECK(after == VerdictStatus::Finite);
        if (after != VerdictStatus::Unknown) before = after;
      }
    }
  }

  TEST_CASE("rank upper bound never exceeds the column count") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto rc = random_case(seed);
      const ColumnSubset all = ColumnSubset::all(rc.cm);
      std::vector<std::size_t> witness;
      const auto bound = rank_upper_bound(all, &witness);
      CHECK(bound <= all.count());
      CHECK(bound <= count_bound(all));
    }
  }

  TEST_CASE("uniqueness cannot be certified without enough columns") {
    const auto cm = build_constraint(testing::example_pattern(), testing::kExampleRanks);
    const auto v = check_unique(cm, ProblemShape(4, 2, 2));
    CHECK(v.status == VerdictStatus::Unknown);
  }

  TEST_CASE("uniqueness certificate on a well-sampled pattern") {
    const ProblemShape shape(6, 10, 10);
    const RankTriple k(2, 1, 1);
    const auto p = gen_fixed_per_column(shape, 5, 1);
    const auto cm = build_constraint(p, k);
    const auto v = check_unique(cm, shape);
    REQUIRE(v.status == VerdictStatus::UniqueCertified);
    const std::size_t m = basis_dof(shape, k);
    CHECK(v.certificate.size() == m);
    CHECK(v.view1_certificate.size() == shape.n() - k.r1());
    CHECK(v.view2_certificate.size() == shape.n() - k.r2());
    std::vector<int> used(cm.size(), 0);
    for (const auto* set : {&v.certificate, &v.view1_certificate, &v.view2_certificate}) {
      for (auto j : *set) ++used[j];
    }
    CHECK(std::all_of(used.begin(), used.end(), [](int u) { return u <= 1; }));
    CHECK(verify_candidate(ColumnSubset(cm, v.certificate)));
    CHECK(single_view_condition(ColumnSubset(cm, v.view1_certificate), k.r1()));
    CHECK(single_view_condition(ColumnSubset(cm, v.view2_certificate), k.r2()));
    for (auto j : v.view1_certificate) CHECK(cm.column(j).view == 1);
    for (auto j : v.view2_certificate) CHECK(cm.column(j).view == 2);
  }

  TEST_CASE("counting precheck for uniqueness") {
    const ProblemShape shape(6, 3, 3);
    const RankTriple k(2, 1, 1);
    const auto cm = build_constraint(gen_fixed_per_column(shape, 4, 2), k);
    // c = 6 * 3 = 18 < m + (n - r1) + (n - r2) = 10 + 5 + 5.
    REQUIRE(cm.size() == 18);
    CHECK(check_unique(cm, shape).status == VerdictStatus::Unknown);
  }

  TEST_CASE("verdict names") {
    CHECK(verdict_name(VerdictStatus::Finite) == "Finite");
    CHECK(verdict_name(VerdictStatus::UniqueCertified) == "UniqueCertified");
  }
}
