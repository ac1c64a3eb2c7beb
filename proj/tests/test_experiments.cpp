#include "doctest.h"

#include "mvc/experiments.hpp"

using namespace mvc;

TEST_SUITE("experiments") {
  TEST_CASE("sweep rows") {
    const SweepConfig cfg;
    const auto rows = figure3_sweep(cfg, 100);
    REQUIRE(rows.size() == 51);
    CHECK(rows.front().r1 == 50);
    CHECK(rows.front().l_proposed == 188);
    CHECK(rows.front().l_baseline == 201);
    CHECK(rows.back().r1 == 100);
    CHECK(figure3_sweep(cfg, 40).size() == 21);
    CHECK(figure3_sweep(cfg, 60).size() == 31);
    CHECK(figure3_sweep(SweepConfig{}, 41).front().r1 == 21);
    CHECK(format_sweep_csv(rows) == format_sweep_csv(figure3_sweep(cfg, 100)));
    CHECK(format_sweep_csv(rows).rfind("r1,l_proposed,l_baseline,assumptions_ok\n50,188,201,", 0) == 0);
  }

  TEST_CASE("wilson interval") {
    const auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
    const auto [a, b] = wilson_interval(100, 100);
    CHECK(b == 1.0);
    CHECK(a > 0.95);
    CHECK(wilson_interval(0, 0) == std::pair<double, double>{0.0, 1.0});
  }

  TEST_CASE("phase transition endpoints and determinism") {
    PhaseConfig cfg;
    cfg.shape = ProblemShape(6, 5, 5);
    cfg.ranks = RankTriple(2, 2, 2);
    cfg.l_values = {1, 2, 6};
    cfg.trials = 10;
    cfg.seed = 4;
    cfg.threads = 1;
    const auto a = phase_transition(cfg);
    REQUIRE(a.rows.size() == 3);
    CHECK(a.rows[0].assumption1_failures == 10);
    CHECK(a.rows[0].trials == 0);
    CHECK(a.rows[1].success_rate == 0.0);
    CHECK(a.rows[2].success_rate == 1.0);
    CHECK(a.records.size() == 30);
    cfg.threads = 4;
    const auto b = phase_transition(cfg);
    CHECK(format_phase_csv(a.rows) == format_phase_csv(b.rows));
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].seed == b.records[i].seed);
      CHECK(a.records[i].oracle_verdict == b.records[i].oracle_verdict);
      CHECK(a.records[i].checker_verdict == b.records[i].checker_verdict);
    }
    CHECK(format_phase_csv(a.rows).rfind("l,success_rate,ci_low,ci_high,unknown_rate,trials\n", 0) == 0);
  }

  TEST_CASE("checker decider and unique mode") {
    PhaseConfig cfg;
    cfg.shape = ProblemShape(6, 10, 10);
    cfg.ranks = RankTriple(2, 1, 1);
    cfg.l_values = {6};
    cfg.trials = 4;
    cfg.threads = 2;
    cfg.decider = PhaseDecider::Checker;
    CHECK(phase_transition(cfg).rows[0].success_rate == 1.0);
    cfg.mode = PhaseMode::Unique;
    const auto u = phase_transition(cfg);
    CHECK(u.rows[0].success_rate == 1.0);
    CHECK(u.rows[0].unknown_rate == 0.0);
  }

  TEST_CASE("l above n is rejected") {
    PhaseConfig cfg;
    cfg.shape = ProblemShape(4, 2, 2);
    cfg.ranks = RankTriple(1, 1, 1);
    cfg.l_values = {5};
    CHECK_THROWS_AS(phase_transition(cfg), Error);
  }
}
