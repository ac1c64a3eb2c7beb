#include "mvc/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace mvc {

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::EpsilonOutOfRange, "epsilon must lie in (0, 1)");
}

double log_in(double x, LogBase base) {
  switch (base) {
    case LogBase::Two: return std::log2(x);
    case LogBase::Ten: return std::log10(x);
    case LogBase::E: break;
  }
  return std::log(x);
}

std::size_t next_integer_above(double x) {
  if (x < 0.0) return 0;
  return static_cast<std::size_t>(std::floor(x)) + 1;
}

void settle(BoundTerms& t) {
  t.value = t.log_branch;
  t.branch = "log";
  for (const auto& [name, v] : t.rank_terms) {
    if (v > t.value) {
      t.value = v;
      t.branch = name;
    }
  }
  t.l = next_integer_above(t.value);
}

BoundTerms proposed_terms(std::size_t n, const RankTriple& ranks, double eps, LogBase base, double factor) {
  require_eps(eps);
  if (n == 0) throw Error(ErrorCode::InvalidShape, "n must be positive");
  BoundTerms t;
  t.log_n = 9.0 * log_in(static_cast<double>(n) / eps, base);
  t.log_rank_source = "none";
  // Empty variable groups contribute no term.
  const std::pair<const char*, std::size_t> groups[] = {{"r1p", ranks.r1p()}, {"r2p", ranks.r2p()}, {"rp", ranks.rp()}};
  bool any = false;
  double best = 0.0;
  for (const auto& [name, r] : groups) {
    if (r == 0) continue;
    const double v = log_in(factor * static_cast<double>(r) / eps, base);
    if (!any || v > best) {
      best = v;
      t.log_rank_source = name;
      any = true;
    }
  }
  t.log_rank = any ? 3.0 * best : 0.0;
  t.log_branch = t.log_n + t.log_rank + 6.0;
  t.rank_terms = {{"2r1", 2.0 * static_cast<double>(ranks.r1())}, {"2r2", 2.0 * static_cast<double>(ranks.r2())}};
  settle(t);
  return t;
}

}  // namespace

std::string_view log_base_name(LogBase base) {
  switch (base) {
    case LogBase::Two: return "2";
    case LogBase::Ten: return "10";
    case LogBase::E: break;
  }
  return "e";
}

LogBase parse_log_base(std::string_view text) {
  if (text == "e") return LogBase::E;
  if (text == "2") return LogBase::Two;
  if (text == "10") return LogBase::Ten;
  throw Error(ErrorCode::UsageError, "log base must be one of e, 2, 10");
}

BoundTerms finite_bound_terms(std::size_t n, const RankTriple& ranks, double eps, LogBase base) {
  return proposed_terms(n, ranks, eps, base, 3.0);
}

BoundTerms unique_bound_terms(std::size_t n, const RankTriple& ranks, double eps, LogBase base) {
  return proposed_terms(n, ranks, eps, base, 6.0);
}

BoundTerms baseline_bound_terms(std::size_t n, const RankTriple& ranks, double eps, LogBase base) {
  require_eps(eps);
  if (n == 0) throw Error(ErrorCode::InvalidShape, "n must be positive");
  BoundTerms t;
  t.log_n = 12.0 * log_in(static_cast<double>(n) / eps, base);
  t.log_rank_source = "none";
  t.log_branch = t.log_n;
  t.rank_terms = {{"2r1", 2.0 * static_cast<double>(ranks.r1())},
                  {"2r2", 2.0 * static_cast<double>(ranks.r2())},
                  {"2r", 2.0 * static_cast<double>(ranks.r())}};
  settle(t);
  return t;
}

std::size_t finite_sample_bound(std::size_t n, const RankTriple& ranks, double eps, LogBase base) {
  return finite_bound_terms(n, ranks, eps, base).l;
}

std::size_t unique_sample_bound(std::size_t n, const RankTriple& ranks, double eps, LogBase base) {
  return unique_bound_terms(n, ranks, eps, base).l;
}

std::size_t baseline_sample_bound(std::size_t n, const RankTriple& ranks, double eps, LogBase base) {
  return baseline_bound_terms(n, ranks, eps, base).l;
}

double probability_bounds(std::size_t n, const RankTriple& ranks, double eps, bool unique, LogBase base) {
  const auto t = unique ? unique_bound_terms(n, ranks, eps, base) : finite_bound_terms(n, ranks, eps, base);
  const double nd = static_cast<double>(n);
  return t.value / nd + 1.0 / std::pow(nd, 0.25);
}

std::vector<AssumptionCheck> check_dimension_assumptions(const ProblemShape& shape, const RankTriple& ranks,
                                                         bool unique) {
  const double n = static_cast<double>(shape.n());
  const std::size_t extra = unique ? 1 : 0;
  const std::size_t top = std::max({ranks.r1(), ranks.r2(), ranks.rp()});
  const double need1 = static_cast<double>(checked_mul(ranks.r1p() + extra, shape.n() - ranks.r1()));
  const double need2 = static_cast<double>(checked_mul(ranks.r2p() + extra, shape.n() - ranks.r2()));
  const double shared = static_cast<double>(checked_mul(ranks.rp(), shape.n() - ranks.rp()));
  std::vector<AssumptionCheck> out;
  // 6 max <= n decides n/6 >= max exactly in integers.
  out.push_back({"n/6 >= max(r1,r2,r')", n / 6.0, static_cast<double>(top), 6 * top <= shape.n()});
  const double m1 = static_cast<double>(shape.m1()), m2 = static_cast<double>(shape.m2());
  out.push_back({unique ? "m1 >= (r1'+1)(n-r1)" : "m1 >= r1'(n-r1)", m1, need1, m1 >= need1});
  out.push_back({unique ? "m2 >= (r2'+1)(n-r2)" : "m2 >= r2'(n-r2)", m2, need2, m2 >= need2});
  const double total = need1 + need2 + shared;
  out.push_back({unique ? "m1+m2 >= (r1'+1)(n-r1)+(r2'+1)(n-r2)+r'(n-r')" : "m1+m2 >= r1'(n-r1)+r2'(n-r2)+r'(n-r')",
                 m1 + m2, total, m1 + m2 >= total});
  return out;
}

bool all_pass(const std::vector<AssumptionCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const AssumptionCheck& c) { return c.pass; });
}

double bernoulli_success_probability(const ProblemShape& shape, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorCode::EpsilonOutOfRange, "epsilon must lie in [0, 1)");
  const double q = std::exp(-std::sqrt(static_cast<double>(shape.n())) / 2.0);
  return (1.0 - eps) * std::exp(static_cast<double>(shape.columns()) * std::log1p(-q));
}

BoundReport bound_report(std::size_t n, const RankTriple& ranks, double eps, LogBase base,
                         std::optional<ProblemShape> shape) {
  BoundReport rep;
  rep.n = n;
  rep.ranks = ranks;
  rep.eps = eps;
  rep.base = base;
  rep.finite = finite_bound_terms(n, ranks, eps, base);
  rep.unique = unique_bound_terms(n, ranks, eps, base);
  rep.baseline = baseline_bound_terms(n, ranks, eps, base);
  rep.l_finite = rep.finite.l;
  rep.l_unique = rep.unique.l;
  rep.l_baseline = rep.baseline.l;
  const double nd = static_cast<double>(n);
  rep.p_finite = rep.finite.value / nd + 1.0 / std::pow(nd, 0.25);
  rep.p_unique = rep.unique.value / nd + 1.0 / std::pow(nd, 0.25);
  if (shape) {
    shape->require_compatible(ranks);
    rep.shape = shape;
    rep.assumptions_finite = check_dimension_assumptions(*shape, ranks, false);
    rep.assumptions_unique = check_dimension_assumptions(*shape, ranks, true);
    rep.success_prob_bernoulli = bernoulli_success_probability(*shape, eps);
  }
  return rep;
}

}  // namespace mvc
