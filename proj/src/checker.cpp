#include "mvc/checker.hpp"

#include "mvc/flow.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mvc {

std::string_view verdict_name(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Finite: return "Finite";
    case VerdictStatus::Infinite: return "Infinite";
    case VerdictStatus::UniqueCertified: return "UniqueCertified";
    case VerdictStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

using Index = std::size_t;
using Columns = std::vector<Index>;

std::int64_t positive_part(std::int64_t x) { return x > 0 ? x : 0; }

// Joint bound given the three row unions and whether each view block is empty.
std::int64_t joint_bound(const RankTriple& ranks, std::size_t g1, bool has1, std::size_t g2, bool has2,
                         std::size_t g) {
  const auto r1 = static_cast<std::int64_t>(ranks.r1());
  const auto r2 = static_cast<std::int64_t>(ranks.r2());
  const auto rp = static_cast<std::int64_t>(ranks.rp());
  std::int64_t total = 0;
  if (has1) total += static_cast<std::int64_t>(ranks.r1p()) * positive_part(static_cast<std::int64_t>(g1) - r1);
  if (has2) total += static_cast<std::int64_t>(ranks.r2p()) * positive_part(static_cast<std::int64_t>(g2) - r2);
  if (has1 || has2) total += rp * positive_part(static_cast<std::int64_t>(g) - rp);
  return total;
}

std::int64_t bound_of(const ConstraintMatrix& cm, const Columns& cols) {
  Bitset u1(cm.n()), u2(cm.n());
  bool has1 = false, has2 = false;
  for (auto j : cols) {
    const auto& c = cm.column(j);
    if (c.view == 1) {
      u1 |= c.support;
      has1 = true;
    } else {
      u2 |= c.support;
      has2 = true;
    }
  }
  return joint_bound(cm.ranks(), u1.count(), has1, u2.count(), has2, (u1 | u2).count());
}

// Either the joint inequality (count_bound >= c) or the single-view one
// (g - rank >= c).
struct Condition {
  bool single_view = false;
  std::size_t view_rank = 0;
};

class SlackSolver {
 public:
  SlackSolver(const ConstraintMatrix& cm, const CheckerOptions& options, Condition condition)
      : cm_(cm), options_(options), condition_(condition) {}

  /// A nonempty T within `cols`, containing `forced` when given, whose slack
  /// is negative.
  std::optional<Columns> violation(const Columns& cols, std::optional<Index> forced) const {
    if (options_.strict_subsets || options_.engine == VerifyEngine::Enumerate) {
      return enumerate(cols, forced);
    }
    return condition_.single_view ? cut_single(cols, forced) : cut_joint(cols, forced);
  }

 private:
  // ---- min-cut engine -------------------------------------------------------
  //
  // For T restricted to a fixed emptiness pattern of its view blocks, the
  // bound is a nonnegative weighted row coverage minus a constant, so
  // min_T bound(T) - c(T) is a max-weight-closure problem.

  struct Weights {
    std::int64_t shared = 0;  // rows touched by any column
    std::int64_t view1 = 0;   // rows touched by view-1 columns
    std::int64_t view2 = 0;   // rows touched by view-2 columns
    std::int64_t constant = 0;
  };

  // Returns the minimising T (a superset of `forced`) and its value.
  std::pair<Columns, std::int64_t> min_closure(const Columns& cols, const Columns& forced,
                                               const Weights& w) const {
    const std::size_t n = cm_.n();
    const std::size_t source = 0, sink = 1, col_base = 2;
    const std::size_t item_base = col_base + cols.size();
    MaxFlow flow(item_base + 3 * n);
    for (std::size_t x = 0; x < n; ++x) {
      if (w.shared > 0) flow.add_edge(item_base + 3 * x, sink, w.shared);
      if (w.view1 > 0) flow.add_edge(item_base + 3 * x + 1, sink, w.view1);
      if (w.view2 > 0) flow.add_edge(item_base + 3 * x + 2, sink, w.view2);
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const bool is_forced = std::find(forced.begin(), forced.end(), cols[i]) != forced.end();
      flow.add_edge(source, col_base + i, is_forced ? MaxFlow::kInfinity : 1);
      const auto& c = cm_.column(cols[i]);
      const std::int64_t own = c.view == 1 ? w.view1 : w.view2;
      const std::size_t own_slot = c.view == 1 ? 1 : 2;
      for (auto x = c.support.find_first(); x != Bitset::npos; x = c.support.find_next(x)) {
        if (w.shared > 0) flow.add_edge(col_base + i, item_base + 3 * x, MaxFlow::kInfinity);
        if (own > 0) flow.add_edge(col_base + i, item_base + 3 * x + own_slot, MaxFlow::kInfinity);
      }
    }
    const std::int64_t cut = flow.run(source, sink);
    const auto side = flow.source_side(source);
    Columns chosen;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (side[col_base + i]) chosen.push_back(cols[i]);
    }
    return {chosen, cut - static_cast<std::int64_t>(cols.size()) - w.constant};
  }

  Weights case_weights(bool has1, bool has2) const {
    const auto& rk = cm_.ranks();
    const auto r1 = static_cast<std::int64_t>(rk.r1()), r2 = static_cast<std::int64_t>(rk.r2());
    const auto r1p = static_cast<std::int64_t>(rk.r1p()), r2p = static_cast<std::int64_t>(rk.r2p());
    const auto rp = static_cast<std::int64_t>(rk.rp());
    Weights w;
    w.shared = rp;
    w.constant = rp * rp;
    if (has1) {
      w.view1 = r1p;
      w.constant += r1p * r1;
    }
    if (has2) {
      w.view2 = r2p;
      w.constant += r2p * r2;
    }
    return w;
  }

  std::optional<Columns> cut_joint(const Columns& cols, std::optional<Index> forced) const {
    Columns block1, block2;
    for (auto j : cols) (cm_.column(j).view == 1 ? block1 : block2).push_back(j);

    auto try_case = [&](const Columns& domain, const Columns& must, bool has1, bool has2) -> std::optional<Columns> {
      auto [chosen, value] = min_closure(domain, must, case_weights(has1, has2));
      if (value < 0) return chosen;
      return std::nullopt;
    };

    if (forced) {
      const bool first = cm_.column(*forced).view == 1;
      const Columns& own = first ? block1 : block2;
      const Columns& other = first ? block2 : block1;
      if (auto v = try_case(own, {*forced}, first, !first)) return v;
      for (auto k : other) {
        if (auto v = try_case(cols, {*forced, k}, true, true)) return v;
      }
      return std::nullopt;
    }
    for (auto j : block1) {
      if (auto v = try_case(block1, {j}, true, false)) return v;
    }
    for (auto k : block2) {
      if (auto v = try_case(block2, {k}, false, true)) return v;
    }
    for (auto j : block1) {
      for (auto k : block2) {
        if (auto v = try_case(cols, {j, k}, true, true)) return v;
      }
    }
    return std::nullopt;
  }

  std::optional<Columns> cut_single(const Columns& cols, std::optional<Index> forced) const {
    Weights w;
    w.shared = 1;
    w.constant = static_cast<std::int64_t>(condition_.view_rank);
    if (forced) {
      auto [chosen, value] = min_closure(cols, {*forced}, w);
      if (value < 0) return chosen;
      return std::nullopt;
    }
    for (auto j : cols) {
      auto [chosen, value] = min_closure(cols, {j}, w);
      if (value < 0) return chosen;
    }
    return std::nullopt;
  }

  // ---- enumeration engine ---------------------------------------------------

  struct State {
    Bitset u1, u2;
    bool has1 = false, has2 = false;
    std::size_t count = 0;
    Columns chosen;
    std::vector<std::size_t> sources;
  };

  std::int64_t slack(const State& s) const {
    std::int64_t bound = 0;
    if (condition_.single_view) {
      bound = static_cast<std::int64_t>((s.u1 | s.u2).count()) - static_cast<std::int64_t>(condition_.view_rank);
    } else {
      bound = joint_bound(cm_.ranks(), s.u1.count(), s.has1, s.u2.count(), s.has2, (s.u1 | s.u2).count());
    }
    return bound - static_cast<std::int64_t>(s.count);
  }

  State extend(const State& s, Index j) const {
    State next = s;
    const auto& c = cm_.column(j);
    if (c.view == 1) {
      next.u1 |= c.support;
      next.has1 = true;
    } else {
      next.u2 |= c.support;
      next.has2 = true;
    }
    ++next.count;
    next.chosen.push_back(j);
    next.sources.push_back(c.source_column);
    return next;
  }

  bool source_taken(const State& s, Index j) const {
    return std::find(s.sources.begin(), s.sources.end(), cm_.column(j).source_column) != s.sources.end();
  }

  void tick(std::uint64_t& nodes) const {
    if (++nodes > options_.max_enum) {
      throw Error(ErrorCode::EnumerationCapExceeded,
                  "subset enumeration exceeded " + std::to_string(options_.max_enum) + " nodes");
    }
  }

  std::optional<Columns> dfs(const Columns& order, std::size_t pos, const State& s, std::uint64_t& nodes) const {
    for (std::size_t i = pos; i < order.size(); ++i) {
      if (options_.strict_subsets && source_taken(s, order[i])) continue;
      State next = extend(s, order[i]);
      tick(nodes);
      const auto value = slack(next);
      if (value < 0) return next.chosen;
      // Each added column lowers the slack by at most one.
      const auto remaining = static_cast<std::int64_t>(order.size() - i - 1);
      if (value < remaining) {
        if (auto found = dfs(order, i + 1, next, nodes)) return found;
      }
    }
    return std::nullopt;
  }

  std::optional<Columns> enumerate(const Columns& cols, std::optional<Index> forced) const {
    Columns order;
    for (auto j : cols) {
      if (!forced || j != *forced) order.push_back(j);
    }
    // Columns with heavy support overlap tighten the bound fastest.
    std::vector<std::size_t> overlap(cm_.size(), 0);
    for (auto a : order) {
      for (auto b : order) {
        if (a != b) overlap[a] += (cm_.column(a).support & cm_.column(b).support).count();
      }
    }
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return overlap[a] > overlap[b]; });

    State root{Bitset(cm_.n()), Bitset(cm_.n()), false, false, 0, {}, {}};
    std::uint64_t nodes = 0;
    if (forced) {
      root = extend(root, *forced);
      tick(nodes);
      if (slack(root) < 0) return root.chosen;
      if (slack(root) >= static_cast<std::int64_t>(order.size())) return std::nullopt;
    }
    auto found = dfs(order, 0, root, nodes);
    if (found) std::sort(found->begin(), found->end());
    return found;
  }

  const ConstraintMatrix& cm_;
  const CheckerOptions& options_;
  Condition condition_;
};

// Unconstrained closure minimisers give cheap witnesses for the rank bound.
class BoundProbe {
 public:
  explicit BoundProbe(const ConstraintMatrix& cm) : cm_(cm) {}

  Columns minimiser(const Columns& cols, bool use1, bool use2) const {
    const auto& rk = cm_.ranks();
    const std::size_t n = cm_.n();
    const std::size_t source = 0, sink = 1, col_base = 2;
    const std::size_t item_base = col_base + cols.size();
    MaxFlow flow(item_base + 3 * n);
    const auto rp = static_cast<std::int64_t>(rk.rp());
    const auto w1 = use1 ? static_cast<std::int64_t>(rk.r1p()) : 0;
    const auto w2 = use2 ? static_cast<std::int64_t>(rk.r2p()) : 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (rp > 0) flow.add_edge(item_base + 3 * x, sink, rp);
      if (w1 > 0) flow.add_edge(item_base + 3 * x + 1, sink, w1);
      if (w2 > 0) flow.add_edge(item_base + 3 * x + 2, sink, w2);
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
      flow.add_edge(source, col_base + i, 1);
      const auto& c = cm_.column(cols[i]);
      for (auto x = c.support.find_first(); x != Bitset::npos; x = c.support.find_next(x)) {
        if (rp > 0) flow.add_edge(col_base + i, item_base + 3 * x, MaxFlow::kInfinity);
        if (c.view == 1 && w1 > 0) flow.add_edge(col_base + i, item_base + 3 * x + 1, MaxFlow::kInfinity);
        if (c.view == 2 && w2 > 0) flow.add_edge(col_base + i, item_base + 3 * x + 2, MaxFlow::kInfinity);
      }
    }
    flow.run(source, sink);
    const auto side = flow.source_side(source);
    Columns chosen;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (side[col_base + i]) chosen.push_back(cols[i]);
    }
    return chosen;
  }

 private:
  const ConstraintMatrix& cm_;
};

std::size_t rank_bound_of(const ConstraintMatrix& cm, const Columns& cols, Columns* witness) {
  std::size_t best = cols.size();
  Columns best_set;
  auto consider = [&](const Columns& t) {
    if (t.empty()) return;
    const auto b = static_cast<std::size_t>(bound_of(cm, t)) + cols.size() - t.size();
    if (b < best) {
      best = b;
      best_set = t;
    }
  };
  consider(cols);
  Columns block1, block2;
  for (auto j : cols) (cm.column(j).view == 1 ? block1 : block2).push_back(j);
  BoundProbe probe(cm);
  consider(probe.minimiser(block1, true, false));
  consider(probe.minimiser(block2, false, true));
  consider(probe.minimiser(cols, true, true));
  if (witness) *witness = best_set;
  return best;
}

Columns view_columns(const ConstraintMatrix& cm, int view) {
  Columns out;
  for (std::size_t j = 0; j < cm.size(); ++j) {
    if (cm.column(j).view == view) out.push_back(j);
  }
  return out;
}

// Adds columns of `order` (skipping `excluded`) while the set stays valid.
Columns greedy_grow(const SlackSolver& solver, const Columns& order, const Bitset& excluded, std::size_t target) {
  Columns chosen;
  if (target == 0) return chosen;
  for (auto e : order) {
    if (excluded.test(e)) continue;
    Columns trial = chosen;
    trial.push_back(e);
    if (!solver.violation(trial, e)) {
      chosen = std::move(trial);
      if (chosen.size() == target) break;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Columns shuffled(Columns order, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.uniform_below(i))]);
  }
  return order;
}

enum class SearchOutcome { Found, Exhausted, CapHit };

// Include/exclude backtracking for an m-column valid set.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const ConstraintMatrix& cm, const SlackSolver& solver, const CheckerOptions& options,
                   std::size_t target)
      : cm_(cm), solver_(solver), options_(options), target_(target) {
    for (std::size_t j = 0; j < cm.size(); ++j) all_.push_back(j);
  }

  SearchOutcome run(Columns& out) {
    try {
      Columns chosen;
      if (step(0, chosen)) {
        out = found_;
        return SearchOutcome::Found;
      }
      return SearchOutcome::Exhausted;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::EnumerationCapExceeded) return SearchOutcome::CapHit;
      throw;
    }
  }

 private:
  bool step(std::size_t pos, Columns& chosen) {
    if (chosen.size() == target_) {
      found_ = chosen;
      std::sort(found_.begin(), found_.end());
      return true;
    }
    if (chosen.size() + (all_.size() - pos) < target_) return false;
    if (++nodes_ > options_.max_enum) {
      throw Error(ErrorCode::EnumerationCapExceeded, "candidate search exceeded node cap");
    }
    if (!options_.strict_subsets) {
      Columns reach = chosen;
      reach.insert(reach.end(), all_.begin() + static_cast<std::ptrdiff_t>(pos), all_.end());
      if (rank_bound_of(cm_, reach, nullptr) < target_) return false;
    }
    const Index e = all_[pos];
    chosen.push_back(e);
    if (!solver_.violation(chosen, e) && step(pos + 1, chosen)) return true;
    chosen.pop_back();
    return step(pos + 1, chosen);
  }

  const ConstraintMatrix& cm_;
  const SlackSolver& solver_;
  const CheckerOptions& options_;
  std::size_t target_;
  Columns all_;
  Columns found_;
  std::uint64_t nodes_ = 0;
};

Verdict make_verdict(VerdictStatus status, std::size_t budget, std::string reason) {
  Verdict v;
  v.status = status;
  v.budget = budget;
  v.reason = std::move(reason);
  return v;
}

}  // namespace

std::size_t count_bound(const ColumnSubset& subset) {
  return static_cast<std::size_t>(bound_of(subset.parent(), subset.indices()));
}

std::optional<ColumnSubset> find_violation(const ColumnSubset& candidate, const CheckerOptions& options) {
  SlackSolver solver(candidate.parent(), options, {});
  if (auto v = solver.violation(candidate.indices(), std::nullopt)) return ColumnSubset(candidate.parent(), *v);
  return std::nullopt;
}

bool verify_candidate(const ColumnSubset& candidate, const CheckerOptions& options) {
  return !find_violation(candidate, options).has_value();
}

bool single_view_condition(const ColumnSubset& subset, std::size_t view_rank, const CheckerOptions& options) {
  SlackSolver solver(subset.parent(), options, {true, view_rank});
  return !solver.violation(subset.indices(), std::nullopt).has_value();
}

std::size_t rank_upper_bound(const ColumnSubset& columns, std::vector<std::size_t>* witness) {
  return rank_bound_of(columns.parent(), columns.indices(), witness);
}

Verdict check_finite(const ConstraintMatrix& cm, const ProblemShape& shape, const CheckerOptions& options) {
  const auto& ranks = cm.ranks();
  const std::size_t m = basis_dof(shape, ranks);
  if (m == 0) {
    return make_verdict(VerdictStatus::Finite, 0, "basis has no free parameters");
  }
  if (cm.size() < m) {
    auto v = make_verdict(VerdictStatus::Infinite, m,
                          "constraint matrix has " + std::to_string(cm.size()) + " columns, fewer than m = " +
                              std::to_string(m));
    v.available = cm.size();
    return v;
  }
  const auto all = ColumnSubset::all(cm);
  if (const auto total = count_bound(all); total < m) {
    auto v = make_verdict(VerdictStatus::Infinite, m,
                          "the polynomials involve at most " + std::to_string(total) +
                              " basis unknowns, fewer than m = " + std::to_string(m));
    v.available = total;
    v.violated_subset = all.indices();
    return v;
  }
  Columns witness;
  if (const auto bound = rank_bound_of(cm, all.indices(), &witness); bound < m) {
    auto v = make_verdict(VerdictStatus::Infinite, m,
                          "at most " + std::to_string(bound) + " independent polynomials (bound(T) + c - c(T)), fewer than m = " +
                              std::to_string(m));
    v.available = bound;
    v.violated_subset = witness;
    return v;
  }

  SlackSolver solver(cm, options, {});
  Columns canonical(cm.size());
  std::iota(canonical.begin(), canonical.end(), Index{0});
  const Bitset none(cm.size());

  try {
    if (options.search != CandidateSearch::Exhaustive) {
      for (std::size_t attempt = 0; attempt <= options.greedy_restarts; ++attempt) {
        const Columns order = attempt == 0 ? canonical : shuffled(canonical, derive_seed(options.seed, attempt));
        auto chosen = greedy_grow(solver, order, none, m);
        if (chosen.size() == m) {
          auto v = make_verdict(VerdictStatus::Finite, m, "greedy search found an m-column witness");
          v.certificate = std::move(chosen);
          return v;
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EnumerationCapExceeded) throw;
    return make_verdict(VerdictStatus::Unknown, m, e.what());
  }

  const bool exhaustive = options.search == CandidateSearch::Exhaustive ||
                          (options.search == CandidateSearch::Auto && cm.size() <= options.exhaustive_limit);
  if (!exhaustive) {
    return make_verdict(VerdictStatus::Unknown, m, "greedy search found no m-column witness");
  }
  ExhaustiveSearch search(cm, solver, options, m);
  Columns found;
  switch (search.run(found)) {
    case SearchOutcome::Found: {
      auto v = make_verdict(VerdictStatus::Finite, m, "exhaustive search found an m-column witness");
      v.certificate = std::move(found);
      return v;
    }
    case SearchOutcome::Exhausted:
      return make_verdict(VerdictStatus::Infinite, m, "exhaustive search: no m-column subset satisfies the condition");
    case SearchOutcome::CapHit:
      break;
  }
  return make_verdict(VerdictStatus::Unknown, m, "candidate search exceeded the node cap");
}

Verdict check_finite(const SamplingPattern& pattern, const RankTriple& ranks, const CheckerOptions& options,
                     const PivotOptions& pivots) {
  const auto& shape = pattern.shape();
  shape.require_compatible(ranks);
  if (const auto bad = pattern.first_assumption1_violation(ranks); bad != SamplingPattern::npos) {
    const int view = shape.view_of(bad);
    return make_verdict(VerdictStatus::Infinite, basis_dof(shape, ranks),
                        "column " + std::to_string(bad + 1) + " has fewer than r" + std::to_string(view) +
                            " samples, so its coefficients are not determined");
  }
  return check_finite(build_constraint(pattern, ranks, pivots), shape, options);
}

Verdict check_unique(const ConstraintMatrix& cm, const ProblemShape& shape, const CheckerOptions& options) {
  const auto& ranks = cm.ranks();
  const std::size_t m = basis_dof(shape, ranks);
  const std::size_t need1 = shape.n() - ranks.r1();
  const std::size_t need2 = shape.n() - ranks.r2();
  const std::size_t need = m + need1 + need2;
  if (cm.size() < need) {
    std::ostringstream os;
    os << "constraint matrix has " << cm.size() << " columns; disjoint sets need m + (n - r1) + (n - r2) = " << m
       << " + " << need1 << " + " << need2 << " = " << need;
    return make_verdict(VerdictStatus::Unknown, m, os.str());
  }

  const SlackSolver joint(cm, options, {});
  const SlackSolver single1(cm, options, {true, ranks.r1()});
  const SlackSolver single2(cm, options, {true, ranks.r2()});
  const Columns block1 = view_columns(cm, 1);
  const Columns block2 = view_columns(cm, 2);
  Columns canonical(cm.size());
  std::iota(canonical.begin(), canonical.end(), Index{0});

  auto mark = [&](Bitset& bits, const Columns& cols) {
    for (auto j : cols) bits.set(j);
  };
  auto restrict_to = [](const Columns& order, const Columns& block) {
    Columns out;
    for (auto j : order) {
      if (std::binary_search(block.begin(), block.end(), j)) out.push_back(j);
    }
    return out;
  };

  try {
    for (std::size_t attempt = 0; attempt <= options.greedy_restarts; ++attempt) {
      const Columns order = attempt == 0 ? canonical : shuffled(canonical, derive_seed(options.seed, attempt));
      const Columns order1 = restrict_to(order, block1);
      const Columns order2 = restrict_to(order, block2);
      for (int strategy = 0; strategy < 2; ++strategy) {
        Bitset used(cm.size());
        Columns s, s1, s2;
        if (strategy == 0) {
          s1 = greedy_grow(single1, order1, used, need1);
          mark(used, s1);
          s2 = greedy_grow(single2, order2, used, need2);
          mark(used, s2);
          s = greedy_grow(joint, order, used, m);
        } else {
          s = greedy_grow(joint, order, used, m);
          mark(used, s);
          s1 = greedy_grow(single1, order1, used, need1);
          mark(used, s1);
          s2 = greedy_grow(single2, order2, used, need2);
        }
        if (s.size() == m && s1.size() == need1 && s2.size() == need2) {
          auto v = make_verdict(VerdictStatus::UniqueCertified, m,
                                "found disjoint witnesses of sizes m, n - r1, n - r2");
          v.certificate = std::move(s);
          v.view1_certificate = std::move(s1);
          v.view2_certificate = std::move(s2);
          return v;
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EnumerationCapExceeded) throw;
    return make_verdict(VerdictStatus::Unknown, m, e.what());
  }
  return make_verdict(VerdictStatus::Unknown, m, "no disjoint witness triple found (condition is sufficient only)");
}

}  // namespace mvc
