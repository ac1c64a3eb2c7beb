#include "mvc/oracle.hpp"

#include "mvc/modp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mvc {

PolynomialSystem::PolynomialSystem(const ProblemShape& shape, const RankTriple& ranks)
    : shape_(shape),
      ranks_(ranks),
      basis_index_(shape.n() * ranks.r(), kFixed),
      fixed_value_(shape.n() * ranks.r(), 0),
      lookup_(shape.n() * shape.columns(), kFixed) {
  shape.require_compatible(ranks);
  const std::size_t r = ranks.r(), r1 = ranks.r1(), r1p = ranks.r1p(), r2p = ranks.r2p(), rp = ranks.rp();
  const std::size_t offset = ranks.canonical_offset();
  std::vector<bool> fixed(shape.n() * r, false);
  auto fix = [&](std::size_t x, std::size_t c, int value) {
    fixed[x * r + c] = true;
    fixed_value_[x * r + c] = value;
  };
  for (std::size_t i = 0; i < r1p; ++i) {
    for (std::size_t j = 0; j < r1p; ++j) fix(i, j, i == j ? 1 : 0);  // B1 = I
  }
  for (std::size_t i = 0; i < r2p; ++i) {
    for (std::size_t j = 0; j < r2p; ++j) fix(i, r1 + j, i == j ? 1 : 0);  // B2 = I
  }
  for (std::size_t i = 0; i < rp; ++i) {
    const std::size_t x = offset + i;
    for (std::size_t j = 0; j < rp; ++j) fix(x, r1p + j, i == j ? 1 : 0);  // B3 = I
    for (std::size_t j = 0; j < r1p; ++j) fix(x, j, 0);                     // B4 = 0
    for (std::size_t j = 0; j < r2p; ++j) fix(x, r1 + j, 0);                // B5 = 0
  }
  std::size_t next = 0;
  for (std::size_t x = 0; x < shape.n(); ++x) {
    for (std::size_t c = 0; c < r; ++c) {
      if (!fixed[x * r + c]) basis_index_[x * r + c] = next++;
    }
  }
  basis_vars_ = next;
  t1_offset_ = basis_vars_;
  t2_offset_ = t1_offset_ + r1 * shape.m1();
}

std::size_t PolynomialSystem::coefficient_variable(int view, std::size_t k, std::size_t i) const {
  return view == 1 ? t1_offset_ + i * ranks_.r1() + k : t2_offset_ + i * ranks_.r2() + k;
}

void PolynomialSystem::add_equation(const Equation& eq) {
  lookup_[eq.row * shape_.columns() + eq.column] = equations_.size();
  equations_.push_back(eq);
}

std::size_t PolynomialSystem::equation_index(std::size_t row, std::size_t column) const {
  return lookup_[row * shape_.columns() + column];
}

void OracleConfig::validate() const {
  if (arithmetic == Arithmetic::PrimeField) {
    if (prime <= (std::uint64_t{1} << 30) || prime >= (std::uint64_t{1} << 32) || !modp::is_prime(prime)) {
      throw Error(ErrorCode::InvalidConfig, "oracle prime must be a prime in (2^30, 2^32)");
    }
  } else if (!(svd_tolerance > 0.0 && svd_tolerance < 1e-2)) {
    throw Error(ErrorCode::InvalidConfig, "svd tolerance must lie in (0, 1e-2)");
  }
  if (trials == 0) throw Error(ErrorCode::InvalidConfig, "oracle trials must be positive");
}

PolynomialSystem build_system(const SamplingPattern& pattern, const RankTriple& ranks) {
  PolynomialSystem system(pattern.shape(), ranks);
  const auto& shape = pattern.shape();
  // Column-major order groups each source column's equations together.
  for (std::size_t col = 0; col < shape.columns(); ++col) {
    for (auto x : pattern.column_rows(col)) system.add_equation({shape.view_of(col), x, col});
  }
  return system;
}

JacobianPoint::JacobianPoint(const PolynomialSystem& system, const OracleConfig& config, std::uint64_t point_seed)
    : system_(system), config_(config) {
  const auto& shape = system.shape();
  const auto& ranks = system.ranks();
  const std::size_t r = ranks.r();
  const bool prime = config.arithmetic == Arithmetic::PrimeField;
  Rng rng(point_seed);
  auto draw = [&]() -> std::pair<std::uint64_t, double> {
    if (prime) return {1 + rng.uniform_below(config.prime - 1), 0.0};
    return {0, rng.normal()};
  };

  // Values of V (free entries random, canonical entries fixed) and of T.
  std::vector<std::uint64_t> vp(shape.n() * r, 0);
  std::vector<double> vf(shape.n() * r, 0.0);
  for (std::size_t x = 0; x < shape.n(); ++x) {
    for (std::size_t c = 0; c < r; ++c) {
      if (system.basis_variable(x, c) == PolynomialSystem::kFixed) {
        vp[x * r + c] = static_cast<std::uint64_t>(system.fixed_value(x, c));
        vf[x * r + c] = system.fixed_value(x, c);
      } else {
        std::tie(vp[x * r + c], vf[x * r + c]) = draw();
      }
    }
  }
  const std::size_t tvars = system.variable_count() - system.basis_variables();
  std::vector<std::uint64_t> tp(tvars);
  std::vector<double> tf(tvars);
  for (std::size_t i = 0; i < tvars; ++i) std::tie(tp[i], tf[i]) = draw();

  const std::size_t local_base2 = shape.m1();
  for (const auto& eq : system.equations()) {
    const std::size_t rv = ranks.view_rank(eq.view);
    const std::size_t offset = system.view_column_offset(eq.view);
    const std::size_t local = eq.view == 1 ? eq.column : eq.column - local_base2;
    std::vector<std::pair<std::size_t, std::uint64_t>> prow;
    std::vector<std::pair<std::size_t, double>> frow;
    for (std::size_t k = 0; k < rv; ++k) {
      const std::size_t c = offset + k;
      const std::size_t tvar = system.coefficient_variable(eq.view, k, local);
      const std::size_t tslot = tvar - system.basis_variables();
      // d/dV(x, c) = T(k, i)
      if (auto bv = system.basis_variable(eq.row, c); bv != PolynomialSystem::kFixed) {
        prow.emplace_back(bv, tp[tslot]);
        frow.emplace_back(bv, tf[tslot]);
      }
      // d/dT(k, i) = V(x, c)
      prow.emplace_back(tvar, vp[eq.row * r + c]);
      frow.emplace_back(tvar, vf[eq.row * r + c]);
    }
    if (prime) {
      prime_rows_.push_back(std::move(prow));
    } else {
      float_rows_.push_back(std::move(frow));
    }
  }
}

std::size_t JacobianPoint::rank() const {
  std::vector<std::size_t> all(system_.equation_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return rank(all);
}

std::size_t JacobianPoint::rank(const std::vector<std::size_t>& ids) const {
  const std::size_t cols = system_.variable_count();
  if (ids.empty() || cols == 0) return 0;
  if (config_.arithmetic == Arithmetic::PrimeField) {
    modp::Matrix m(ids.size(), cols);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (const auto& [var, value] : prime_rows_[ids[i]]) m.at(i, var) = value % config_.prime;
    }
    return modp::rank(std::move(m), config_.prime);
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (const auto& [var, value] : float_rows_[ids[i]]) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(var)) = value;
  }
  return numerical_rank(m, config_.svd_tolerance);
}

namespace {

std::vector<std::size_t> ranks_at(const PolynomialSystem& system, const OracleConfig& config, std::uint64_t seed) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < config.trials; ++t) {
    out.push_back(JacobianPoint(system, config, derive_seed(seed, t)).rank());
  }
  return out;
}

bool consistent(const std::vector<std::size_t>& ranks) {
  return std::adjacent_find(ranks.begin(), ranks.end(), std::not_equal_to<>()) == ranks.end();
}

}  // namespace

RankReport jacobian_generic_rank(const PolynomialSystem& system, const OracleConfig& config) {
  config.validate();
  RankReport report;
  report.variables = system.variable_count();
  report.equations = system.equation_count();
  report.trial_ranks = ranks_at(system, config, config.seed);
  if (!consistent(report.trial_ranks)) {
    report.reseeded = true;
    report.trial_ranks = ranks_at(system, config, derive_seed(config.seed, 0x5eed));
    if (!consistent(report.trial_ranks)) {
      std::ostringstream os;
      os << "Jacobian rank differs across random points:";
      for (auto r : report.trial_ranks) os << ' ' << r;
      throw Error(ErrorCode::DegenerateRandomPoint, os.str());
    }
  }
  report.rank = *std::max_element(report.trial_ranks.begin(), report.trial_ranks.end());
  return report;
}

OracleResult finiteness_oracle(const SamplingPattern& pattern, const RankTriple& ranks, const OracleConfig& config) {
  if (auto bad = pattern.first_assumption1_violation(ranks); bad != SamplingPattern::npos) {
    throw Error(ErrorCode::Assumption1Violated,
                "column " + std::to_string(bad + 1) + " has fewer than r_view observed entries");
  }
  const auto system = build_system(pattern, ranks);
  OracleResult result;
  result.basis_dof = basis_dof(pattern.shape(), ranks);
  result.rank = jacobian_generic_rank(system, config);
  result.status = result.rank.rank == system.variable_count() ? VerdictStatus::Finite : VerdictStatus::Infinite;
  return result;
}

namespace {

std::pair<std::vector<std::size_t>, std::size_t> subset_equations(const ColumnSubset& subset,
                                                                  const PolynomialSystem& system) {
  const auto& cm = subset.parent();
  std::set<std::size_t> sources;
  std::vector<std::size_t> ids;
  for (auto j : subset.indices()) {
    const auto& c = cm.column(j);
    if (sources.insert(c.source_column).second) {
      for (auto x : c.pivot_rows) ids.push_back(system.equation_index(x, c.source_column));
    }
  }
  const std::size_t pivots = ids.size();
  for (auto j : subset.indices()) {
    const auto& c = cm.column(j);
    ids.push_back(system.equation_index(c.extra_row, c.source_column));
  }
  for (auto id : ids) {
    if (id == PolynomialSystem::kFixed) {
      throw Error(ErrorCode::DimensionMismatch, "constraint column refers to an entry missing from the system");
    }
  }
  return {ids, pivots};
}

}  // namespace

std::size_t independent_count(const ColumnSubset& subset, const PolynomialSystem& system, const JacobianPoint& point) {
  const auto [ids, pivots] = subset_equations(subset, system);
  const std::size_t rank = point.rank(ids);
  return rank > pivots ? rank - pivots : 0;
}

std::size_t independent_count(const ColumnSubset& subset, const PolynomialSystem& system, const OracleConfig& config) {
  config.validate();
  std::size_t best = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const JacobianPoint point(system, config, derive_seed(config.seed, t));
    best = std::max(best, independent_count(subset, system, point));
  }
  return best;
}

}  // namespace mvc
