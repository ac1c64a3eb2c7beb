#include "mvc/serialize.hpp"

namespace mvc {

Json column_json(const ConstraintMatrix& cm, const ProblemShape& shape, std::size_t j) {
  const auto& c = cm.column(j);
  const std::size_t local = c.view == 1 ? c.source_column : c.source_column - shape.m1();
  Json pivots = Json::array();
  for (auto x : c.pivot_rows) pivots.push_back(x + 1);
  return Json{{"index", j + 1},
              {"view", c.view},
              {"source_column", local + 1},
              {"pivot_rows", pivots},
              {"extra_row", c.extra_row + 1}};
}

namespace {

Json columns_json(const std::vector<std::size_t>& ids, const ConstraintMatrix& cm, const ProblemShape& shape) {
  Json out = Json::array();
  for (auto j : ids) out.push_back(column_json(cm, shape, j));
  return out;
}

Json ranks_json(const RankTriple& k) {
  return Json{{"r", k.r()}, {"r1", k.r1()}, {"r2", k.r2()}, {"r1p", k.r1p()}, {"r2p", k.r2p()}, {"rp", k.rp()}};
}

Json terms_json(const BoundTerms& t) {
  Json rank_terms = Json::object();
  for (const auto& [name, v] : t.rank_terms) rank_terms[name] = v;
  return Json{{"log_n", t.log_n},   {"log_rank", t.log_rank}, {"log_rank_source", t.log_rank_source},
              {"log_branch", t.log_branch}, {"rank_terms", rank_terms}, {"value", t.value},
              {"branch", t.branch}, {"l", t.l}};
}

Json checks_json(const std::vector<AssumptionCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(Json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  return out;
}

}  // namespace

Json verdict_json(const Verdict& v, const ConstraintMatrix& cm, const ProblemShape& shape) {
  Json out{{"status", std::string(verdict_name(v.status))},
           {"budget", v.budget},
           {"n", shape.n()},
           {"m1", shape.m1()},
           {"m2", shape.m2()},
           {"ranks", ranks_json(cm.ranks())},
           {"constraint_columns", cm.size()},
           {"k1", cm.k1()},
           {"k2", cm.k2()},
           {"certificate", columns_json(v.certificate, cm, shape)}};
  if (v.status == VerdictStatus::UniqueCertified) {
    out["view1_certificate"] = columns_json(v.view1_certificate, cm, shape);
    out["view2_certificate"] = columns_json(v.view2_certificate, cm, shape);
  }
  if (!v.violated_subset.empty()) out["violated_subset"] = columns_json(v.violated_subset, cm, shape);
  if (v.available) out["available"] = *v.available;
  out["reason"] = v.reason;
  return out;
}

Json oracle_json(const OracleResult& r, const OracleConfig& config) {
  return Json{{"status", std::string(verdict_name(r.status))},
              {"rank", r.rank.rank},
              {"variables", r.rank.variables},
              {"equations", r.rank.equations},
              {"basis_dof", r.basis_dof},
              {"trial_ranks", r.rank.trial_ranks},
              {"reseeded", r.rank.reseeded},
              {"arithmetic", config.arithmetic == Arithmetic::PrimeField ? "prime" : "float"},
              {"prime", config.prime},
              {"svd_tolerance", config.svd_tolerance},
              {"trials", config.trials},
              {"seed", config.seed}};
}

Json bound_report_json(const BoundReport& rep) {
  Json out{{"n", rep.n},
           {"ranks", ranks_json(rep.ranks)},
           {"eps", rep.eps},
           {"log_base", std::string(log_base_name(rep.base))},
           {"l_finite", rep.l_finite},
           {"l_unique", rep.l_unique},
           {"l_baseline", rep.l_baseline},
           {"p_finite", rep.p_finite},
           {"p_unique", rep.p_unique},
           {"finite", terms_json(rep.finite)},
           {"unique", terms_json(rep.unique)},
           {"baseline", terms_json(rep.baseline)}};
  if (rep.shape) {
    out["m1"] = rep.shape->m1();
    out["m2"] = rep.shape->m2();
    out["assumptions_finite"] = checks_json(rep.assumptions_finite);
    out["assumptions_unique"] = checks_json(rep.assumptions_unique);
    out["assumptions_finite_ok"] = all_pass(rep.assumptions_finite);
    out["assumptions_unique_ok"] = all_pass(rep.assumptions_unique);
    out["success_prob_bernoulli"] = *rep.success_prob_bernoulli;
  }
  return out;
}

Json error_json(ErrorCode code, const std::string& message) {
  return Json{{"error", Json{{"code", std::string(error_code_name(code))}, {"message", message}}}};
}

Json error_json(const Error& error) { return error_json(error.code(), error.what()); }

}  // namespace mvc
