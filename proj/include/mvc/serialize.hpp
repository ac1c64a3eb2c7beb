#pragma once

// JSON documents emitted by the command-line tool. Column and row indices
// are 1-based; pattern columns are numbered within their view.

#include "mvc/bounds.hpp"
#include "mvc/checker.hpp"
#include "mvc/oracle.hpp"

#include "json.hpp"

namespace mvc {

using Json = nlohmann::ordered_json;

/// One constraint column with provenance.
Json column_json(const ConstraintMatrix& cm, const ProblemShape& shape, std::size_t j);

Json verdict_json(const Verdict& verdict, const ConstraintMatrix& cm, const ProblemShape& shape);
Json oracle_json(const OracleResult& result, const OracleConfig& config);
Json bound_report_json(const BoundReport& report);
Json error_json(const Error& error);
Json error_json(ErrorCode code, const std::string& message);

}  // namespace mvc
