#pragma once

// JSON forms of the core types. Doubles are written with round-trip
// precision; NaN becomes null.

#include <string>
#include <vector>

#include "json.hpp"
#include "maxarma/empirical.hpp"
#include "maxarma/inference.hpp"
#include "maxarma/margins.hpp"
#include "maxarma/params.hpp"
#include "maxarma/pipeline.hpp"

namespace maxarma {

using Json = nlohmann::json;

/// {"p":..,"q":..,"alpha":[..],"beta":[1,b_1..b_q]}. On input the leading 1
/// may be omitted.
Json to_json(const Params& params);
Params params_from_json(const Json& j);

Json to_json(const ReparamParams& rp);
Json to_json(const std::vector<Violation>& report);

/// Marginal model file: u_M, c, d, n, n_u plus a reference to the training
/// sample (path and column) from which the body is rebuilt.
struct MarginalFile {
  double u_M = 0.0;
  double c = 0.0;
  double d = 0.0;
  std::size_t n = 0;
  std::size_t n_u = 0;
  std::string sample_path;
  std::string value_column;
};

Json to_json(const MarginalModel& model, const std::string& sample_path,
             const std::string& value_column);
MarginalFile marginal_file_from_json(const Json& j);

Json to_json(const ProportionEstimate& e);
Json to_json(const EmpiricalMeasures& m);
Json to_json(const DecayChange& d);
Json to_json(const MomentSpec& s);
Json to_json(const ObjectiveBreakdown& b);
Json to_json(const FitResult& r);
Json to_json(const ModelMeasures& m);
Json to_json(const ScanCell& c);
Json to_json(const std::vector<ScanCell>& cells);
Json to_json(const std::vector<QqPoint>& qq);
Json to_json(const ThresholdSpec& u);

/// Parses the textual threshold forms used in configs: {"quantile": p} or
/// {"level": u}.
ThresholdSpec threshold_from_json(const Json& j);

/// Everything except the transformed series.
Json to_json(const PipelineResult& r);

/// Parse with errors mapped onto ErrorKind::Parse.
Json parse_json(const std::string& text);

}  // namespace maxarma
