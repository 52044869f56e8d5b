#include "maxarma/serialize.hpp"

#include <cmath>

#include "maxarma/error.hpp"

namespace maxarma {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("json: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("json: field '") + key + "': " + e.what());
  }
}

Json order_json(Order o) { return {{"p", o.p}, {"q", o.q}}; }

}  // namespace

Json to_json(const Params& params) {
  return {{"p", params.p()},
          {"q", params.q()},
          {"alpha", numbers(params.alpha)},
          {"beta", numbers(params.beta)}};
}

Params params_from_json(const Json& j) {
  const int p = field<int>(j, "p");
  const int q = field<int>(j, "q");
  auto alpha = field<std::vector<double>>(j, "alpha");
  std::vector<double> beta = j.contains("beta") ? field<std::vector<double>>(j, "beta") : std::vector<double>{};
  if (beta.size() == static_cast<std::size_t>(q)) {
    beta.insert(beta.begin(), 1.0);
  } else if (beta.size() != static_cast<std::size_t>(q) + 1 || beta.front() != 1.0) {
    throw DimensionError("params json: beta must list 1, b_1..b_q (or b_1..b_q)");
  }
  return Params({p, q}, std::move(alpha), std::move(beta));
}

Json to_json(const ReparamParams& rp) {
  return {{"p", rp.order.p}, {"q", rp.order.q}, {"delta", numbers(rp.delta)}, {"epsilon", numbers(rp.epsilon)}};
}

Json to_json(const std::vector<Violation>& report) {
  Json a = Json::array();
  for (const auto& v : report) a.push_back({{"code", v.code}, {"index", v.index}, {"detail", v.detail}});
  return a;
}

Json to_json(const MarginalModel& m, const std::string& sample_path, const std::string& value_column) {
  return {{"u_M", m.threshold()},
          {"c", m.tail_index()},
          {"d", m.tail_fraction()},
          {"n", m.size()},
          {"n_u", m.exceedances()},
          {"sample_path", sample_path},
          {"value_column", value_column}};
}

MarginalFile marginal_file_from_json(const Json& j) {
  MarginalFile f;
  f.u_M = field<double>(j, "u_M");
  f.c = field<double>(j, "c");
  f.d = field<double>(j, "d");
  f.n = field<std::size_t>(j, "n");
  f.n_u = field<std::size_t>(j, "n_u");
  f.sample_path = field<std::string>(j, "sample_path");
  f.value_column = j.contains("value_column") ? field<std::string>(j, "value_column") : std::string{};
  return f;
}

Json to_json(const ProportionEstimate& e) {
  Json j = {{"value", number(e.value)},
            {"ci", {number(e.ci.lo), number(e.ci.hi)}},
            {"level", number(e.level)},
            {"exceedances", e.exceedances},
            {"hits", e.hits}};
  if (!e.warnings.empty()) j["warnings"] = e.warnings;
  return j;
}

Json to_json(const EmpiricalMeasures& m) {
  Json chi = Json::array();
  for (const auto& [k, e] : m.chi) {
    Json row = to_json(e);
    row["kappa"] = k;
    chi.push_back(std::move(row));
  }
  return {{"u", number(m.u)}, {"theta", to_json(m.theta)}, {"chi", std::move(chi)}};
}

Json to_json(const DecayChange& d) {
  return {{"lag", d.lag}, {"found", d.found}, {"warnings", d.warnings}};
}

Json to_json(const ThresholdSpec& u) {
  return u.kind == ThresholdKind::Quantile ? Json{{"quantile", u.value}} : Json{{"level", u.value}};
}

ThresholdSpec threshold_from_json(const Json& j) {
  if (j.is_object() && j.contains("quantile")) return ThresholdSpec::quantile(field<double>(j, "quantile"));
  if (j.is_object() && j.contains("level")) return ThresholdSpec::absolute(field<double>(j, "level"));
  throw Error(ErrorKind::Parse, "threshold json: expected {\"quantile\": p} or {\"level\": u}");
}

Json to_json(const MomentSpec& s) {
  return {{"order", order_json(s.order)},
          {"u", to_json(s.u)},
          {"T", s.T},
          {"lags", s.lags},
          {"omega", s.omega},
          {"divisor", s.divisor()},
          {"warnings", s.warnings}};
}

Json to_json(const ObjectiveBreakdown& b) {
  Json moments = Json::array();
  for (const auto& m : b.moments) {
    moments.push_back({{"name", m.name},
                       {"lag", m.lag},
                       {"empirical", number(m.empirical)},
                       {"model", number(m.model)},
                       {"squared_error", number(m.squared_error)}});
  }
  Json ratios = Json::array();
  for (const auto& r : b.ratios) {
    ratios.push_back({{"lag", r.lag},
                      {"pairs", r.pairs},
                      {"min_ratio", number(r.min_ratio)},
                      {"alpha", number(r.alpha)},
                      {"term", number(r.term)},
                      {"used", r.used}});
  }
  return {{"value", number(b.value)},
          {"moment_term", number(b.moment_term)},
          {"ratio_term", number(b.ratio_term)},
          {"truncation", b.truncation},
          {"moment_table", std::move(moments)},
          {"ratio_table", std::move(ratios)}};
}

Json to_json(const FitResult& r) {
  Json starts = Json::array();
  for (const auto& s : r.starts) {
    starts.push_back({{"index", s.index},
                      {"start", numbers(s.start)},
                      {"optimum", numbers(s.optimum)},
                      {"value", number(s.value)},
                      {"evaluations", s.evaluations},
                      {"restarts", s.restarts},
                      {"converged", s.converged}});
  }
  return {{"order", order_json(r.order)},
          {"spec", to_json(r.spec)},
          {"params_hat", to_json(r.params_hat)},
          {"reparam_hat", to_json(r.reparam_hat)},
          {"objective", number(r.objective)},
          {"breakdown", to_json(r.breakdown)},
          {"evaluations", r.evaluations},
          {"starts", std::move(starts)},
          {"warnings", r.warnings}};
}

Json to_json(const ModelMeasures& m) {
  Json chi = Json::object();
  for (const auto& [k, v] : m.chi) chi[std::to_string(k)] = number(v);
  return {{"level", number(m.level)}, {"theta", number(m.theta)}, {"chi", std::move(chi)}};
}

Json to_json(const ScanCell& c) {
  Json j = {{"order", order_json(c.order)}, {"ok", c.ok}};
  if (!c.ok) j["error"] = c.error;
  if (c.fit) j["fit"] = to_json(*c.fit);
  if (c.measures) j["model_measures"] = to_json(*c.measures);
  return j;
}

Json to_json(const std::vector<ScanCell>& cells) {
  Json a = Json::array();
  for (const auto& c : cells) a.push_back(to_json(c));
  return a;
}

Json to_json(const std::vector<QqPoint>& qq) {
  Json a = Json::array();
  for (const auto& pt : qq) {
    a.push_back({{"model", number(pt.model)},
                 {"empirical", number(pt.empirical)},
                 {"lower", number(pt.lower)},
                 {"upper", number(pt.upper)}});
  }
  return a;
}

Json to_json(const PipelineResult& r) {
  Json j = {{"T", r.T},
            {"T_suggestion", to_json(r.T_suggestion)},
            {"qq", to_json(r.qq)},
            {"cells", to_json(r.cells)},
            {"warnings", r.warnings}};
  if (r.marginal) j["marginal"] = to_json(*r.marginal, "", "");
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("json: ") + e.what());
  }
}

}  // namespace maxarma
