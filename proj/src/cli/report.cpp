#include "cvqr/cli/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <string>
#include <vector>

namespace cvqr::cli {
namespace {

// Minimal JSON emitter: values are pre-rendered strings.
class Object {
 public:
  Object& add(const std::string& key, const std::string& rendered) {
    fields_.emplace_back(key, rendered);
    return *this;
  }
  Object& num(const std::string& key, double x) { return add(key, json_number(x)); }
  Object& integer(const std::string& key, long long x) { return add(key, std::to_string(x)); }
  Object& str(const std::string& key, std::string_view s) { return add(key, fmt::format("\"{}\"", s)); }
  Object& boolean(const std::string& key, bool b) { return add(key, b ? "true" : "false"); }

  std::string render(int indent) const {
    if (fields_.empty()) return "{}";
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    std::string out = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      out += fmt::format("{}\"{}\": {}{}\n", pad, fields_[i].first, fields_[i].second, i + 1 < fields_.size() ? "," : "");
    }
    return out + std::string(static_cast<std::size_t>(indent), ' ') + "}";
  }

  static std::string json_number(double x) { return std::isfinite(x) ? format_number(x) : "null"; }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string array(const std::vector<std::string>& items, int indent) {
  if (items.empty()) return "[]";
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  std::string out = "[\n";
  for (std::size_t i = 0; i < items.size(); ++i) out += pad + items[i] + (i + 1 < items.size() ? ",\n" : "\n");
  return out + std::string(static_cast<std::size_t>(indent), ' ') + "]";
}

void add_params(Object& o, const GaussParams& g) {
  o.num("lambda_inf", g.lambda_inf)
      .num("tau_inf", g.tau_inf)
      .num("epsilon", g.epsilon)
      .num("Lambda", g.Lambda)
      .str("validity", to_string(g.validity));
}

std::string stage_param(const StageParam& s, int indent) {
  return Object().num("lambda_target", s.lambda_target).num("value", s.value).render(indent);
}

std::string plan_json(const ChainPlan& p, int indent) {
  std::vector<std::string> swaps;
  for (const auto& s : p.swaps) swaps.push_back(stage_param(s, indent + 4));
  return Object()
      .num("total_length_km", p.total_length_km)
      .integer("nesting", p.nesting)
      .num("initial_lambda", p.initial_lambda)
      .str("strategy", to_string(p.strategy))
      .integer("cutoff", p.cutoff)
      .num("mu", p.mu)
      .num("segment_length_km", p.segment_length_km())
      .num("initial_tau", p.initial_tau())
      .add("pr", stage_param(p.pr, indent + 2))
      .add("swaps", array(swaps, indent + 2))
      .add("purify", stage_param(p.purify, indent + 2))
      .integer("gaussify_iterations", p.gaussify_iterations)
      .render(indent);
}

Object chain_object(const ChainResult& r) {
  std::vector<std::string> stages;
  for (const auto& s : r.stages) {
    Object o;
    o.str("name", s.name).num("parameter", s.parameter).num("p_succ", s.p_succ);
    add_params(o, s.params);
    o.num("leakage", s.leakage).num("pairs_consumed", s.pairs_consumed);
    stages.push_back(o.render(4));
  }
  std::vector<std::string> rows;
  for (int i = 0; i < 4; ++i) {
    std::string row = "[";
    for (int j = 0; j < 4; ++j) row += (j ? ", " : "") + Object::json_number(r.final_cm.gamma(i, j));
    rows.push_back(row + "]");
  }
  Object fin;
  add_params(fin, r.final_params);
  fin.add("covariance", array(rows, 4));

  Object rate;
  rate.num("raw_rate", r.rate.raw_rate)
      .num("normalized_by_resources", r.rate.normalized_by_resources)
      .num("mutual_info", r.rate.mutual_info)
      .num("holevo", r.rate.holevo)
      .num("n_qr", r.rate.n_qr)
      .boolean("insecure", r.rate.insecure());

  Object doc;
  doc.integer("schema_version", 1)
      .add("plan", plan_json(r.plan, 2))
      .add("stages", array(stages, 2))
      .add("final", fin.render(2))
      .num("p_total", r.p_total)
      .num("n_qr", r.n_qr)
      .num("pairs_consumed", r.pairs_consumed)
      .num("photons_consumed", r.photons_consumed)
      .add("rate", rate.render(2));
  return doc;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17e}", x);
}

std::string chain_report_json(const ChainResult& result) { return chain_object(result).render(0) + "\n"; }

std::string optimize_report_json(const OptimizeResult& result, std::uint64_t seed) {
  Object doc = chain_object(result.result);
  doc.add("optimizer", Object()
                           .add("seed", std::to_string(seed))
                           .integer("evaluations", result.evaluations)
                           .integer("feasible", result.feasible)
                           .render(2));
  return doc.render(0) + "\n";
}

}  // namespace cvqr::cli
