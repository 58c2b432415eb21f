#include "cvqr/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "cvqr/errors.hpp"

namespace cvqr::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_line(int line, const std::string& what) {
  fail(ErrorCode::domain, "config line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& v, int line) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_line(line, "expected a number, got '" + v + "'");
  return x;
}

template <class Int>
Int to_int(const std::string& v, int line) {
  Int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_line(line, "expected an integer, got '" + v + "'");
  return x;
}

std::vector<double> to_list(const std::string& v, int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = v.find(',', start);
    out.push_back(to_double(trim(v.substr(start, comma - start)), line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  ChainPlan& plan = cfg.plan;
  std::vector<double> swap_q, swap_lambda;
  int swap_line = 0;

  using Setter = std::function<void(const std::string&, int)>;
  const std::map<std::string, Setter, std::less<>> keys{
      {"schema_version",
       [&](const std::string& v, int l) {
         if (to_int<int>(v, l) != schema_version) bad_line(l, "unsupported schema_version " + v);
       }},
      {"total_length_km", [&](const std::string& v, int l) { plan.total_length_km = to_double(v, l); }},
      {"nesting", [&](const std::string& v, int l) { plan.nesting = to_int<int>(v, l); }},
      {"initial_lambda", [&](const std::string& v, int l) { plan.initial_lambda = to_double(v, l); }},
      {"strategy",
       [&](const std::string& v, int l) {
         try {
           plan.strategy = parse_strategy(v);
         } catch (const Error& e) {
           bad_line(l, e.what());
         }
       }},
      {"cutoff", [&](const std::string& v, int l) { plan.cutoff = to_int<int>(v, l); }},
      {"mu", [&](const std::string& v, int l) { plan.mu = to_double(v, l); }},
      {"gaussify_iterations", [&](const std::string& v, int l) { plan.gaussify_iterations = to_int<int>(v, l); }},
      {"pr_eta", [&](const std::string& v, int l) { plan.pr.value = to_double(v, l); }},
      {"pr_lambda", [&](const std::string& v, int l) { plan.pr.lambda_target = to_double(v, l); }},
      {"swap_q",
       [&](const std::string& v, int l) {
         swap_q = to_list(v, l);
         swap_line = l;
       }},
      {"swap_lambda",
       [&](const std::string& v, int l) {
         swap_lambda = to_list(v, l);
         swap_line = l;
       }},
      {"purify_q", [&](const std::string& v, int l) { plan.purify.value = to_double(v, l); }},
      {"purify_lambda", [&](const std::string& v, int l) { plan.purify.lambda_target = to_double(v, l); }},
      {"output", [&](const std::string& v, int) { cfg.output = v; }},
      {"seed", [&](const std::string& v, int l) { cfg.seed = to_int<std::uint64_t>(v, l); }},
  };

  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) bad_line(line, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) bad_line(line, "unknown key '" + key + "'");
    if (!seen.insert(key).second) bad_line(line, "duplicate key '" + key + "'");
    if (value.empty()) bad_line(line, "empty value for '" + key + "'");
    it->second(value, line);
  }

  if (!seen.count("schema_version")) fail(ErrorCode::domain, "config: missing schema_version");
  if (seen.count("pr_eta") && seen.count("pr_lambda")) fail(ErrorCode::domain, "config: give pr_eta or pr_lambda, not both");
  if (seen.count("purify_q") && seen.count("purify_lambda")) {
    fail(ErrorCode::domain, "config: give purify_q or purify_lambda, not both");
  }
  if (!swap_q.empty() && !swap_lambda.empty()) bad_line(swap_line, "give swap_q or swap_lambda, not both");
  for (double q : swap_q) plan.swaps.push_back(StageParam{std::nan(""), q});
  for (double l : swap_lambda) plan.swaps.push_back(StageParam{l, std::nan("")});
  if (plan.swaps.size() != static_cast<std::size_t>(std::max(plan.nesting, 0))) {
    fail(ErrorCode::domain, "config: " + std::to_string(plan.swaps.size()) + " swap stages for nesting " +
                                std::to_string(plan.nesting));
  }
  plan.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::domain, "config: cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace cvqr::cli
