#include "horolab/harness/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace horolab::harness {

namespace {

struct Key {
  const char* type;  // "integer", "number", "string", "boolean", "array", "object"
  bool required;
  nlohmann::json fallback;
  const char* help;
};

struct KindSchema {
  const char* criterion;
  bool stochastic;
  std::map<std::string, Key> keys;
};

using nlohmann::json;

const std::map<std::string, KindSchema>& schemas() {
  static const std::map<std::string, KindSchema> s = {
      {"identity-suite",
       {"AC1", false,
        {{"n_values", {"array", false, json::array({1, 2, 3, 4}), "ranks n to check"}},
         {"max_seconds", {"number", false, 10.0, "runtime budget"}}}}},
      {"basic-lemma-fuzz",
       {"AC2", true,
        {{"n_values", {"array", false, json::array({1, 2, 3}), "ranks n"}},
         {"modules", {"array", false, json::array({"standard", "exterior(2)", "adjoint"}), "module kinds"}},
         {"instances", {"integer", false, 100, "instances per (n, module)"}},
         {"corrupt_sk", {"boolean", false, false, "test hook: strict S_k predicate"}},
         {"max_seconds", {"number", false, 300.0, "runtime budget"}}}}},
      {"sl2-lemma",
       {"AC3", true,
        {{"n_values", {"array", false, json::array({1, 2, 3}), "ranks n"}},
         {"modules", {"array", false, json::array({"standard", "exterior(2)", "adjoint"}), "module kinds"}},
         {"instances", {"integer", false, 100, "instances per (n, module)"}}}}},
      {"vandermonde",
       {"AC4", true,
        {{"J", {"array", false, json::array({"1", "2"}), "interval endpoints as rationals"}},
         {"max_degree", {"integer", false, 6, "largest d"}},
         {"polynomials", {"integer", false, 1000, "random polynomials per d"}},
         {"grid", {"integer", false, 1000, "grid points on J"}},
         {"tolerance", {"number", false, 1e-12, "closed-form match tolerance"}}}}},
      {"curve-frames",
       {"", false,
        {{"curve", {"string", true, nullptr, "curve preset"}},
         {"interval", {"array", false, json::array({0.05, 0.95}), "scan interval"}},
         {"k", {"integer", false, 0, "Taylor order (0 = n)"}},
         {"grid", {"integer", false, 200, "scan grid size"}},
         {"s_values", {"array", false, json::array({0.3}), "points for frames and remainders"}}}}},
      {"expansion-ladder",
       {"AC5", true,
        {{"schedules", {"object", true, nullptr, "per n, schedule presets"}},
         {"modules", {"array", false, json::array({"exterior(1)", "exterior(2)"}), "module kinds"}},
         {"s0", {"number", false, 0.3, "curve parameter of the frame"}},
         {"J", {"array", false, json::array({"1", "2"}), "eta interval"}},
         {"t_values", {"array", false, json::array({5, 10, 15, 20}), "flow times"}},
         {"vectors", {"integer", false, 50, "random unit vectors per module"}},
         {"grid", {"integer", false, 32, "uniform eta points"}},
         {"d1_density", {"integer", false, 24, "face-grid density for D1"}},
         {"slope_floor", {"number", false, -0.01, "minimum log-infimum slope"}},
         {"max_seconds", {"number", false, 600.0, "runtime budget"}}}}},
      {"growth-consistency",
       {"AC6", false,
        {{"n", {"integer", false, 2, "rank"}},
         {"schedule", {"string", false, "linear:1.5,0.5", "non-uniform schedule"}},
         {"s0", {"number", false, 0.3, "frame point"}},
         {"J", {"array", false, json::array({"1", "2"}), "eta interval"}},
         {"ladder", {"array", false, json::array({4, 6, 8, 10, 12, 14, 16}), "t ladder"}},
         {"grid", {"integer", false, 32, "uniform eta points"}},
         {"basis_modules", {"array", false, json::array(), "modules whose basis vectors are all witnesses"}},
         {"alpha_rates", {"array", false, json::array({0.0}), "alpha modes applied to basis witnesses"}},
         {"witnesses", {"array", false, json::array(), "curated {module, coords, alpha_rate} entries"}}}}},
      {"qfixed-limit",
       {"AC7", false,
        {{"cases", {"array", true, nullptr, "{schedule, n0, curve, s0, eta, t, tolerance, gating}"}},
         {"closed_form", {"object", true, nullptr, "{n, n0, kappa, eta, expected, tolerance}"}}}}},
      {"equidistribution",
       {"AC8", true,
        {{"curve", {"string", false, "moment:1", "curve preset"}},
         {"schedule", {"string", false, "equal", "schedule preset"}},
         {"bases", {"array", false, json::array({"hex", "shear"}), "two catalog base points"}},
         {"oracle_base", {"string", false, "golden", "base of the long unipotent orbit"}},
         {"oracle_log_length", {"number", false, 16.0, "log of the orbit length"}},
         {"sampler", {"string", false, "uniform:0,1", "sampler preset"}},
         {"observable", {"string", false, "systole", "observable preset"}},
         {"t", {"number", false, 8.0, "flow time"}},
         {"samples", {"integer", false, 10000, "samples per measure"}},
         {"ks_threshold", {"number", false, 0.05, "cross-base KS bound"}},
         {"oracle_threshold", {"number", false, 0.07, "KS bound against the oracle"}},
         {"max_seconds", {"number", false, 300.0, "runtime budget"}}}}},
      {"escape",
       {"AC9", false,
        {{"ladder", {"array", false, json::array({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20}),
                     "t ladder"}},
         {"eta", {"number", false, 1.0, "eta"}},
         {"tolerance", {"number", false, 1e-12, "relative tolerance on the closed form"}},
         {"contrast_floor", {"number", false, 0.1, "systole floor for the critical rate"}}}}},
      {"dirichlet-scan",
       {"AC10", true,
        {{"equivalence_queries", {"integer", false, 500, "primal/lattice comparisons"}},
         {"completeness_queries", {"integer", false, 500, "mu = 1 queries"}},
         {"monotone_queries", {"integer", false, 200, "mu-monotonicity queries"}},
         {"mus", {"array", false, json::array({0.3, 0.6, 0.9}), "mu values for random queries"}},
         {"max_n", {"integer", false, 3, "largest n for random queries"}},
         {"max_N", {"integer", false, 8, "largest N_i for random queries"}},
         {"scan_curve", {"string", false, "moment:2", "curve for the scan"}},
         {"scan_interval", {"array", false, json::array({0.0, 1.0}), "scan interval"}},
         {"scan_mu", {"string", false, "3/10", "scan mu as a rational"}},
         {"scan_max_k", {"integer", false, 8, "prefix (2^k, ..., 2^k), k = 1..max"}},
         {"scan_grid", {"integer", false, 200, "scan grid size"}},
         {"scan_offset", {"number", false, 0.6180339887498949, "grid offset in [0, 1); irrational by default"}},
         {"scan_threshold", {"number", false, 0.5, "bound on the all-improvable fraction"}},
         {"max_seconds", {"number", false, 600.0, "runtime budget"}}}}},
  };
  return s;
}

bool type_ok(const json& v, const std::string& type) {
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "array") return v.is_array();
  if (type == "object") return v.is_object();
  return false;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> d) : std::runtime_error("invalid config: " + join(d)), diagnostics(std::move(d)) {}

std::string ExperimentConfig::criterion() const { return schemas().at(kind).criterion; }

std::vector<std::string> experiment_kinds() {
  std::vector<std::string> k;
  for (const auto& [name, _] : schemas()) k.push_back(name);
  return k;
}

json config_schema() {
  json out = json::object();
  for (const auto& [name, ks] : schemas()) {
    json keys = {{"kind", {{"type", "string"}, {"required", true}}},
                 {"seed", {{"type", "integer"}, {"required", ks.stochastic}}},
                 {"description", {{"type", "string"}, {"required", false}}}};
    for (const auto& [k, key] : ks.keys)
      keys[k] = {{"type", key.type}, {"required", key.required}, {"default", key.fallback}, {"help", key.help}};
    out[name] = {{"criterion", ks.criterion}, {"stochastic", ks.stochastic}, {"keys", keys}};
  }
  return out;
}

ExperimentConfig parse_config(const json& doc) {
  std::vector<std::string> diag;
  if (!doc.is_object()) throw ConfigError({"config must be a JSON object"});
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw ConfigError({"missing string key 'kind'"});
  const std::string kind = doc["kind"];
  auto it = schemas().find(kind);
  if (it == schemas().end()) {
    std::string known;
    for (const auto& k : experiment_kinds()) known += " " + k;
    throw ConfigError({"unknown kind '" + kind + "' (known:" + known + ")"});
  }
  const KindSchema& ks = it->second;
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.doc = doc;
  for (const auto& [k, v] : doc.items()) {
    if (k == "kind" || k == "description") continue;
    if (k == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        diag.push_back("'seed' must be a nonnegative integer");
      continue;
    }
    auto key = ks.keys.find(k);
    if (key == ks.keys.end()) {
      diag.push_back("unknown key '" + k + "' for kind '" + kind + "'");
      continue;
    }
    if (!type_ok(v, key->second.type)) diag.push_back("key '" + k + "' must be of type " + key->second.type);
  }
  for (const auto& [k, key] : ks.keys) {
    if (doc.contains(k)) continue;
    if (key.required)
      diag.push_back("missing required key '" + k + "'");
    else
      cfg.doc[k] = key.fallback;
  }
  if (doc.contains("seed") && diag.empty()) {
    cfg.seed = doc["seed"].get<std::uint64_t>();
    cfg.has_seed = true;
  }
  if (ks.stochastic && !doc.contains("seed")) diag.push_back("kind '" + kind + "' is stochastic: 'seed' is mandatory");
  if (!diag.empty()) throw ConfigError(diag);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("JSON parse error: ") + e.what()});
  }
  return parse_config(doc);
}

}  // namespace horolab::harness
