#include "nats/config.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace nats {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double RunConfig::resolved_mu() const {
  if (mu) return *mu;
  if (r) return std::tanh(2.0 * (*r));
  return 0.0;
}

double RunConfig::resolved_r() const {
  if (r) return *r;
  if (mu) return 0.5 * std::atanh(*mu);
  return 0.0;
}

namespace {

void require_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double get_num(const json& j, const std::string& key, const std::string& where) {
  if (!j.at(key).is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

Mat parse_matrix(const json& j, const std::string& where) {
  require_keys(j, where, {"re", "im"});
  if (!j.contains("re")) throw ConfigError(where + ": missing 're'");
  const auto& re = j.at("re");
  if (!re.is_array() || re.empty()) throw ConfigError(where + ".re: expected a nested array");
  const size_t rows = re.size(), cols = re.at(0).size();
  Mat m = Mat::Zero(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (re.at(i).size() != cols) throw ConfigError(where + ".re: ragged rows");
    for (size_t k = 0; k < cols; ++k) m(i, k) = re.at(i).at(k).get<double>();
  }
  if (j.contains("im")) {
    const auto& im = j.at("im");
    if (im.size() != rows) throw ConfigError(where + ".im: shape mismatch");
    for (size_t i = 0; i < rows; ++i) {
      if (im.at(i).size() != cols) throw ConfigError(where + ".im: ragged rows");
      for (size_t k = 0; k < cols; ++k) m(i, k) += cxd(0.0, im.at(i).at(k).get<double>());
    }
  }
  return m;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  require_keys(j, "config",
               {"schema_version", "model", "parameters", "sweep", "method", "output",
                "tolerances", "seed", "custom"});
  RunConfig cfg;
  if (!j.contains("schema_version")) throw ConfigError("config: missing schema_version");
  cfg.schema_version = j.at("schema_version").get<int>();
  if (cfg.schema_version != 1)
    throw ConfigError("config: unsupported schema_version " + std::to_string(cfg.schema_version));
  if (j.contains("model")) cfg.model = j.at("model").get<std::string>();
  if (cfg.model != "bosonic" && cfg.model != "qubit-demo" && cfg.model != "custom-matrices")
    throw ConfigError("config.model: must be bosonic, qubit-demo or custom-matrices");

  if (j.contains("parameters")) {
    const json& p = j.at("parameters");
    require_keys(p, "parameters",
                 {"beta", "r", "mu", "omega", "gtau", "fock_dim", "include_q3", "dbeta", "dmu",
                  "collisions", "fd_step", "fd_central", "theta", "lambda2"});
    if (p.contains("beta")) cfg.beta = get_num(p, "beta", "parameters");
    if (p.contains("r")) cfg.r = get_num(p, "r", "parameters");
    if (p.contains("mu")) cfg.mu = get_num(p, "mu", "parameters");
    if (cfg.r && cfg.mu) throw ConfigError("parameters: give either r or mu, not both");
    if (p.contains("omega")) cfg.omega = get_num(p, "omega", "parameters");
    if (p.contains("gtau")) cfg.gtau = get_num(p, "gtau", "parameters");
    if (p.contains("fock_dim")) cfg.fock_dim = p.at("fock_dim").get<int>();
    if (p.contains("include_q3")) cfg.include_q3 = p.at("include_q3").get<bool>();
    if (p.contains("dbeta")) cfg.dbeta = get_num(p, "dbeta", "parameters");
    if (p.contains("dmu")) cfg.dmu = get_num(p, "dmu", "parameters");
    if (p.contains("collisions")) cfg.collisions = p.at("collisions").get<int>();
    if (p.contains("fd_step")) cfg.fd_step = get_num(p, "fd_step", "parameters");
    if (p.contains("fd_central")) cfg.fd_central = p.at("fd_central").get<bool>();
    if (p.contains("theta")) cfg.theta = get_num(p, "theta", "parameters");
    if (p.contains("lambda2")) cfg.lambda2 = get_num(p, "lambda2", "parameters");
  }
  if (cfg.beta <= 0.0) throw ConfigError("parameters.beta: must be positive");
  if (cfg.fock_dim < 2) throw ConfigError("parameters.fock_dim: must be at least 2");
  if (cfg.collisions < 1) throw ConfigError("parameters.collisions: must be at least 1");

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    require_keys(s, "sweep", {"beta", "r"});
    if (s.contains("beta"))
      for (const auto& v : s.at("beta")) cfg.sweep_beta.push_back(v.get<double>());
    if (s.contains("r"))
      for (const auto& v : s.at("r")) cfg.sweep_r.push_back(v.get<double>());
  }
  if (j.contains("method")) cfg.method = j.at("method").get<std::string>();
  if (cfg.method != "ycov" && cfg.method != "sld" && cfg.method != "fd" && cfg.method != "all")
    throw ConfigError("config.method: must be ycov, sld, fd or all");
  if (j.contains("output")) cfg.output = j.at("output").get<std::string>();

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    require_keys(t, "tolerances", {"leakage", "charge_preservation", "verify_scale"});
    if (t.contains("leakage")) cfg.tol_leakage = get_num(t, "leakage", "tolerances");
    if (t.contains("charge_preservation"))
      cfg.tol_preserve = get_num(t, "charge_preservation", "tolerances");
    if (t.contains("verify_scale")) cfg.verify_scale = get_num(t, "verify_scale", "tolerances");
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned>();

  if (j.contains("custom")) {
    const json& c = j.at("custom");
    require_keys(c, "custom", {"d1", "d2", "unitary", "charges", "affinities", "gradient"});
    CustomModel cm;
    cm.d1 = c.at("d1").get<int>();
    cm.d2 = c.at("d2").get<int>();
    cm.unitary = parse_matrix(c.at("unitary"), "custom.unitary");
    if (cm.unitary.rows() != Eigen::Index(cm.d1) * cm.d2 || cm.unitary.rows() != cm.unitary.cols())
      throw ConfigError("custom.unitary: shape must be (d1*d2) x (d1*d2)");
    for (size_t k = 0; k < c.at("charges").size(); ++k) {
      const json& q = c.at("charges").at(k);
      require_keys(q, "custom.charges[]", {"label", "first", "second"});
      ChargePair pair;
      pair.label = q.at("label").get<std::string>();
      pair.first = parse_matrix(q.at("first"), "custom.charges[].first");
      pair.second = q.contains("second") ? parse_matrix(q.at("second"), "custom.charges[].second")
                                         : pair.first;
      if (pair.first.rows() != cm.d1 || pair.second.rows() != cm.d2)
        throw ConfigError("custom.charges[]: charge dimensions must match d1/d2");
      cm.charges.push_back(std::move(pair));
    }
    if (cm.charges.empty()) throw ConfigError("custom.charges: need at least one charge");
    for (const auto& v : c.at("affinities")) cm.affinities.push_back(v.get<double>());
    if (c.contains("gradient"))
      for (const auto& v : c.at("gradient")) cm.affinity_gradient.push_back(v.get<double>());
    else
      cm.affinity_gradient.assign(cm.charges.size(), 0.0);
    if (cm.affinities.size() != cm.charges.size() ||
        cm.affinity_gradient.size() != cm.charges.size())
      throw ConfigError("custom: affinities/gradient length must match charge count");
    cfg.custom = std::move(cm);
  }
  if (cfg.model == "custom-matrices" && !cfg.custom)
    throw ConfigError("config: model custom-matrices requires the custom block");
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

}  // namespace nats
