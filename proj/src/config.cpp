#include "qiso/config.hpp"

#include <fstream>

namespace qiso {

namespace {

cplx parse_entry(const nlohmann::json& e) {
  if (e.is_number()) return cplx(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return cplx(e[0].get<double>(), e[1].get<double>());
  throw std::invalid_argument("config: q entry must be a number or [re, im]");
}

const std::vector<std::string> kModes = {"fock-check", "tail-check", "dual-check",
                                         "normal-order", "all"};

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.d = j.value("d", 2);
  if (cfg.d < 2) throw std::invalid_argument("config: d must be at least 2");

  if (j.contains("q_entries") && j.contains("random_q"))
    throw std::invalid_argument("config: give either q_entries or random_q, not both");
  if (j.contains("q_entries")) {
    const auto& rows = j.at("q_entries");
    if (!rows.is_array() || int(rows.size()) != cfg.d)
      throw std::invalid_argument("config: q_entries must be a d x d array");
    Eigen::MatrixXcd m(cfg.d, cfg.d);
    for (int r = 0; r < cfg.d; ++r) {
      if (!rows[r].is_array() || int(rows[r].size()) != cfg.d)
        throw std::invalid_argument("config: q_entries must be a d x d array");
      for (int c = 0; c < cfg.d; ++c) m(r, c) = parse_entry(rows[r][c]);
    }
    try {
      QMatrix validated(cfg.d, m);  // reject on load, naming the offending pair
    } catch (const std::domain_error& e) {
      throw std::invalid_argument(std::string("config: ") + e.what());
    }
    cfg.q_entries = std::move(m);
  }
  if (j.contains("random_q")) {
    RandomQSpec spec;
    spec.max_modulus = j.at("random_q").value("max_modulus", 0.5);
    spec.seed = j.at("random_q").value("seed", std::uint64_t(1));
    if (!(spec.max_modulus >= 0.0 && spec.max_modulus < 1.0))
      throw std::invalid_argument("config: random_q.max_modulus must lie in [0,1)");
    cfg.random_q = spec;
  }
  if (!cfg.q_entries && !cfg.random_q) cfg.random_q = RandomQSpec{};

  cfg.mode = j.value("mode", std::string("all"));
  if (std::find(kModes.begin(), kModes.end(), cfg.mode) == kModes.end())
    throw std::invalid_argument("config: unknown mode '" + cfg.mode + "'");

  cfg.fock_depth = j.value("fock_depth", 4);
  if (cfg.fock_depth < 1) throw std::invalid_argument("config: fock_depth must be >= 1");

  if (j.contains("tail")) {
    cfg.tail.ref = j.at("tail").value("ref", std::string(";2"));
    cfg.tail.L = j.at("tail").value("L", 4);
    cfg.tail.M = j.at("tail").value("M", 4);
    if (cfg.tail.L < 1 || cfg.tail.M < 0)
      throw std::invalid_argument("config: tail window bounds out of range");
  }
  if (j.contains("tolerances")) {
    cfg.tol.exact = j.at("tolerances").value("exact", 1e-12);
    cfg.tol.metric = j.at("tolerances").value("metric", 1e-10);
    cfg.tol.inverted = j.at("tolerances").value("inverted", 1e-8);
  }
  cfg.out = j.value("out", std::string("report.json"));
  cfg.parallel = j.value("parallel", false);
  return cfg;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["d"] = cfg.d;
  if (cfg.q_entries) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < cfg.d; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < cfg.d; ++c)
        row.push_back({(*cfg.q_entries)(r, c).real(), (*cfg.q_entries)(r, c).imag()});
      rows.push_back(row);
    }
    j["q_entries"] = rows;
  }
  if (cfg.random_q)
    j["random_q"] = {{"max_modulus", cfg.random_q->max_modulus}, {"seed", cfg.random_q->seed}};
  j["mode"] = cfg.mode;
  j["fock_depth"] = cfg.fock_depth;
  j["tail"] = {{"ref", cfg.tail.ref}, {"L", cfg.tail.L}, {"M", cfg.tail.M}};
  j["tolerances"] = {{"exact", cfg.tol.exact},
                     {"metric", cfg.tol.metric},
                     {"inverted", cfg.tol.inverted}};
  j["out"] = cfg.out;
  j["parallel"] = cfg.parallel;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: parse error in '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.q_entries = QMatrix::uniform(2, 0.5).entries();
  return cfg;
}

QMatrix make_q(const RunConfig& cfg) {
  if (cfg.q_entries) return QMatrix(cfg.d, *cfg.q_entries);
  return QMatrix::random(cfg.d, cfg.random_q->max_modulus, cfg.random_q->seed);
}

}  // namespace qiso
