#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "qiso/words.hpp"

namespace qiso {

struct RandomQSpec {
  double max_modulus = 0.5;
  std::uint64_t seed = 1;
};

struct TailParams {
  std::string ref = ";2";
  int L = 4;
  int M = 4;
};

struct Tolerances {
  double exact = 1e-12;     // identities built without matrix inversion
  double metric = 1e-10;    // identities through one Gram solve
  double inverted = 1e-8;   // identities through M_j inversion
};

struct RunConfig {
  int d = 2;
  std::optional<Eigen::MatrixXcd> q_entries;
  std::optional<RandomQSpec> random_q;
  std::string mode = "all";  // fock-check | tail-check | dual-check | normal-order | all
  int fock_depth = 4;
  TailParams tail;
  Tolerances tol;
  std::string out = "report.json";
  bool parallel = false;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig load_config(const std::string& path);

/// d = 2, q_12 = 0.5, depth-4 windows over the constant tail.
RunConfig default_config();

/// Resolves the deformation matrix: explicit entries win, otherwise a
/// seeded random draw.  Throws a diagnostic on invalid entries.
QMatrix make_q(const RunConfig& cfg);

}  // namespace qiso
