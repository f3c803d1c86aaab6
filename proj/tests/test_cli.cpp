#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

// End-to-end runs of the command line tool built by this tree.

namespace {

namespace fs = std::filesystem;

struct RunOutput {
  int exit_code = -1;
  std::string stdout_text;
};

RunOutput run_tool(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const std::string cmd =
      "cd " + dir.string() + " && " + std::string(QISO_TOOL_PATH) + " " + args + " > " +
      out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunOutput r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out);
  r.stdout_text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return r;
}

fs::path make_temp_dir() {
  fs::path dir = fs::temp_directory_path() / ("qiso_cli_XXXXXX");
  std::string templ = dir.string();
  REQUIRE(mkdtemp(templ.data()) != nullptr);
  return fs::path(templ);
}

void write_config(const fs::path& path, const nlohmann::json& extra = {}) {
  nlohmann::json j = {
      {"d", 2},
      {"q_entries", {{0.0, 0.5}, {0.5, 0.0}}},
      {"fock_depth", 3},
      {"tail", {{"ref", ";2"}, {"L", 3}, {"M", 3}}},
      {"out", "report.json"},
  };
  for (auto& [k, v] : extra.items()) j[k] = v;
  std::ofstream(path) << j.dump(2);
}

nlohmann::json strip_wall(nlohmann::json j) {
  for (auto& c : j["checks"]) c.erase("wall_ms");
  return j;
}

}  // namespace

TEST_CASE("all-suite run passes and writes a deterministic report") {
  const fs::path dir = make_temp_dir();
  write_config(dir / "cfg.json");

  auto first = run_tool("all --config cfg.json --out r.json", dir);
  CHECK(first.exit_code == 0);
  CHECK(first.stdout_text.find("FAIL") == std::string::npos);
  nlohmann::json r1;
  std::ifstream(dir / "r.json") >> r1;

  auto second = run_tool("all --config cfg.json --out r.json", dir);
  CHECK(second.exit_code == 0);
  nlohmann::json r2;
  std::ifstream(dir / "r.json") >> r2;
  CHECK(r1["summary"]["fail"] == 0);
  CHECK(strip_wall(r1).dump() == strip_wall(r2).dump());

  // Every executed check appears exactly once.
  std::set<std::pair<std::string, std::string>> seen;
  for (auto& c : r1["checks"])
    CHECK(seen.emplace(c["name"].get<std::string>(), c["params"].dump()).second);

  // The duality suite leaves a decay table next to the report.
  CHECK(fs::exists(dir / "r.decay.csv"));
  std::ifstream csv(dir / "r.decay.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "window,prefix_source,n,norm");
  fs::remove_all(dir);
}

TEST_CASE("single-suite modes") {
  const fs::path dir = make_temp_dir();
  write_config(dir / "cfg.json");
  for (const char* mode : {"fock-check", "tail-check", "dual-check", "normal-order"}) {
    auto run = run_tool(std::string(mode) + " --config cfg.json --out m.json", dir);
    CHECK(run.exit_code == 0);
  }
  fs::remove_all(dir);
}

TEST_CASE("parallel flag leaves the report unchanged") {
  const fs::path dir = make_temp_dir();
  write_config(dir / "cfg.json");
  auto serial = run_tool("all --config cfg.json --out s.json", dir);
  auto parallel = run_tool("all --config cfg.json --out p.json --parallel", dir);
  CHECK(serial.exit_code == 0);
  CHECK(parallel.exit_code == 0);
  nlohmann::json s, p;
  std::ifstream(dir / "s.json") >> s;
  std::ifstream(dir / "p.json") >> p;
  s["config"].erase("out");
  p["config"].erase("out");
  s["config"].erase("parallel");
  p["config"].erase("parallel");
  CHECK(strip_wall(s).dump() == strip_wall(p).dump());
  fs::remove_all(dir);
}

TEST_CASE("failing tolerances produce a nonzero exit with the report written") {
  const fs::path dir = make_temp_dir();
  write_config(dir / "cfg.json");
  auto run = run_tool("fock-check --config cfg.json --out fail.json --tol-metric 0", dir);
  CHECK(run.exit_code == 1);
  CHECK(run.stdout_text.find("FAIL") != std::string::npos);
  nlohmann::json r;
  std::ifstream(dir / "fail.json") >> r;
  CHECK(r["summary"]["fail"].get<int>() > 0);
  // Failures carry the witnessing indices.
  bool witnessed = false;
  for (auto& c : r["checks"])
    if (!c["pass"].get<bool>() && c["witness"].is_object())
      witnessed = witnessed || (c["witness"].contains("row") && c["witness"].contains("col"));
  CHECK(witnessed);
  fs::remove_all(dir);
}

TEST_CASE("invalid configs exit with a diagnostic") {
  const fs::path dir = make_temp_dir();
  std::ofstream(dir / "bad.json") << "{\"d\": 1}";
  auto run = run_tool("all --config bad.json", dir);
  CHECK(run.exit_code == 2);
  std::ofstream(dir / "worse.json") << "not json";
  CHECK(run_tool("all --config worse.json", dir).exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("normal-order words are reduced and printed") {
  const fs::path dir = make_temp_dir();
  write_config(dir / "cfg.json");
  auto run = run_tool("normal-order --config cfg.json \"1* 1\" \"1* 2\" \"2* 1 2\"", dir);
  CHECK(run.exit_code == 0);
  CHECK(run.stdout_text == "1 * I\n0.5 * s_2 s_1*\n0.5 * s_1\n");

  auto bad = run_tool("normal-order --config cfg.json \"1 3*\"", dir);
  CHECK(bad.exit_code == 2);
  CHECK(bad.stdout_text.find("column") != std::string::npos);

  // Without a config the built-in default deformation applies.
  auto plain = run_tool("normal-order \"1* 2\"", dir);
  CHECK(plain.exit_code == 0);
  CHECK(plain.stdout_text == "0.5 * s_2 s_1*\n");
  fs::remove_all(dir);
}
