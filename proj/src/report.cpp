#include "qiso/report.hpp"

#include <fstream>

namespace qiso {

int Report::pass_count() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  return n;
}

int Report::fail_count() const { return int(checks.size()) - pass_count(); }

nlohmann::json report_to_json(const Report& r, bool with_wall) {
  nlohmann::json j;
  j["config"] = r.config_echo;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["params"] = c.params;
    jc["data"] = c.data;
    jc["pass"] = c.pass;
    if (with_wall) jc["wall_ms"] = c.wall_ms;
    jc["witness"] = c.witness;
    j["checks"].push_back(std::move(jc));
  }
  j["summary"] = {{"pass", r.pass_count()}, {"fail", r.fail_count()}};
  return j;
}

void write_report(const Report& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
  out << report_to_json(r).dump(2) << "\n";
}

void write_decay_csv(const Report& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write decay table to '" + path + "'");
  out << "window,prefix_source,n,norm\n";
  char buf[64];
  for (const auto& t : r.decay)
    for (size_t i = 0; i < t.norms.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", t.norms[i]);
      out << t.window << "," << t.prefix_source << "," << (i + 1) << "," << buf << "\n";
    }
}

std::string decay_csv_path(const std::string& report_path) {
  const std::string suffix = ".json";
  if (report_path.size() > suffix.size() &&
      report_path.compare(report_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return report_path.substr(0, report_path.size() - suffix.size()) + ".decay.csv";
  return report_path + ".decay.csv";
}

}  // namespace qiso
