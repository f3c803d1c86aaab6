#include <CLI11.hpp>
#include <iostream>

#include "qiso/suites.hpp"
#include "qiso/text.hpp"

namespace {

struct Cli {
  std::string config_path;
  std::string out_path;
  bool parallel = false;
  double tol_exact = -1.0, tol_metric = -1.0, tol_inverted = -1.0;
  std::vector<std::string> words;
};

qiso::RunConfig effective_config(const Cli& cli, const std::string& mode) {
  qiso::RunConfig cfg =
      cli.config_path.empty() ? qiso::default_config() : qiso::load_config(cli.config_path);
  cfg.mode = mode;
  if (!cli.out_path.empty()) cfg.out = cli.out_path;
  if (cli.parallel) cfg.parallel = true;
  if (cli.tol_exact >= 0) cfg.tol.exact = cli.tol_exact;
  if (cli.tol_metric >= 0) cfg.tol.metric = cli.tol_metric;
  if (cli.tol_inverted >= 0) cfg.tol.inverted = cli.tol_inverted;
  return cfg;
}

int run_mode(const Cli& cli, const std::string& mode) {
  const qiso::RunConfig cfg = effective_config(cli, mode);
  const qiso::Report report = qiso::suites::run(cfg);
  for (const auto& c : report.checks)
    std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name << "\n";
  std::cout << report.pass_count() << " passed, " << report.fail_count() << " failed; report at "
            << cfg.out << "\n";
  return report.all_pass() ? 0 : 1;
}

int run_repl(const Cli& cli) {
  const qiso::RunConfig cfg = effective_config(cli, "normal-order");
  const qiso::QMatrix Q = qiso::make_q(cfg);
  for (const std::string& text : cli.words) {
    const auto word = qiso::text::parse_star_word(text, Q.dim());
    std::cout << qiso::text::format_monomial(qiso::rewrite::normal_order(word, Q)) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-window construction and verification of representations of "
               "q-commuting isometry families"};
  app.require_subcommand(1);
  app.fallthrough();

  Cli cli;
  app.add_option("--config", cli.config_path, "JSON run configuration");
  app.add_option("--out", cli.out_path, "report output path (overrides the config)");
  app.add_flag("--parallel", cli.parallel, "run independent suites concurrently");
  app.add_option("--tol-exact", cli.tol_exact, "tolerance for inversion-free identities");
  app.add_option("--tol-metric", cli.tol_metric, "tolerance for Gram-solve identities");
  app.add_option("--tol-inverted", cli.tol_inverted, "tolerance for M_j-inversion identities");

  app.add_subcommand("fock-check", "level-space Gram, adjointness and relation checks");
  app.add_subcommand("tail-check", "tail-window Gram, adjointness and relation checks");
  app.add_subcommand("dual-check", "biorthogonality, prefix-projection and kernel checks");
  app.add_subcommand("all", "every suite");
  auto* norm = app.add_subcommand(
      "normal-order", "normal-ordering self-checks, or reduce the given words");
  norm->add_option("words", cli.words, "star words like \"1* 2 1 2*\" to reduce and print");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "normal-order" && !cli.words.empty()) return run_repl(cli);
    return run_mode(cli, sub);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
