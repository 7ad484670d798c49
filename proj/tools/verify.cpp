#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "symind/cli_reports.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification suites for the induction/reduction library"};
  app.get_formatter()->column_width(28);

  symind::SuiteConfig cfg;
  bool list = false;
  app.add_option("--suite", cfg.suite, "Suite to run (see --list)");
  app.add_option("--seed", cfg.seed, "Base RNG seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Sample budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "Residual tolerance for FD checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "Component-generator power bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--list", list, "List available suites and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list) {
    for (const auto& name : symind::list_suite_names())
      std::cout << name << "\t" << symind::suite_description(name) << "\n";
    return 0;
  }
  if (cfg.suite.empty()) {
    std::cerr << "error: --suite is required (try --list)\n";
    return 2;
  }

  symind::SuiteReport rep;
  try {
    rep = symind::run_suite(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }

  std::cout << (cfg.format == "json" ? symind::to_json(rep) : symind::to_text(rep));
  if (cfg.format == "json") std::cout << "\n";
  return rep.all_passed() ? 0 : 1;
}
