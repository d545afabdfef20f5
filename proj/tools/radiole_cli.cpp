#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radiole/harness.hpp"

using namespace radiole;

int main(int argc, char** argv) {
  CLI::App app{"Leader election in radio networks: seeded experiments"};
  ExperimentConfig cfg;
  std::string model = "nocd";
  std::string variant = "fast";
  std::vector<std::string> overrides;
  bool show_constants = false;

  app.add_option("--model", model, "nocd or beep")->check(CLI::IsMember({"nocd", "beep"}));
  auto* file = app.add_option("--graph", cfg.graph_file, "graph file (n, then one edge per line)");
  auto* gen = app.add_option("--gen", cfg.generator, "path|cycle|star|complete|grid|random_connected|two_copies")
                  ->check(CLI::IsMember({"path", "cycle", "star", "complete", "grid", "random_connected", "two_copies"}));
  file->excludes(gen);
  app.add_option("--n", cfg.n, "node count for --gen")->check(CLI::PositiveNumber);
  app.add_option("--p", cfg.p, "edge probability for random_connected (default 2 ln n / n)");
  app.add_option("--trials", cfg.trials, "number of trials")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--variant", variant, "beep debate: fast or full")->check(CLI::IsMember({"fast", "full"}));
  app.add_option("--round-limit-mult", cfg.round_limit_mult, "round limit as a multiple of the budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "report path (stdout if omitted)");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--const", overrides, "KEY=VALUE constant override (repeatable)");
  app.add_flag("--show-constants", show_constants, "print the effective constants and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    cfg.model = model_from_string(model);
    cfg.variant = variant == "full" ? BeepVariant::Full : BeepVariant::Fast;
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected KEY=VALUE, got " + kv);
      cfg.constants.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (show_constants) {
      for (const auto& [k, v] : cfg.constants.describe()) std::cout << k << '=' << v << '\n';
      return 0;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto records = run_experiment(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.out.empty()) {
      std::cout << format_report(records, cfg.format) << (cfg.format == "json" ? "\n" : "");
    } else {
      emit_report(records, cfg.format, cfg.out);
    }
    std::size_t ok = 0;
    for (const auto& r : records) ok += r.success;
    std::cerr << ok << "/" << records.size() << " trials elected a unique leader (" << secs << " s)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
