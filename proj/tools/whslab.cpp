#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "whs/experiments.hpp"

namespace {

using namespace whs::exp;

ExperimentConfig load(const std::string& id, const std::string& config_path, const std::string& out,
                      const std::optional<std::uint64_t>& seed) {
  const auto& info = find_experiment(id);
  ExperimentConfig cfg = info.defaults();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config: " + config_path);
    cfg = config_from_json(nlohmann::json::parse(in), cfg);
    if (cfg.experiment != id) throw std::invalid_argument("config names experiment " + cfg.experiment);
  }
  if (!out.empty()) cfg.output_dir = out;
  if (seed) cfg.seed = *seed;
  return cfg;
}

bool report(const ExperimentRecord& rec) {
  std::cout << rec.id << "  " << (rec.passed() ? "PASS" : "FAIL") << "  (" << rec.wall_clock_s << " s)\n";
  for (const auto& c : rec.checks)
    std::cout << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << ": " << c.observed << " vs "
              << c.threshold << "\n";
  for (const auto& s : rec.scalars) std::cout << "  " << s.name << " = " << s.value << "\n";
  return rec.passed();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Hardy space experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List experiments");

  std::string id, config_path, out;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("experiment", id, "experiment id")->required();
  run->add_option("--config", config_path, "JSON config");
  run->add_option("--out", out, "output directory");
  run->add_option("--seed", seed, "random seed");

  std::string all_out;
  std::optional<std::uint64_t> all_seed;
  auto* all = app.add_subcommand("all", "Run every experiment with defaults");
  all->add_option("--out", all_out, "output directory");
  all->add_option("--seed", all_seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& e : registry()) {
        std::cout << e.id << "\n  " << e.claim << "\n  formulas:";
        for (const auto& f : e.formulas) std::cout << ' ' << f;
        std::cout << "\n";
      }
      return 0;
    }
    if (run->parsed()) return report(run_experiment(load(id, config_path, out, seed))) ? 0 : 1;
    bool ok = true;
    for (const auto& e : registry()) ok = report(run_experiment(load(e.id, "", all_out, all_seed))) && ok;
    return ok ? 0 : 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
