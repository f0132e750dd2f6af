#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "whs/experiments.hpp"

using namespace whs::exp;
using nlohmann::json;

TEST_CASE("registry ids are unique and the formula manifest is covered") {
  std::set<std::string> ids, covered;
  for (const auto& e : registry()) {
    CHECK(ids.insert(e.id).second);
    CHECK_FALSE(e.formulas.empty());
    covered.insert(e.formulas.begin(), e.formulas.end());
    const auto cfg = e.defaults();
    CHECK(cfg.experiment == e.id);
  }
  for (const auto& f : in_scope_formulas()) {
    INFO(f);
    CHECK(covered.count(f) == 1);
  }
  // nothing declared outside the manifest
  const std::set<std::string> manifest(in_scope_formulas().begin(), in_scope_formulas().end());
  for (const auto& f : covered) CHECK(manifest.count(f) == 1);
  CHECK_THROWS_AS(find_experiment("missing"), std::invalid_argument);
}

TEST_CASE("config json merge") {
  const auto base = find_experiment("sigma_fk").defaults();
  const auto j = json::parse(R"({"k_max": 5, "thresholds": {"slope_min": 0.3}, "weight": {"id": "sigma"}})");
  const auto c = config_from_json(j, base);
  CHECK(c.k_max == 5);
  CHECK(c.k_min == base.k_min);
  CHECK(c.threshold("slope_min") == 0.3);
  CHECK(c.threshold("cn_k_max") == base.threshold("cn_k_max"));
  CHECK_THROWS(config_from_json(json::parse(R"({"bogus": 1})"), base));
  CHECK_THROWS(config_from_json(json::parse(R"({"k_min": 6, "k_max": 4})"), base));
  CHECK_THROWS(c.threshold("nope"));
  const auto back = config_from_json(config_to_json(c), base);
  CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("records are reproducible for a fixed seed") {
  for (const char* id : {"zorboska_ratio", "hs_identity", "hinf_embedding", "osc_lower"}) {
    auto cfg = find_experiment(id).defaults();
    const auto a = run_experiment(cfg), b = run_experiment(cfg);
    CHECK(a.to_json(false).dump() == b.to_json(false).dump());
    CHECK(whs::io::to_csv(a.table) == whs::io::to_csv(b.table));
    CHECK(a.passed());
    for (const auto& s : a.scalars) CHECK_FALSE(s.formula.empty());
    for (const auto& c : a.checks) CHECK_FALSE(c.formula.empty());
  }
  auto cfg = find_experiment("hs_identity").defaults();
  const auto a = run_experiment(cfg);
  cfg.seed += 1;
  CHECK(a.to_json(false).dump() != run_experiment(cfg).to_json(false).dump());
}

TEST_CASE("output files") {
  auto cfg = find_experiment("zorboska_ratio").defaults();
  cfg.k_max = 4;
  cfg.output_dir = std::filesystem::temp_directory_path() / "whslab_test_out";
  std::filesystem::remove_all(cfg.output_dir);
  const auto rec = run_experiment(cfg);
  std::ifstream js(cfg.output_dir / "zorboska_ratio.json");
  REQUIRE(js);
  const auto j = json::parse(js);
  CHECK(j["id"] == "zorboska_ratio");
  CHECK(j["passed"] == rec.passed());
  CHECK(j["inputs"]["k_max"] == 4);
  std::ifstream csv(cfg.output_dir / "zorboska_ratio.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header.rfind("k,m_k,ratio", 0) == 0);
}

TEST_CASE("preconditions") {
  auto h = find_experiment("hinf_embedding").defaults();
  h.weight = {"constant", {}};
  CHECK_THROWS_AS(run_experiment(h), std::invalid_argument);
  auto z = find_experiment("zorboska_ratio").defaults();
  z.k_max = 11;
  CHECK_THROWS_AS(run_experiment(z), std::invalid_argument);
  auto s = find_experiment("sigma_fk").defaults();
  s.k_max = 8;
  CHECK_THROWS_AS(run_experiment(s), std::invalid_argument);
  auto n = find_experiment("nlogn_bound").defaults();
  n.n_max = 100;
  CHECK_THROWS_AS(run_experiment(n), std::invalid_argument);
  auto o = find_experiment("osc_lower").defaults();
  o.n_list = {4};
  CHECK_THROWS_AS(run_experiment(o), std::invalid_argument);
}

TEST_CASE("moment experiment at alpha = 0 gives 1/n") {
  auto m = find_experiment("moment").defaults();
  m.n_list = {10, 100};
  const auto r = run_experiment(m);
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [](const Check& c) { return c.name == "alpha0_is_1_over_n"; });
  REQUIRE(it != r.checks.end());
  CHECK(it->passed);
}

TEST_CASE("a failing threshold is reported, not hidden") {
  auto cfg = find_experiment("zorboska_ratio").defaults();
  cfg.thresholds["step_ratio_max"] = 1.02;
  const auto r = run_experiment(cfg);
  CHECK_FALSE(r.passed());
}
