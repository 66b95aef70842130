#include "coxlat/report.hpp"

#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"

using namespace coxlat;

namespace {

RunConfig catalog_config(const std::string& command, const std::string& spec) {
  RunConfig config;
  config.command = command;
  config.catalog_spec = spec;
  return config;
}

}  // namespace

TEST_CASE("check report carries schema, facts, and pass status") {
  auto config = catalog_config("check", "complete_bipartite(2,3,4)");
  auto report = cmd_check(config);
  CHECK(report["schema"] == 1);
  CHECK(report["status"] == "pass");
  CHECK(exit_status(report) == 0);
  CHECK(report["tables"]["nondiscrete"] == true);
  CHECK(report["tables"]["witness_count"].get<int>() > 0);

  // JSON round-trip
  auto round = Json::parse(report.dump());
  CHECK(round == report);

  // the text rendering states the same facts
  auto text = render_text(report);
  CHECK(text.find("nondiscrete: yes") != std::string::npos);
  CHECK(text.find("witnesses: " +
                  std::to_string(report["tables"]["witness_count"]
                                     .get<size_t>())) != std::string::npos);
  CHECK(text.find("status: pass") != std::string::npos);
}

TEST_CASE("check attributes missing witnesses to Condition (3)") {
  auto config = catalog_config("check", "complete_bipartite(2,3,3)");
  auto report = cmd_check(config);
  CHECK(report["tables"]["witness_count"] == 0);
  CHECK(report["tables"]["witness_reason"] == "Condition (3)");
  CHECK(report["status"] == "pass");  // a valid (negative) result
}

TEST_CASE("build report counts chambers") {
  auto config = catalog_config("build", "complete_bipartite(2,3,4)");
  config.n = 4;
  auto report = cmd_build(config);
  CHECK(report["status"] == "pass");
  CHECK(report["tables"]["chambers"] == 15);
  CHECK(report["tables"]["chambers_per_level"] ==
        Json(std::vector<int>{8, 4, 2, 1}));
  CHECK(report["tables"]["type0_trivial"] == true);
  auto dot = report["tables"]["dual_graph_dot"].get<std::string>();
  CHECK(dot.find("K(4;)") != std::string::npos);
}

TEST_CASE("verify report runs all suites") {
  auto config = catalog_config("verify", "complete_bipartite(2,3,4)");
  config.n = 2;
  auto report = cmd_verify(config);
  CHECK(report["status"] == "pass");
  REQUIRE(report["checks"].size() == 9);
  for (const auto& check : report["checks"])
    CHECK(check["status"] == "pass");
}

TEST_CASE("verify distinguishes resource exhaustion from failures") {
  auto config = catalog_config("verify", "complete_bipartite(2,3,4)");
  config.n = 5;
  config.act_bound = 1000;  // below |H_5| = 32768
  auto report = cmd_verify(config);
  CHECK(report["status"] == "error");
  CHECK(exit_status(report) == 2);
  std::map<std::string, std::string> status;
  for (const auto& check : report["checks"])
    status[check["name"]] = check["status"];
  CHECK(status["disjointness"] == "pass");
  CHECK(status["chamber-structure"] == "pass");
  CHECK(status["gyn-axioms"] == "pass");
  CHECK(status["covering-phi"] == "pass");
  CHECK(status["action"] == "resource-error");
  CHECK(status["induced-axioms"] == "skipped");
}

TEST_CASE("covolume report rows match the exact values") {
  auto config = catalog_config("covolume", "complete_bipartite(2,3,4)");
  config.n_max = 4;
  auto report = cmd_covolume(config);
  CHECK(report["status"] == "pass");
  const auto& rows = report["tables"]["covolumes"];
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["direct"] == "1");
  CHECK(rows[0]["series"] == "1");
  CHECK(rows[0]["agree"] == true);
  CHECK(rows[1]["direct"] == "3/2");
  CHECK(rows[1]["series"] == "3/2");
  CHECK(rows[2]["series"] == "13/8");
  CHECK(rows[3]["series"] == "209/128");
  auto text = render_text(report);
  CHECK(text.find("209/128") != std::string::npos);
}

TEST_CASE("catalog-list names every entry") {
  auto report = cmd_catalog_list(catalog_config("catalog-list", ""));
  CHECK(report["tables"]["catalog"].size() == 4);
  auto text = render_text(report);
  CHECK(text.find("petersen(m)") != std::string::npos);
}

TEST_CASE("load_system reads files and reports bad input") {
  RunConfig config;
  config.command = "check";
  config.system_file = "/tmp/coxlat_test_system.cox";
  {
    std::ofstream out(config.system_file);
    out << "generators: s t\nm s t = 4\n";
  }
  auto sys = load_system(config);
  CHECK(sys.rank() == 2);
  std::remove(config.system_file.c_str());

  RunConfig missing;
  missing.system_file = "/tmp/definitely_not_here.cox";
  CHECK_THROWS_AS(load_system(missing), std::invalid_argument);
  RunConfig neither;
  CHECK_THROWS_AS(load_system(neither), std::invalid_argument);
}

TEST_CASE("witness selection respects the index and bounds") {
  auto config = catalog_config("build", "complete_bipartite(2,3,4)");
  config.n = 1;
  config.witness_index = 999;
  CHECK_THROWS_AS(cmd_build(config), std::invalid_argument);
  auto none = catalog_config("build", "complete_bipartite(2,3,3)");
  none.n = 1;
  CHECK_THROWS_AS(cmd_build(none), std::invalid_argument);
}

TEST_CASE("perm_cycles renders named cycles") {
  auto sys = testfix::example1(4, 4);
  CHECK(perm_cycles(sys, {0, 1, 2, 3, 4}) == "id");
  CHECK(perm_cycles(sys, {2, 1, 0, 3, 4}) == "(s1 s3)");
  CHECK(perm_cycles(sys, {1, 2, 0, 4, 3}) == "(s1 s2 s3)(s4 s5)");
}
