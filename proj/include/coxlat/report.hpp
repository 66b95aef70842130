#pragma once

#include <string>

#include "json.hpp"

#include "coxlat/action.hpp"

namespace coxlat {

using Json = nlohmann::json;

struct RunConfig {
  std::string command;
  std::string system_file;     // path, or
  std::string system_text;     // a literal document, or
  std::string catalog_spec;    // "name(args)"
  int n = 1;
  int n_max = 1;
  int witness_index = 0;
  int word_bound = 16;
  long long order_bound = 1000000;
  int aut_bound = 64;
  int act_bound = 4096;
  int jobs = 1;
  std::string format = "text";
  std::string out_path;
};

CoxeterSystem load_system(const RunConfig& config);

Json cmd_check(const RunConfig& config);
Json cmd_build(const RunConfig& config);
Json cmd_verify(const RunConfig& config);
Json cmd_covolume(const RunConfig& config);
Json cmd_catalog_list(const RunConfig& config);

Json run_command(const RunConfig& config);

std::string render_text(const Json& report);

// 0 when every check passed, 1 on an axiom/check failure, 2 on parse or
// resource errors.
int exit_status(const Json& report);

// helpers shared with the bindings
std::string perm_cycles(const CoxeterSystem& sys, const std::vector<int>& p);
Json witness_json(const CoxeterSystem& sys, const Witness& w);

}  // namespace coxlat
