#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "coxlat/report.hpp"

namespace {

void add_common(CLI::App* cmd, coxlat::RunConfig& config) {
  auto* system =
      cmd->add_option("--system", config.system_file, "Coxeter system file");
  auto* cat = cmd->add_option("--catalog", config.catalog_spec,
                              "catalog system, e.g. petersen(4)");
  system->excludes(cat);
  cmd->add_option("--witness", config.witness_index,
                  "index into the witness list (default 0)");
  cmd->add_option("--word-bound", config.word_bound,
                  "word length bound for exact reduction");
  cmd->add_option("--order-bound", config.order_bound,
                  "largest group order to enumerate");
  cmd->add_option("--aut-bound", config.aut_bound,
                  "largest vertex count for automorphism search");
  cmd->add_option("--act-bound", config.act_bound,
                  "largest wreath group to materialize");
  cmd->add_option("--jobs", config.jobs,
                  "worker cap for validators (reserved; current "
                  "implementation is single-threaded)");
  cmd->add_option("--format", config.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", config.out_path, "write the report to a file");
}

int emit(const coxlat::Json& report, const coxlat::RunConfig& config) {
  std::string body = config.format == "json" ? report.dump(2) + "\n"
                                             : coxlat::render_text(report);
  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    if (!out) {
      std::cerr << "cannot write '" << config.out_path << "'\n";
      return 2;
    }
    out << body;
  } else {
    std::cout << body;
  }
  return coxlat::exit_status(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chamber complexes, complexes of groups, and covolumes for "
               "Coxeter systems"};
  app.require_subcommand(1);

  coxlat::RunConfig config;

  auto* check = app.add_subcommand(
      "check", "nerve statistics, nondiscreteness, witnesses, halvability");
  add_common(check, config);

  auto* build = app.add_subcommand(
      "build", "build Y_n and G(Y_n), export the dual graph");
  add_common(build, config);
  build->add_option("--n", config.n, "truncation level")->required();

  auto* verify = app.add_subcommand(
      "verify", "run every axiom suite for the level-n constructions");
  add_common(verify, config);
  verify->add_option("--n", config.n, "truncation level")->required();

  auto* covolume = app.add_subcommand(
      "covolume", "exact covolume table for n = 1..n_max");
  add_common(covolume, config);
  covolume->add_option("--n-max", config.n_max, "largest truncation level")
      ->required();

  auto* catalog_list =
      app.add_subcommand("catalog-list", "list the built-in nerve catalog");
  add_common(catalog_list, config);

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) config.command = "check";
  if (build->parsed()) config.command = "build";
  if (verify->parsed()) config.command = "verify";
  if (covolume->parsed()) config.command = "covolume";
  if (catalog_list->parsed()) config.command = "catalog-list";

  try {
    return emit(coxlat::run_command(config), config);
  } catch (const coxlat::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const coxlat::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
