#include "coxlat/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace coxlat {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

Json config_json(const RunConfig& c) {
  return Json{{"command", c.command},
              {"system_file", c.system_file},
              {"catalog", c.catalog_spec},
              {"n", c.n},
              {"n_max", c.n_max},
              {"witness", c.witness_index},
              {"word_bound", c.word_bound},
              {"order_bound", c.order_bound},
              {"aut_bound", c.aut_bound},
              {"act_bound", c.act_bound},
              {"jobs", c.jobs}};
}

Json violations_json(const Report& report) {
  Json out = Json::array();
  for (const auto& v : report.violations)
    out.push_back(
        {{"axiom", v.axiom}, {"location", v.location}, {"details", v.details}});
  return out;
}

struct Checks {
  Json list = Json::array();
  bool failed = false;
  bool errored = false;

  void pass(const std::string& name, const std::string& details, double ms) {
    list.push_back(
        {{"name", name}, {"status", "pass"}, {"details", details}, {"ms", ms}});
  }
  void fail(const std::string& name, const std::string& details, double ms,
            Json extra = {}) {
    Json entry{
        {"name", name}, {"status", "fail"}, {"details", details}, {"ms", ms}};
    if (!extra.is_null()) entry["violations"] = std::move(extra);
    list.push_back(std::move(entry));
    failed = true;
  }
  void report(const std::string& name, const Report& r, double ms) {
    if (r.ok())
      pass(name, "ok", ms);
    else
      fail(name, r.summary(), ms, violations_json(r));
  }
  void resource(const std::string& name, const std::string& what, double ms) {
    list.push_back({{"name", name},
                    {"status", "resource-error"},
                    {"details", what},
                    {"ms", ms}});
    errored = true;
  }
  void skipped(const std::string& name, const std::string& why) {
    list.push_back({{"name", name},
                    {"status", "skipped"},
                    {"details", why},
                    {"ms", 0.0}});
  }
};

Json finish(const RunConfig& config, Checks& checks, Json tables,
            Clock::time_point start) {
  std::string status =
      checks.failed ? "fail" : (checks.errored ? "error" : "pass");
  return Json{{"schema", 1},
              {"command", config.command},
              {"config", config_json(config)},
              {"checks", checks.list},
              {"tables", std::move(tables)},
              {"status", status},
              {"timing_ms", ms_since(start)}};
}

EnumOptions enum_options(const RunConfig& config) {
  EnumOptions opts;
  opts.max_order = config.order_bound;
  return opts;
}

ActionOptions action_options(const RunConfig& config) {
  ActionOptions opts;
  opts.act_bound = config.act_bound;
  opts.enumeration = enum_options(config);
  return opts;
}

std::string type_names(const CoxeterSystem& sys, GenSet t) {
  if (t == 0) return "{}";
  std::string out = "{";
  bool first = true;
  for (int s : gs_members(t)) {
    if (!first) out += ",";
    out += sys.name(s);
    first = false;
  }
  return out + "}";
}

}  // namespace

CoxeterSystem load_system(const RunConfig& config) {
  if (!config.catalog_spec.empty()) return catalog_parse(config.catalog_spec);
  if (!config.system_text.empty()) return parse_system(config.system_text);
  if (config.system_file.empty())
    throw std::invalid_argument("no system given: use --system or --catalog");
  std::ifstream in(config.system_file);
  if (!in)
    throw std::invalid_argument("cannot open '" + config.system_file + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_system(buffer.str());
}

std::string perm_cycles(const CoxeterSystem& sys, const std::vector<int>& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += " ";
      out += sys.name(static_cast<int>(j));
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "id" : out;
}

Json witness_json(const CoxeterSystem& sys, const Witness& w) {
  return Json{{"s1", sys.name(w.s1)},
              {"s2", sys.name(w.s2)},
              {"alpha1", perm_cycles(sys, w.alpha1.perm)},
              {"alpha2", perm_cycles(sys, w.alpha2.perm)},
              {"q1", w.q1},
              {"q2", w.q2}};
}

namespace {

Witness select_witness(const CoxeterSystem& sys, const RunConfig& config) {
  WitnessOptions opts;
  opts.aut.max_vertices = config.aut_bound;
  opts.enumeration = enum_options(config);
  auto witnesses = find_witnesses(sys, opts);
  if (witnesses.empty())
    throw std::invalid_argument("the system admits no witness");
  if (config.witness_index < 0 ||
      config.witness_index >= static_cast<int>(witnesses.size()))
    throw std::invalid_argument("witness index out of range (found " +
                                std::to_string(witnesses.size()) + ")");
  return witnesses[config.witness_index];
}

}  // namespace

Json cmd_check(const RunConfig& config) {
  auto start = Clock::now();
  Checks checks;
  Json tables;

  auto sys = load_system(config);
  auto t0 = Clock::now();
  auto nerve = build_nerve(sys);
  Json stats{{"generators", sys.rank()}, {"edges", nerve.edge_count()}};
  std::map<int, int> by_size;
  for (GenSet t : nerve.simplices) ++by_size[gs_size(t)];
  for (auto [size, count] : by_size)
    stats["simplices_by_size"][std::to_string(size)] = count;
  tables["nerve"] = stats;
  checks.pass("nerve", std::to_string(nerve.simplices.size()) + " simplices",
              ms_since(t0));

  t0 = Clock::now();
  try {
    AutOptions aopts{config.aut_bound};
    auto hit = nondiscreteness_check(nerve, aopts);
    tables["nondiscrete"] = hit.has_value();
    if (hit)
      tables["nondiscreteness_witness"] = {
          {"alpha", perm_cycles(sys, hit->first.perm)},
          {"vertex", sys.name(hit->second)}};
    checks.pass("nondiscreteness",
                hit ? "nondiscrete: star-fixing automorphism found"
                    : "discrete: no nontrivial star-fixing automorphism",
                ms_since(t0));
  } catch (const ResourceError& e) {
    checks.resource("nondiscreteness", e.what(), ms_since(t0));
  }

  t0 = Clock::now();
  try {
    WitnessOptions wopts;
    wopts.aut.max_vertices = config.aut_bound;
    wopts.enumeration = enum_options(config);
    auto witnesses = find_witnesses(nerve, wopts);
    tables["witness_count"] = witnesses.size();
    Json first = Json::array();
    for (size_t i = 0; i < witnesses.size() && i < 5; ++i)
      first.push_back(witness_json(sys, witnesses[i]));
    tables["witnesses"] = first;
    std::string details = std::to_string(witnesses.size()) + " witness(es)";
    if (witnesses.empty()) {
      // attribute the failure to the first unmet condition
      bool cond12 = false, cond3_blocks = false;
      auto auts = label_automorphisms(nerve, wopts.aut);
      for (int s1 = 0; s1 < sys.rank() && !cond3_blocks; ++s1)
        for (int s2 = 0; s2 < sys.rank() && !cond3_blocks; ++s2)
          for (const auto& a1 : auts) {
            if (!fixes_star(nerve, a1, s2) || a1(s1) == s1) continue;
            if (!orbit_images_infinite(sys, a1, s1)) continue;
            for (const auto& a2 : auts) {
              if (!fixes_star(nerve, a2, s1) || a2(s2) == s2) continue;
              if (!orbit_images_infinite(sys, a2, s2)) continue;
              cond12 = true;
              if (!all_containing_halvable(sys, nerve, s1,
                                           wopts.enumeration) ||
                  !all_containing_halvable(sys, nerve, s2,
                                           wopts.enumeration)) {
                cond3_blocks = true;
                break;
              }
            }
          }
      if (cond3_blocks)
        details += "; reason: Condition (3) (halvability) fails";
      else if (!cond12)
        details += "; reason: Conditions (1)-(2) admit no pair";
      tables["witness_reason"] =
          cond3_blocks ? "Condition (3)" : "Conditions (1)-(2)";
    }
    checks.pass("witnesses", details, ms_since(t0));
  } catch (const ResourceError& e) {
    checks.resource("witnesses", e.what(), ms_since(t0));
  }

  t0 = Clock::now();
  try {
    Json halv = Json::array();
    auto eopts = enum_options(config);
    for (GenSet t : nerve.simplices)
      for (int s : gs_members(t)) {
        auto sph = is_spherical(sys, t);
        auto half = halving(sys, *sph, s, eopts);
        halv.push_back({{"T", type_names(sys, t)},
                        {"s", sys.name(s)},
                        {"halvable", half.has_value()},
                        {"half_order",
                         half ? static_cast<long long>(half->members.size())
                              : 0}});
      }
    tables["halvability"] = halv;
    checks.pass("halvability-table",
                std::to_string(halv.size()) + " rows", ms_since(t0));
  } catch (const ResourceError& e) {
    checks.resource("halvability-table", e.what(), ms_since(t0));
  }

  return finish(config, checks, std::move(tables), start);
}

Json cmd_build(const RunConfig& config) {
  auto start = Clock::now();
  Checks checks;
  Json tables;

  auto sys = load_system(config);
  auto wit = select_witness(sys, config);
  tables["witness"] = witness_json(sys, wit);

  auto t0 = Clock::now();
  auto y = build_Yn(wit, sys, config.n);
  tables["chambers"] = y.chamber_count();
  tables["chambers_per_level"] = y.chambers_per_level();
  tables["vertices"] = y.members.size();
  tables["scwol_edges"] = y.scwol.edge_count();
  tables["dual_graph_dot"] = dual_graph_dot(y);
  checks.pass("build-Yn", std::to_string(y.chamber_count()) + " chambers",
              ms_since(t0));

  t0 = Clock::now();
  checks.report("chamber-structure", y.structure_report, ms_since(t0));
  t0 = Clock::now();
  checks.report("scwol-axioms", validate_scwol(y.scwol), ms_since(t0));

  t0 = Clock::now();
  try {
    GroupCache cache(enum_options(config));
    auto gyn = build_GYn(wit, sys, config.n, cache);
    std::map<std::string, int> orders;
    for (const auto& g : gyn.cog->local) ++orders[std::to_string(g->size())];
    tables["local_group_orders"] = orders;
    tables["type0_trivial"] = has_trivial_type0_groups(*gyn.cog);
    checks.report("gyn-axioms", validate_cog(*gyn.cog), ms_since(t0));
  } catch (const ResourceError& e) {
    checks.resource("gyn-axioms", e.what(), ms_since(t0));
  } catch (const NotHalvableError& e) {
    checks.fail("gyn-axioms", e.what(), ms_since(t0));
  }

  return finish(config, checks, std::move(tables), start);
}

Json cmd_verify(const RunConfig& config) {
  auto start = Clock::now();
  Checks checks;
  Json tables;

  auto sys = load_system(config);
  auto wit = select_witness(sys, config);
  tables["witness"] = witness_json(sys, wit);
  GroupCache cache(enum_options(config));

  auto t0 = Clock::now();
  try {
    auto dis = verify_disjointness(wit, sys, config.n, config.word_bound);
    tables["disjointness"] = {{"words", dis.word_count},
                              {"collisions", dis.collisions}};
    if (dis.pass)
      checks.pass("disjointness",
                  std::to_string(dis.word_count) + " words pairwise distinct",
                  ms_since(t0));
    else
      checks.fail("disjointness",
                  std::to_string(dis.collisions) + " collisions", ms_since(t0));
  } catch (const ResourceError& e) {
    checks.resource("disjointness", e.what(), ms_since(t0));
  }

  std::optional<ChamberComplex> y;
  t0 = Clock::now();
  y = build_Yn(wit, sys, config.n);
  Report structure = y->structure_report;
  for (const auto& v : validate_scwol(y->scwol).violations)
    structure.violations.push_back(v);
  checks.report("chamber-structure", structure, ms_since(t0));

  std::optional<GYn> gyn;
  t0 = Clock::now();
  try {
    gyn = build_GYn(wit, sys, config.n, cache);
    Report r = validate_cog(*gyn->cog);
    if (!has_trivial_type0_groups(*gyn->cog))
      r.add("gyn.type0-trivial", "-", "type-empty local group nontrivial");
    checks.report("gyn-axioms", r, ms_since(t0));
  } catch (const ResourceError& e) {
    checks.resource("gyn-axioms", e.what(), ms_since(t0));
  } catch (const NotHalvableError& e) {
    checks.fail("gyn-axioms", e.what(), ms_since(t0));
  }

  t0 = Clock::now();
  if (gyn) {
    try {
      auto gy1 = build_GY1(sys, cache);
      auto phi = build_covering_to_GY1(*gyn, gy1);
      Report r = validate_morphism(phi);
      for (const auto& v : validate_covering(phi).violations)
        r.violations.push_back(v);
      checks.report("covering-phi", r, ms_since(t0));
    } catch (const ResourceError& e) {
      checks.resource("covering-phi", e.what(), ms_since(t0));
    }
  } else {
    checks.skipped("covering-phi", "G(Y_n) unavailable");
  }

  std::optional<YnAction> yna;
  t0 = Clock::now();
  try {
    yna = act_on_Yn(wit, sys, config.n, action_options(config));
    checks.report("action", validate_action(yna->sd.scwol, yna->act),
                  ms_since(t0));
  } catch (const ResourceError& e) {
    checks.resource("action", e.what(), ms_since(t0));
  }

  std::optional<CogAction> ca;
  t0 = Clock::now();
  if (gyn && yna) {
    ca = act_on_GYn(*gyn, *yna, cache);
    checks.report("action-on-cog", extend_action_to_cog(*ca), ms_since(t0));
  } else {
    checks.skipped("action-on-cog", "action or complex unavailable");
  }

  t0 = Clock::now();
  if (ca) {
    auto iq = induce_quotient_cog(*ca);
    checks.report("induced-axioms", iq.hz_report, ms_since(t0));
    t0 = Clock::now();
    checks.report("covering-lambda", iq.lambda_report, ms_since(t0));
    t0 = Clock::now();
    auto to_group = canonical_morphism_to_group(iq, yna->group.table);
    checks.report("canonical-morphism", validate_morphism(to_group),
                  ms_since(t0));
    tables["hz_vertices"] = iq.hz->base.vertex_count();
  } else {
    checks.skipped("induced-axioms", "induced complex unavailable");
    checks.skipped("covering-lambda", "induced complex unavailable");
    checks.skipped("canonical-morphism", "induced complex unavailable");
  }

  return finish(config, checks, std::move(tables), start);
}

Json cmd_covolume(const RunConfig& config) {
  auto start = Clock::now();
  Checks checks;
  Json tables;

  auto sys = load_system(config);
  auto wit = select_witness(sys, config);
  tables["witness"] = witness_json(sys, wit);
  GroupCache cache(enum_options(config));

  Json rows = Json::array();
  for (int n = 1; n <= config.n_max; ++n) {
    auto t0 = Clock::now();
    try {
      auto report = covolume_report(wit, sys, n, cache,
                                    action_options(config));
      Json row{{"n", n},
               {"direct", rational_string(report.direct)},
               {"series", rational_string(report.series)},
               {"agree", report.agree}};
      Json per_vertex = Json::array();
      for (const auto& r : report.per_vertex)
        per_vertex.push_back({{"level", r.level},
                              {"stab_order", r.stab_order},
                              {"orbit", r.orbit_size}});
      row["per_vertex"] = per_vertex;
      rows.push_back(row);
      if (report.consistency.ok())
        checks.pass("covolume-n" + std::to_string(n),
                    "direct " + rational_string(report.direct) + ", series " +
                        rational_string(report.series) +
                        (report.agree ? ", agree" : ", differ"),
                    ms_since(t0));
      else
        checks.fail("covolume-n" + std::to_string(n),
                    report.consistency.summary(), ms_since(t0),
                    violations_json(report.consistency));
    } catch (const ResourceError& e) {
      checks.resource("covolume-n" + std::to_string(n), e.what(),
                      ms_since(t0));
      break;
    }
  }
  tables["covolumes"] = rows;
  return finish(config, checks, std::move(tables), start);
}

Json cmd_catalog_list(const RunConfig& config) {
  auto start = Clock::now();
  Checks checks;
  Json tables;
  Json entries = Json::array();
  for (const auto& e : catalog_entries())
    entries.push_back({{"name", e.name},
                       {"signature", e.signature},
                       {"description", e.description}});
  tables["catalog"] = entries;
  checks.pass("catalog-list", std::to_string(entries.size()) + " entries", 0);
  return finish(config, checks, std::move(tables), start);
}

Json run_command(const RunConfig& config) {
  if (config.command == "check") return cmd_check(config);
  if (config.command == "build") return cmd_build(config);
  if (config.command == "verify") return cmd_verify(config);
  if (config.command == "covolume") return cmd_covolume(config);
  if (config.command == "catalog-list") return cmd_catalog_list(config);
  throw std::invalid_argument("unknown command '" + config.command + "'");
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << "== " << report["command"].get<std::string>() << " ==\n";
  const auto& config = report["config"];
  if (!config["catalog"].get<std::string>().empty())
    out << "system: catalog " << config["catalog"].get<std::string>() << "\n";
  else if (!config["system_file"].get<std::string>().empty())
    out << "system: " << config["system_file"].get<std::string>() << "\n";

  for (const auto& check : report["checks"]) {
    std::string status = check["status"].get<std::string>();
    std::string flag = status == "pass" ? "PASS"
                       : status == "fail" ? "FAIL"
                       : status == "skipped" ? "SKIP"
                                             : "ERROR";
    out << "[" << flag << "] " << check["name"].get<std::string>() << " - "
        << check["details"].get<std::string>() << "\n";
    if (check.contains("violations"))
      for (const auto& v : check["violations"])
        out << "         " << v["axiom"].get<std::string>() << " at "
            << v["location"].get<std::string>() << ": "
            << v["details"].get<std::string>() << "\n";
  }

  const auto& tables = report["tables"];
  if (tables.contains("nondiscrete"))
    out << "nondiscrete: " << (tables["nondiscrete"].get<bool>() ? "yes" : "no")
        << "\n";
  if (tables.contains("nondiscreteness_witness"))
    out << "  via alpha = "
        << tables["nondiscreteness_witness"]["alpha"].get<std::string>()
        << " fixing star("
        << tables["nondiscreteness_witness"]["vertex"].get<std::string>()
        << ")\n";
  if (tables.contains("witness_count")) {
    out << "witnesses: " << tables["witness_count"].get<size_t>();
    if (tables.contains("witness_reason"))
      out << " (reason: " << tables["witness_reason"].get<std::string>()
          << ")";
    out << "\n";
    for (const auto& w : tables["witnesses"])
      out << "  s1=" << w["s1"].get<std::string>()
          << " s2=" << w["s2"].get<std::string>()
          << " alpha1=" << w["alpha1"].get<std::string>()
          << " alpha2=" << w["alpha2"].get<std::string>() << " q=("
          << w["q1"].get<int>() << "," << w["q2"].get<int>() << ")\n";
  }
  if (tables.contains("halvability")) {
    out << "halvability table (" << tables["halvability"].size()
        << " rows):\n";
    for (const auto& row : tables["halvability"])
      out << "  T=" << row["T"].get<std::string>() << " s="
          << row["s"].get<std::string>() << " halvable="
          << (row["halvable"].get<bool>() ? "yes" : "no") << " |Half|="
          << row["half_order"].get<long long>() << "\n";
  }
  if (tables.contains("chambers")) {
    out << "chambers: " << tables["chambers"].get<int>() << " (per level:";
    for (const auto& c : tables["chambers_per_level"])
      out << " " << c.get<int>();
    out << ")\n";
  }
  if (tables.contains("dual_graph_dot"))
    out << tables["dual_graph_dot"].get<std::string>();
  if (tables.contains("covolumes")) {
    out << "n   direct        series        agree\n";
    for (const auto& row : tables["covolumes"]) {
      std::string direct = row["direct"].get<std::string>();
      std::string series = row["series"].get<std::string>();
      direct.resize(std::max<size_t>(12, direct.size()), ' ');
      series.resize(std::max<size_t>(12, series.size()), ' ');
      out << row["n"].get<int>() << "   " << direct << "  " << series << "  "
          << (row["agree"].get<bool>() ? "yes" : "no") << "\n";
      for (const auto& pv : row["per_vertex"])
        out << "   level " << pv["level"].get<int>() << ": stabilizer "
            << pv["stab_order"].get<long long>() << ", orbit "
            << pv["orbit"].get<long long>() << "\n";
    }
  }
  if (tables.contains("catalog"))
    for (const auto& e : tables["catalog"])
      out << e["signature"].get<std::string>() << "  -  "
          << e["description"].get<std::string>() << "\n";

  out << "status: " << report["status"].get<std::string>() << "\n";
  return out.str();
}

int exit_status(const Json& report) {
  std::string status = report["status"].get<std::string>();
  if (status == "pass") return 0;
  if (status == "fail") return 1;
  return 2;
}

}  // namespace coxlat
