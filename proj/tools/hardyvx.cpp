// hardyvx: variable-exponent Hardy inequality criteria from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hardyvx/catalog.hpp"
#include "hardyvx/config.hpp"
#include "hardyvx/error.hpp"
#include "hardyvx/report.hpp"
#include "hardyvx/scenario.hpp"

namespace {

using namespace hardyvx;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string verdict_cell(const BoundednessVerdict* v) { return v ? to_string(v->cls) : "-"; }

void print_summary(std::ostream& os, const CriterionReport& r) {
  const BoundednessVerdict* c1 = (r.C1 && r.C1->has_trend) ? &r.C1->trend : nullptr;
  char head[160];
  std::snprintf(head, sizeof head, "%-22s %-14s delta=%-9g ", r.exponent_id.c_str(), to_string(r.monotonicity.cls),
                r.delta);
  os << head << "A=" << verdict_cell(r.A ? &*r.A : nullptr) << " B=" << verdict_cell(r.B ? &r.B->verdict : nullptr)
     << " C1=" << verdict_cell(c1) << " C2=" << verdict_cell(r.C2 ? &*r.C2 : nullptr)
     << " C3=" << verdict_cell(r.C3 ? &r.C3->verdict : nullptr) << " C4=" << verdict_cell(r.C4 ? &*r.C4 : nullptr)
     << " C5=" << verdict_cell(r.C5 ? &*r.C5 : nullptr) << "  " << (r.agreement ? "agree" : "DISAGREE") << "\n";
  for (const auto& note : r.notes) {
    if (!r.agreement) os << "    " << note << "\n";
  }
}

int cmd_run(const std::string& config_path, const std::string& out_dir, const std::string& format) {
  ScenarioConfig cfg;
  try {
    cfg = parse_config(read_file(config_path));
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) std::cerr << "config error " << v << "\n";
    return kExitInputError;
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (!format.empty()) cfg.format = output_format_from_string(format);
  cfg.echo["output"] = {{"dir", cfg.output_dir}, {"format", to_string(cfg.format)}};

  const RunReport report = run_scenario(cfg);
  if (cfg.output_dir.empty()) {
    std::cout << to_json(report).dump(2) << "\n";
  } else {
    for (const auto& path : emit(report, cfg.format, cfg.output_dir)) std::cerr << "wrote " << path.string() << "\n";
    print_summary(std::cout, report.report);
  }
  return report.exit_code;
}

int cmd_catalog() {
  for (const CatalogEntry& e : catalog()) {
    char line[200];
    std::snprintf(line, sizeof line, "%-22s %s\n", e.name.c_str(), e.description.c_str());
    std::cout << line;
  }
  return 0;
}

int cmd_audit_all(std::size_t n, double x_min, const std::string& out_dir) {
  AuditConfig cfg;
  cfg.n = n;
  cfg.x_min = x_min;
  bool all_agree = true;
  for (const CatalogEntry& e : catalog()) {
    RunReport run;
    ScenarioConfig sc;
    sc.family = e.family;
    sc.exponent_id = e.name;
    sc.audit = cfg;
    sc.echo = {{"exponent", {{"catalog", e.name}}}, {"grid", {{"x_min", x_min}, {"n", n}}}};
    run = run_scenario(sc);
    print_summary(std::cout, run.report);
    all_agree = all_agree && run.report.agreement;
    if (!out_dir.empty()) emit(run, OutputFormat::json, std::filesystem::path(out_dir) / e.name);
  }
  std::cout << (all_agree ? "all catalog entries agree\n" : "inconsistencies found\n");
  return all_agree ? kExitAgreement : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-exponent Hardy inequality criteria"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format;
  auto* run = app.add_subcommand("run", "Audit one exponent described by a JSON config");
  run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (default: JSON to stdout)");
  run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  app.add_subcommand("catalog", "List built-in exponents");

  std::size_t n = 1201;
  double x_min = 1e-12;
  std::string audit_out;
  auto* audit = app.add_subcommand("audit-all", "Audit every catalog exponent");
  audit->add_option("--n", n, "Grid points")->check(CLI::Range(16, 1000000));
  audit->add_option("--x-min", x_min, "Smallest grid point")->check(CLI::Range(1e-300, 0.5));
  audit->add_option("--out", audit_out, "Write one report directory per entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (app.got_subcommand(run)) return cmd_run(config_path, out_dir, format);
    if (app.got_subcommand("catalog")) return cmd_catalog();
    return cmd_audit_all(n, x_min, audit_out);
  } catch (const hardyvx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
