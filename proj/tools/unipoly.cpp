#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "unipoly/report.hpp"

using namespace unipoly;

namespace {

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path,
                      bool& c1_given, double& c1_value) {
  cmd->add_option("--config", config_path, "config file (JSON, same schema as the report echo)");
  cmd->add_option("--degree", cfg.degree, "even degree of the family");
  auto* c1opt = cmd->add_option("--c1", c1_value, "critical value");
  c1opt->each([&](const std::string&) { c1_given = true; });
  cmd->add_option("--param-query", cfg.param_query,
                  "superstable:p | cascade:d | fibonacci:d");
  cmd->add_option("--variant", cfg.variant,
                  "round-disc | quadratic | large-degree | general | doubling | auto");
  cmd->add_option("--theta", cfg.thetas, "external angles to try");
  cmd->add_option("--levels", cfg.levels, "number of levels");
  cmd->add_option("--samples", cfg.samples, "boundary samples");
  cmd->add_option("--tol", cfg.tol, "reporting tolerance");
  cmd->add_option("--out-dir", cfg.out_dir, "output directory");
  cmd->add_option("--format", cfg.formats, "json, csv, svg");
}

RunConfig finalize(RunConfig flags, const std::string& config_path, bool c1_given,
                   double c1_value, const CLI::App* cmd) {
  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw Error(errc::io_error, "cannot read config file " + config_path);
    json j;
    in >> j;
    cfg = RunConfig::from_json(j);
  }
  // Flags override the file.
  if (cmd->count("--degree")) cfg.degree = flags.degree;
  if (c1_given) {
    cfg.c1 = c1_value;
    cfg.has_c1 = true;
  }
  if (cmd->count("--param-query")) cfg.param_query = flags.param_query;
  if (cmd->count("--variant")) cfg.variant = flags.variant;
  if (cmd->count("--theta")) cfg.thetas = flags.thetas;
  if (cmd->count("--levels")) cfg.levels = flags.levels;
  if (cmd->count("--samples")) cfg.samples = flags.samples;
  if (cmd->count("--tol")) cfg.tol = flags.tol;
  if (cmd->count("--out-dir")) cfg.out_dir = flags.out_dir;
  else if (config_path.empty() || cfg.out_dir.empty()) {
    const char* env = std::getenv("UNIPOLY_OUT_DIR");
    if (env != nullptr && cfg.out_dir == ".") cfg.out_dir = env;
  }
  if (cmd->count("--format")) cfg.formats = flags.formats;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for real unimodal polynomial dynamics"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cmd;
    RunConfig flags;
    std::string config_path;
    bool c1_given = false;
    double c1_value = 0.0;
    CommandResult (*run)(const RunConfig&);
  };
  std::vector<Sub> subs;
  subs.reserve(5);
  auto add = [&](const char* name, const char* desc, CommandResult (*fn)(const RunConfig&)) {
    subs.push_back(Sub{app.add_subcommand(name, desc), RunConfig{}, "", false, 0.0, fn});
    Sub& s = subs.back();
    add_common_flags(s.cmd, s.flags, s.config_path, s.c1_given, s.c1_value);
  };
  add("bounds", "bound-function tables and reference checks", cmd_bounds);
  add("analyze", "classify a parameter and measure space ratios", cmd_analyze);
  add("construct", "build domains, pull back, check containment", cmd_construct);
  add("geometry", "crossing points, spirals, root exclusions", cmd_geometry);
  add("search", "locate parameters with prescribed combinatorics", cmd_search);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    for (auto& s : subs) {
      if (s.cmd->parsed()) {
        RunConfig cfg = finalize(s.flags, s.config_path, s.c1_given, s.c1_value, s.cmd);
        CommandResult res = s.run(cfg);
        std::cout << res.report.dump(2) << std::endl;
        return res.exit_code;
      }
    }
  } catch (const Error& e) {
    std::cerr << e.what() << std::endl;
    return e.code() == errc::io_error ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 1;
}
