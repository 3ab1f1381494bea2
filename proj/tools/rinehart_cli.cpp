// Command-line front end over the C API. Exit codes: 0 pass, 1 check failure,
// 2 usage or parse error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rinehart/rinehart.h"

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

int report_error(rh_status s) {
  std::cerr << "error: " << rh_last_error() << '\n';
  return (s == RH_ERR_INTERNAL) ? kFail : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-Rinehart algebra engine: cohomology tables and identity suites"};
  std::string command, suite, spec, builtin, out = "json", output;
  std::optional<int> max_weight, max_degree, u_cap, filtration_cap;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  bool timing = false;

  app.add_option("command", command,
                 "check | poisson-cohomology | poisson-homology | cyclic | center | ce | verify")
      ->required();
  app.add_option("suite", suite, "suite for verify, or 'all'");
  auto* spec_opt = app.add_option("--spec", spec, "presentation JSON file");
  app.add_option("--builtin", builtin, "builtin algebra, e.g. weyl:1, lie:sl2")->excludes(spec_opt);
  app.add_option("--max-weight", max_weight, "weight cap (default 6)");
  app.add_option("--max-degree", max_degree, "degree cap (default depends on the command)");
  app.add_option("--u-cap", u_cap, "power of u in the cyclic complex (default 3)");
  app.add_option("--filtration-cap", filtration_cap, "PBW filtration cap for center (default 2)");
  app.add_option("--samples", samples, "samples per randomized check (default 50)");
  app.add_option("--seed", seed, "seed (default 1)");
  app.add_option("--out", out, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", output, "write the report to a file instead of stdout");
  app.add_flag("--timing", timing, "include wall-clock seconds (reports are then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  if (spec.empty() == builtin.empty()) {
    std::cerr << "error: give exactly one of --spec and --builtin\n";
    return kUsage;
  }
  if (command == "verify") {
    if (suite.empty()) {
      std::cerr << "error: verify needs a suite name or 'all'\n";
      return kUsage;
    }
    command += " " + suite;
  } else if (!suite.empty()) {
    std::cerr << "error: unexpected argument '" << suite << "'\n";
    return kUsage;
  }

  nlohmann::json opts = nlohmann::json::object();
  if (max_weight) opts["max_weight"] = *max_weight;
  if (max_degree) opts["max_degree"] = *max_degree;
  if (u_cap) opts["u_cap"] = *u_cap;
  if (filtration_cap) opts["filtration_cap"] = *filtration_cap;
  if (samples) opts["samples"] = *samples;
  if (seed) opts["seed"] = *seed;
  opts["out"] = out;
  opts["timing"] = timing;

  rh_algebra* a = nullptr;
  rh_status s = spec.empty() ? rh_algebra_builtin(builtin.c_str(), &a) : rh_algebra_from_file(spec.c_str(), &a);
  if (s != RH_OK) return report_error(s);

  char* report = nullptr;
  int verdict = RH_FAIL;
  s = rh_run(a, command.c_str(), opts.dump().c_str(), &report, &verdict);
  rh_algebra_free(a);
  if (s != RH_OK) return report_error(s);

  if (output.empty()) {
    std::fputs(report, stdout);
  } else {
    std::ofstream f(output, std::ios::binary);
    f << report;
    if (!f) {
      rh_string_free(report);
      std::cerr << "error: cannot write '" << output << "'\n";
      return kUsage;
    }
  }
  rh_string_free(report);
  return verdict == RH_PASS ? kPass : kFail;
}
