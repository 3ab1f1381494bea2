// Commands behind the CLI and the C API: cohomology tables, the center
// search and the identity suites, rendered as deterministic JSON or CSV.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rinehart/algebra_io.hpp"
#include "rinehart/poisson.hpp"

namespace rinehart {

/// Bad command, suite, flag value or a precondition of the command.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunOptions {
  int max_weight = 6;
  std::optional<int> max_degree;  // default depends on the command
  int u_cap = 3;
  int filtration_cap = 2;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  std::string out = "json";  // json | csv
  bool timing = false;       // adds wall-clock seconds, which breaks byte-identity
};

/// Reads {"max_weight": .., "max_degree": .., "u_cap": .., "filtration_cap": ..,
/// "samples": .., "seed": .., "out": .., "timing": ..}; absent keys keep defaults.
RunOptions options_from_json(const std::string& text);

struct SuiteResult {
  std::string suite;
  CheckReport report;
  std::string note;  // informational, e.g. a witness that is expected
};

struct Report {
  std::string command;
  std::string algebra;
  RunOptions options;
  std::vector<TableEntry> rows;
  std::vector<SuiteResult> suites;
  std::vector<std::pair<std::string, std::string>> facts;  // extra key/value metadata
  double seconds = 0;
  bool pass = true;
};

/// command: check | poisson-cohomology | poisson-homology | cyclic | center |
/// ce | verify <suite>. Throws UsageError on a bad command or precondition.
Report run_command(const Algebra& a, const std::string& command, const RunOptions& opt);

/// verify suites in the order "all" runs them.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const Algebra& a, const std::string& suite, const RunOptions& opt);

/// JSON with sorted keys, or CSV with columns complex,weight,degree,dimension.
std::string render(const Report& r);

}  // namespace rinehart
