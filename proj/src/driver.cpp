#include "rinehart/driver.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "rinehart/quasimod.hpp"
#include "rinehart/uea.hpp"

namespace rinehart {

namespace {

using json = nlohmann::json;

template <class T>
void read_key(const json& j, const char* key, T& out) {
  if (!j.contains(key) || j[key].is_null()) return;
  try {
    out = j[key].get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("option '") + key + "' has the wrong type");
  }
}

void check_bounds(const RunOptions& o) {
  if (o.max_weight < 0) throw UsageError("max_weight must be >= 0");
  if (o.max_degree && *o.max_degree < 0) throw UsageError("max_degree must be >= 0");
  if (o.u_cap < 1) throw UsageError("u_cap must be >= 1");
  if (o.filtration_cap < 0) throw UsageError("filtration_cap must be >= 0");
  if (o.samples < 1) throw UsageError("samples must be >= 1");
  if (o.out != "json" && o.out != "csv") throw UsageError("out must be json or csv");
}

SuiteResult check_suite(const Algebra& a, const RunOptions& opt) {
  SuiteResult s{"check", check_axioms(a.lr), {}};
  if (!s.report.ok) return s;
  auto r = ruth_check(a.lr, a.connection, opt.max_degree.value_or(2));
  s.report.checks.insert(s.report.checks.end(), r.checks.begin(), r.checks.end());
  if (!r.ok) {
    s.report.ok = false;
    s.report.failure = "ruth: " + r.failure;
  }
  return s;
}

void run_body(const Algebra& a, const std::string& command, const RunOptions& opt, Report& rep) {
  if (command == "check") {
    rep.suites.push_back(check_suite(a, opt));
    return;
  }
  if (command.rfind("verify", 0) == 0) {
    std::string suite = command.size() > 7 ? command.substr(7) : "";
    if (command.size() > 6 && command[6] != ' ') throw UsageError("unknown command '" + command + "'");
    if (suite.empty()) throw UsageError("verify needs a suite name or 'all'");
    if (suite == "all") {
      for (const auto& s : suite_names()) rep.suites.push_back(run_suite(a, s, opt));
    } else {
      rep.suites.push_back(run_suite(a, suite, opt));
    }
    return;
  }
  if (command == "ce") {
    try {
      rep.rows = ce_cohomology(a.lr, ce_sym_adjoint_module(a.lr, opt.max_weight), opt.max_degree.value_or(3));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("ce: ") + e.what());
    }
    return;
  }
  if (command == "center") {
    Enveloping U(a.lr, a.connection);
    CenterResult c;
    try {
      c = center_search(U, opt.filtration_cap, opt.max_weight, opt.max_degree);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("center: ") + e.what());
    }
    for (const auto& [g, dim] : c.by_grading) rep.rows.push_back({"center", g, opt.filtration_cap, dim});
    rep.facts.emplace_back("dimension", std::to_string(c.basis.size()));
    rep.facts.emplace_back("unknowns", std::to_string(c.unknowns));
    for (std::size_t i = 0; i < c.basis.size(); ++i)
      rep.facts.emplace_back("basis_" + std::to_string(i), c.basis[i].to_string(a.lr));
    return;
  }
  PoissonAlgebra pa(a.lr);
  try {
    if (command == "poisson-cohomology") {
      rep.rows = poisson_cohomology(pa, opt.max_weight, opt.max_degree.value_or(static_cast<int>(pa.nvars())));
    } else if (command == "poisson-homology") {
      rep.rows = poisson_homology(pa, opt.max_weight);
    } else if (command == "cyclic") {
      auto c = cyclic_homology(pa, opt.max_weight, opt.u_cap);
      rep.rows = c.entries;
      rep.facts.emplace_back("stabilized", c.stabilized ? "true" : "false");
    } else {
      throw UsageError("unknown command '" + command + "'");
    }
  } catch (const WeightError& e) {
    throw UsageError(e.what());
  }
}

json options_json(const RunOptions& o) {
  json j;
  j["max_weight"] = o.max_weight;
  j["max_degree"] = o.max_degree ? json(*o.max_degree) : json(nullptr);
  j["u_cap"] = o.u_cap;
  j["filtration_cap"] = o.filtration_cap;
  j["samples"] = o.samples;
  j["seed"] = o.seed;
  return j;
}

}  // namespace

RunOptions options_from_json(const std::string& text) {
  RunOptions o;
  if (text.empty()) return o;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("options are not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("options must be a JSON object");
  read_key(j, "max_weight", o.max_weight);
  if (j.contains("max_degree") && !j["max_degree"].is_null()) {
    int d = 0;
    read_key(j, "max_degree", d);
    o.max_degree = d;
  }
  read_key(j, "u_cap", o.u_cap);
  read_key(j, "filtration_cap", o.filtration_cap);
  read_key(j, "samples", o.samples);
  read_key(j, "seed", o.seed);
  read_key(j, "out", o.out);
  read_key(j, "timing", o.timing);
  check_bounds(o);
  return o;
}

Report run_command(const Algebra& a, const std::string& command, const RunOptions& opt) {
  check_bounds(opt);
  Report rep;
  rep.command = command;
  rep.options = opt;
  auto start = std::chrono::steady_clock::now();
  run_body(a, command, opt, rep);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& s : rep.suites) rep.pass = rep.pass && s.report.ok;
  return rep;
}

std::string render(const Report& r) {
  if (r.options.out == "csv") {
    std::ostringstream os;
    os << "complex,weight,degree,dimension\n";
    for (const auto& e : r.rows) os << e.complex << ',' << e.weight << ',' << e.degree << ',' << e.dimension << '\n';
    return os.str();
  }
  json j;
  j["command"] = r.command;
  j["algebra"] = r.algebra;
  j["options"] = options_json(r.options);
  j["pass"] = r.pass;
  j["rows"] = json::array();
  for (const auto& e : r.rows)
    j["rows"].push_back({{"complex", e.complex}, {"weight", e.weight}, {"degree", e.degree}, {"dimension", e.dimension}});
  j["suites"] = json::array();
  for (const auto& s : r.suites) {
    json sj{{"name", s.suite}, {"ok", s.report.ok}, {"checks", s.report.checks}};
    if (!s.report.ok) sj["failure"] = s.report.failure;
    if (!s.note.empty()) sj["note"] = s.note;
    j["suites"].push_back(sj);
  }
  json facts = json::object();
  for (const auto& [k, v] : r.facts) facts[k] = v;
  j["facts"] = facts;
  if (r.options.timing) j["seconds"] = r.seconds;
  return j.dump(2) + "\n";
}

}  // namespace rinehart
