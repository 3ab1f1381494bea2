// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path to the rinehart CLI> <scratch directory>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "rinehart/driver.hpp"
#include "rinehart/quasimod.hpp"
#include "rinehart/uea.hpp"

using namespace rinehart;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::map<int, std::size_t> by_degree(const std::vector<TableEntry>& rows) {
  std::map<int, std::size_t> out;
  for (const auto& e : rows) out[e.degree] += e.dimension;
  return out;
}

// Poisson H^0 = 1 at weight 0 and nothing else.
void expect_weyl_pattern(Outcome& o, const std::string& name, int max_weight) {
  PoissonAlgebra pa(builtin(name).lr);
  for (const auto& e : poisson_cohomology(pa, max_weight, 2)) {
    std::size_t want = (e.degree == 0 && e.weight == 0) ? 1 : 0;
    if (e.dimension != want)
      o.fail(name + ": H^" + std::to_string(e.degree) + " at weight " + std::to_string(e.weight) + " is " +
             std::to_string(e.dimension));
  }
}

Outcome criterion1() {
  Outcome o;
  auto t = Clock::now();
  expect_weyl_pattern(o, "weyl:1", 8);
  expect_weyl_pattern(o, "weyl:2", 4);
  double s = since(t);
  if (s >= 10) o.fail("took " + std::to_string(s) + " s");
  if (o.ok) o.detail = "weyl:1 (weights <= 8) and weyl:2 (weights <= 4): H^0 = 1 at weight 0, H^1 = H^2 = 0";
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto t = Clock::now();
  PoissonAlgebra pa(builtin("weyl:1").lr);
  auto h = by_degree(poisson_homology(pa, 8));
  if (h[0] != 0 || h[1] != 0 || h[2] != 1)
    o.fail("homology H0,H1,H2 = " + std::to_string(h[0]) + "," + std::to_string(h[1]) + "," +
           std::to_string(h[2]));
  auto c = cyclic_homology(pa, 8, 3);
  auto hc = by_degree(c.entries);
  std::vector<std::size_t> want{0, 0, 1, 0, 1};
  for (int m = 0; m <= 4; ++m)
    if (hc[m] != want[static_cast<std::size_t>(m)])
      o.fail("HC_" + std::to_string(m) + " = " + std::to_string(hc[m]));
  if (!c.stabilized) o.fail("cyclic homology did not stabilize at u-cap 3");
  double s = since(t);
  if (s >= 30) o.fail("took " + std::to_string(s) + " s");
  if (o.ok) o.detail = "H_2 = 1, H_1 = H_0 = 0; HC_2 = HC_4 = 1, HC_0 = HC_1 = HC_3 = 0, stabilized";
  return o;
}

Outcome criterion3() {
  Outcome o;
  LieRinehart sl2 = builtin("lie:sl2").lr;
  PoissonAlgebra pa(sl2);
  auto ce = ce_cohomology(sl2, ce_sym_adjoint_module(sl2, 4), 3);
  auto pc = poisson_cohomology(pa, 4, 3);
  std::size_t compared = 0;
  std::vector<std::size_t> h0(5, 99);
  for (const auto& e : ce) {
    if (e.weight > 4) continue;
    // Poisson cell weight of a degree-k cochain with Sym^q coefficients is q - k
    auto it = std::find_if(pc.begin(), pc.end(), [&](const TableEntry& f) {
      return f.degree == e.degree && f.weight == e.weight - e.degree;
    });
    if (it == pc.end()) {
      o.fail("no Poisson entry for q = " + std::to_string(e.weight) + ", degree " + std::to_string(e.degree));
      continue;
    }
    ++compared;
    if (it->dimension != e.dimension)
      o.fail("q = " + std::to_string(e.weight) + ", degree " + std::to_string(e.degree) + ": Poisson " +
             std::to_string(it->dimension) + " vs CE " + std::to_string(e.dimension));
    if (e.degree == 0) h0[static_cast<std::size_t>(e.weight)] = e.dimension;
  }
  if (compared != 20) o.fail("compared " + std::to_string(compared) + " entries, expected 20");
  if (h0 != std::vector<std::size_t>{1, 0, 1, 0, 1}) o.fail("H^0 row differs from 1,0,1,0,1");
  if (o.ok) o.detail = "sl2: 20 entries (q <= 4, degree <= 3) agree; H^0 row 1,0,1,0,1";
  return o;
}

std::size_t poisson_h0_up_to(const std::string& name, int max_weight) {
  PoissonAlgebra pa(builtin(name).lr);
  std::size_t total = 0;
  for (const auto& e : poisson_cohomology(pa, max_weight, 0))
    if (e.weight >= 0) total += e.dimension;
  return total;
}

Outcome criterion4() {
  Outcome o;
  Algebra w = builtin("weyl:1");
  auto cw = center_search(Enveloping(w.lr, w.connection), 4, 6);
  std::size_t pw = poisson_h0_up_to("weyl:1", 6);
  if (cw.basis.size() != 1 || pw != 1)
    o.fail("weyl:1 center " + std::to_string(cw.basis.size()) + ", Poisson H^0 " + std::to_string(pw));
  Algebra s = builtin("lie:sl2");
  auto cs = center_search(Enveloping(s.lr, s.connection), 2, 2);
  std::size_t ps = poisson_h0_up_to("lie:sl2", 2);
  if (cs.basis.size() != 2 || ps != 2)
    o.fail("sl2 center " + std::to_string(cs.basis.size()) + ", Poisson H^0 " + std::to_string(ps));
  if (o.ok) o.detail = "weyl:1 (4,6): 1 = 1; sl2 (cap 2): 2 = 2";
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const char* name : {"arrangement:3", "arrangement:4"}) {
    Algebra a = builtin(name);
    PoissonAlgebra pa(a.lr);
    auto ax = check_axioms(a.lr);
    if (!ax.ok) o.fail(std::string(name) + ": " + ax.failure);
    // the Jacobiator is a trivector, so coordinate triples suffice
    std::size_t N = pa.nvars();
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k) {
          auto u = pa.coordinate(i), v = pa.coordinate(j), w = pa.coordinate(k);
          auto jac = pa.bracket(u, pa.bracket(v, w)) + pa.bracket(v, pa.bracket(w, u)) +
                     pa.bracket(w, pa.bracket(u, v));
          if (!jac.is_zero()) o.fail(std::string(name) + ": Jacobi fails on a coordinate triple");
        }
    if (!a.euler) {
      o.fail(std::string(name) + ": no Euler element");
      continue;
    }
    auto e = euler_contraction_check(pa, *a.euler, 4, static_cast<int>(N));
    if (!e.report.ok) o.fail(std::string(name) + ": " + e.report.failure);
    auto cas = capped_casimir_search(pa, 100, 4);
    if (cas.size() != 1 || !(cas[0] == Polynomial::constant(N, 1)))
      o.fail(std::string(name) + ": Casimir search returned " + std::to_string(cas.size()) + " elements");
  }
  if (o.ok) o.detail = "3 and 4 lines: Jacobi exact, Euler contraction on all weight <= 4 basis elements, Casimirs = span{1}";
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const char* name : {"weyl:1", "lie:sl2", "semidirect:sl2", "arrangement:4"}) {
    RunOptions opt;
    opt.samples = 100;
    opt.seed = 6;
    auto r = run_suite(builtin(name), "quasi", opt);
    if (!r.report.ok) o.fail(std::string(name) + ": " + r.report.failure);
  }
  PoissonAlgebra pa(builtin("weyl:1").lr);
  QuasiCheckOptions q;
  q.trials = 20;
  auto mutated = quasi_axiom_check(with_zero_homotopy(adjoint_instance(pa)), q);
  if (mutated.ok || mutated.failure.empty()) o.fail("zeroing h went undetected");
  if (o.ok) o.detail = "100 trials x 2 instances x 4 algebras; h = 0 witness: " + mutated.failure;
  return o;
}

Outcome run_suites(const std::vector<std::string>& suites, std::size_t samples) {
  Outcome o;
  for (const auto& name : builtin_names()) {
    Algebra a = builtin(name);
    RunOptions opt;
    opt.samples = samples;
    opt.seed = 1;
    for (const auto& s : suites) {
      auto r = run_suite(a, s, opt);
      if (!r.report.ok) o.fail(name + " " + s + ": " + r.report.failure);
    }
  }
  return o;
}

Outcome criterion7() {
  auto o = run_suites({"eta", "pbw", "tower"}, 50);
  if (o.ok)
    o.detail = "pbw chain map, identity tower at (n,p,q) <= (1,2,2), eta and F identities; 50 samples on " +
               std::to_string(builtin_names().size()) + " builtins";
  return o;
}

Outcome criterion8() {
  auto o = run_suites({"structural", "ruth", "nl"}, 50);
  if (o.ok) o.detail = "delta_P^2, RUTH D^2, mixed complex, nonlinear d^2, round trips and transport on every builtin";
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Outcome criterion9(const std::string& cli, const std::string& dir) {
  Outcome o;
  std::vector<std::string> invocations{
      "verify all --builtin semidirect:sl2 --samples 20 --seed 7",
      "cyclic --builtin weyl:1 --max-weight 8 --u-cap 3 --out csv",
      "center --builtin lie:sl2 --filtration-cap 2",
  };
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    std::string out[2];
    for (int r = 0; r < 2; ++r) {
      std::string path = dir + "/acceptance_" + std::to_string(i) + "_" + std::to_string(r) + ".txt";
      std::string cmd = "\"" + cli + "\" " + invocations[i] + " -o \"" + path + "\"";
      if (std::system(cmd.c_str()) != 0) o.fail("'" + invocations[i] + "' did not exit 0");
      out[r] = slurp(path);
    }
    if (out[0].empty() || out[0] != out[1]) o.fail("'" + invocations[i] + "' produced different reports");
  }
  if (o.ok) o.detail = std::to_string(invocations.size()) + " invocations byte-identical across two runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <rinehart CLI> <scratch directory>\n";
    return 2;
  }
  std::vector<std::function<Outcome()>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8,
      [&] { return criterion9(argv[1], argv[2]); }};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t = Clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.ok;
    std::printf("criterion %zu: %s (%.1f s) %s\n", i + 1, o.ok ? "PASS" : "FAIL", since(t), o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
