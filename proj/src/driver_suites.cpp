// The verify suites. Every suite is seeded from RunOptions::seed and a fixed
// per-suite salt.
#include <algorithm>
#include <random>

#include "rinehart/driver.hpp"
#include "rinehart/pbw_ext.hpp"
#include "rinehart/quasimod.hpp"
#include "sampling.hpp"

namespace rinehart {

namespace {

std::mt19937_64 seeded(const RunOptions& opt, std::uint64_t salt) {
  std::seed_seq ss{opt.seed, salt};
  return std::mt19937_64(ss);
}

template <class M>
M random_legs(std::mt19937_64& rng, std::size_t N, int p, int terms = 2) {
  M out(N, p);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::size_t> v(N);
    for (std::size_t i = 0; i < N; ++i) v[i] = i;
    std::shuffle(v.begin(), v.end(), rng);
    LegSet s = 0;
    for (int u = 0; u < p; ++u) s |= LegSet{1} << v[static_cast<std::size_t>(u)];
    out.add(s, sampling::poly(rng, N, 2));
  }
  return out;
}

struct Checker {
  CheckReport rep;
  void name(const std::string& n) { rep.checks.push_back(n); }
  bool expect(bool ok, const std::string& what) {
    if (!ok && rep.ok) {
      rep.ok = false;
      rep.failure = what;
    }
    return ok;
  }
};

PbwCheckOptions pbw_options(const RunOptions& opt) {
  PbwCheckOptions p;
  p.samples = opt.samples;
  p.seed = opt.seed;
  return p;
}

CheckReport merge(std::vector<CheckReport> parts) {
  CheckReport out;
  for (auto& r : parts) {
    out.checks.insert(out.checks.end(), r.checks.begin(), r.checks.end());
    if (!r.ok && out.ok) {
      out.ok = false;
      out.failure = r.failure;
    }
  }
  return out;
}

CheckReport quasi_suite(const Algebra& a, const RunOptions& opt) {
  PoissonAlgebra pa(a.lr);
  QuasiCheckOptions q;
  q.trials = opt.samples;
  q.seed = opt.seed;
  auto adj = quasi_axiom_check(adjoint_instance(pa), q);
  q.max_degree = 2;
  HochschildOptions h;
  h.cap = 11;
  auto hoch = quasi_axiom_check(hochschild_instance(a, h), q);
  for (auto& c : adj.checks) c = "adjoint:" + c;
  for (auto& c : hoch.checks) c = "hochschild:" + c;
  if (!adj.ok) adj.failure = "adjoint: " + adj.failure;
  if (!hoch.ok) hoch.failure = "hochschild: " + hoch.failure;
  return merge({adj, hoch});
}

CheckReport nl_suite(const Algebra& a, const RunOptions& opt) {
  Checker c;
  c.name("transport-membership");
  c.name("transport-differential");
  c.name("nl-differential-squares-to-zero");
  c.name("linear-image-membership");
  c.name("linear-round-trip");
  PoissonAlgebra pa(a.lr);
  auto inst = adjoint_instance(pa);
  auto rng = seeded(opt, 41);
  std::size_t rounds = std::max<std::size_t>(1, opt.samples / 10);
  for (std::size_t t = 0; t < rounds && c.rep.ok; ++t) {
    int p = static_cast<int>(t % 3);
    if (p > static_cast<int>(pa.nvars())) continue;
    auto D = random_legs<Multivector>(rng, pa.nvars(), p);
    int cap = nl_input_cap(a.lr, nl_input_cap(a.lr, 0));
    auto T = adjoint_from_multivector(pa, D, cap);
    auto m = nl_membership(inst, T);
    c.expect(m.ok, "transported " + to_string(pa, D) + ": " + m.failure);
    auto dT = nl_ce_apply(inst, T, nl_input_cap(a.lr, 0));
    auto expected = adjoint_from_multivector(pa, delta_P(pa, D) * Rational(-1), nl_input_cap(a.lr, 0));
    std::string diff = nl_compare(inst, dT, expected);
    c.expect(diff.empty(), "differential of " + to_string(pa, D) + " is not -delta_P: " + diff);
    auto ddT = nl_ce_apply(inst, dT, 0);
    bool zero = std::all_of(ddT.phi.begin(), ddT.phi.end(), [](const auto& part) { return part.empty(); });
    c.expect(zero, "d^2 != 0 on the transport of " + to_string(pa, D));

    LinearCochain lin;
    lin.degree = 1 + static_cast<int>(t % 2);
    lin.c.resize(static_cast<std::size_t>(lin.degree) + 1);
    for (int i = 0; i <= lin.degree; ++i) {
      int k = lin.degree - i;
      if (k > static_cast<int>(a.lr.d()) || i > static_cast<int>(a.lr.n())) continue;
      std::vector<std::size_t> K;
      for (int u = 0; u < k; ++u) K.push_back(static_cast<std::size_t>(u));
      LegSet S = 0;
      for (int u = 0; u < i; ++u) S |= LegSet{1} << static_cast<std::size_t>(u);
      Multivector w(pa.nvars(), i);
      w.add(S, sampling::poly(rng, pa.nvars(), 2) + Polynomial::constant(pa.nvars(), 1));
      if (!w.is_zero()) lin.c[static_cast<std::size_t>(i)][K] = w;
    }
    auto phi = linear_to_nonlinear(pa, a.connection, lin, 2);
    auto lm = nl_membership(inst, phi);
    c.expect(lm.ok, "linear image: " + lm.failure);
    c.expect(nonlinear_to_linear(pa, a.connection, phi).c == lin.c, "linear round trip differs");
  }
  return c.rep;
}

CheckReport structural_suite(const Algebra& a, const RunOptions& opt) {
  Checker c;
  c.name("delta_P-squares-to-zero");
  c.name("ruth-squares-to-zero");
  c.name("mixed-complex");
  c.name("nonlinear-round-trip");
  PoissonAlgebra pa(a.lr);
  std::size_t N = pa.nvars();
  auto rng = seeded(opt, 42);
  for (std::size_t t = 0; t < opt.samples && c.rep.ok; ++t) {
    int p = static_cast<int>(t % (N + 1));
    auto D = random_legs<Multivector>(rng, N, p);
    c.expect(delta_P(pa, delta_P(pa, D)).is_zero(), "delta_P^2 != 0 on " + to_string(pa, D));
    auto w = random_legs<KahlerForm>(rng, N, p);
    c.expect(kahler_d(kahler_d(w)).is_zero(), "d^2 != 0 on " + to_string(pa, w));
    c.expect(L_P(pa, L_P(pa, w)).is_zero(), "L_P^2 != 0 on " + to_string(pa, w));
    c.expect((kahler_d(L_P(pa, w)) + L_P(pa, kahler_d(w))).is_zero(),
             "d L_P + L_P d != 0 on " + to_string(pa, w));
    if (t % 5 == 0 && p <= 2) {
      auto T = mv_to_nonlinear(pa, D, 1);
      c.expect(nonlinear_to_mv(pa, T) == D, "nonlinear round trip differs on " + to_string(pa, D));
    }
  }
  if (c.rep.ok) {
    auto r = ruth_check(a.lr, a.connection, opt.max_degree.value_or(2));
    c.expect(r.ok, "ruth: " + r.failure);
  }
  return c.rep;
}

SuiteResult euler_suite(const Algebra& a, const RunOptions& opt) {
  SuiteResult s{"euler", {}, {}};
  if (!a.euler) {
    s.report.checks = {"euler-contraction"};
    s.note = "no Euler element declared; nothing to check";
    return s;
  }
  PoissonAlgebra pa(a.lr);
  auto e = euler_contraction_check(pa, *a.euler, std::min(opt.max_weight, 4), opt.max_degree.value_or(3));
  s.report = e.report;
  s.note = std::to_string(e.checked) + " basis multivectors checked";
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "ruth",  "structural", "quasi", "nl",
                                              "euler",  "eta",   "pbw",        "tower", "phi"};
  return names;
}

SuiteResult run_suite(const Algebra& a, const std::string& suite, const RunOptions& opt) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw UsageError("unknown suite '" + suite + "'");
  if (suite == "axioms") return {suite, check_axioms(a.lr), {}};
  if (suite == "ruth") return {suite, ruth_check(a.lr, a.connection, opt.max_degree.value_or(2)), {}};
  if (suite == "structural") return {suite, structural_suite(a, opt), {}};
  if (suite == "quasi") return {suite, quasi_suite(a, opt), {}};
  if (suite == "nl") return {suite, nl_suite(a, opt), {}};
  if (suite == "euler") return euler_suite(a, opt);
  PbwExtension ext(a.lr, a.connection);
  if (suite == "eta") return {suite, merge({verify_eta(ext, pbw_options(opt)), verify_F_identities(ext, pbw_options(opt))}), {}};
  if (suite == "pbw") return {suite, verify_pbw_chain(ext, pbw_options(opt)), {}};
  if (suite == "phi") {
    PbwCheckOptions p = pbw_options(opt);
    p.samples = std::max<std::size_t>(1, opt.samples / 8);
    p.max_q = 1;
    p.probe = 1;
    SuiteResult s{suite, verify_phi(ext, p), {}};
    std::string w = phi_nonmember_witness(ext, p);
    s.note = w.empty() ? "no non-member image found among small inputs" : w;
    return s;
  }
  return {suite, verify_identity_tower(ext, pbw_options(opt)), {}};
}

}  // namespace rinehart
