#include <doctest.h>

#include <map>
#include <random>

#include "rinehart/algebra_io.hpp"
#include "rinehart/poisson.hpp"
#include "test_util.hpp"

using namespace rinehart;

namespace {

PoissonAlgebra pa_of(const std::string& name) { return PoissonAlgebra(builtin(name).lr); }

Multivector random_mv(std::mt19937_64& rng, std::size_t N, int degree, int max_deg = 2) {
  Multivector D(N, degree);
  std::uniform_int_distribution<LegSet> pick(0, (LegSet{1} << N) - 1);
  for (int t = 0; t < 3; ++t) {
    LegSet s;
    do s = pick(rng);
    while (leg_count(s) != degree);
    D.add(s, testutil::random_poly(rng, N, max_deg, 2));
  }
  return D;
}

KahlerForm random_form(std::mt19937_64& rng, std::size_t N, int degree, int max_deg = 2) {
  KahlerForm w(N, degree);
  Multivector D = random_mv(rng, N, degree, max_deg);
  for (const auto& [s, c] : D.terms()) w.add(s, c);
  return w;
}

// Totals of a table by degree.
std::map<int, std::size_t> totals(const std::vector<TableEntry>& t) {
  std::map<int, std::size_t> out;
  for (const auto& e : t) out[e.degree] += e.dimension;
  return out;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("Poisson bracket") {
  auto W = pa_of("weyl:1");
  auto x = W.coordinate(0), xi = W.coordinate(1);
  CHECK(W.bracket(xi, x) == Polynomial::constant(2, 1));
  CHECK(W.bracket(xi * xi, x) == Rational(2) * xi);

  auto S = pa_of("lie:sl2");
  CHECK(S.bracket(S.coordinate(0), S.coordinate(1)) == S.coordinate(2));

  auto A = pa_of("arrangement:4");
  auto E = A.coordinate(2), D = A.coordinate(3);
  CHECK(A.bracket(D, E) == Rational(-2) * D);

  std::mt19937_64 rng(71);
  for (const auto& name : builtin_names()) {
    auto pa = pa_of(name);
    std::size_t N = pa.nvars();
    for (int t = 0; t < 10; ++t) {
      auto a = testutil::random_poly(rng, N, 2), b = testutil::random_poly(rng, N, 2),
           c = testutil::random_poly(rng, N, 2);
      CHECK(pa.bracket(a, b) == -pa.bracket(b, a));
      CHECK(pa.bracket(a, b * c) == pa.bracket(a, b) * c + b * pa.bracket(a, c));
      CHECK((pa.bracket(a, pa.bracket(b, c)) + pa.bracket(b, pa.bracket(c, a)) +
             pa.bracket(c, pa.bracket(a, b)))
                .is_zero());
    }
  }
}

TEST_CASE("Poisson differential") {
  auto W = pa_of("weyl:1");
  Multivector x(2, 0);
  x.add(0, W.coordinate(0));
  auto dx = delta_P(W, x);
  CHECK(dx.coefficient(0b10) == Polynomial::constant(2, -1));
  CHECK(dx.coefficient(0b01).is_zero());
  CHECK(evaluate(dx, {W.coordinate(1)}) == Polynomial::constant(2, -1));

  Multivector one(2, 0);
  one.add(0, Polynomial::constant(2, 1));
  CHECK(delta_P(W, one).is_zero());

  auto Ab = pa_of("lie:abelian:2");
  std::mt19937_64 rng(73);
  for (int p = 0; p <= 2; ++p) CHECK(delta_P(Ab, random_mv(rng, 2, p)).is_zero());

  // delta_P(f) = -{., f}: derivations of Sym evaluated on coordinates
  auto S = pa_of("lie:sl2");
  auto f = S.coordinate(0) * S.coordinate(1);
  Multivector F(3, 0);
  F.add(0, f);
  for (std::size_t u = 0; u < 3; ++u)
    CHECK(evaluate(delta_P(S, F), {S.coordinate(u)}) == -S.bracket(S.coordinate(u), f));

  for (const auto& name : builtin_names()) {
    auto pa = pa_of(name);
    int N = static_cast<int>(pa.nvars());
    for (int p = 0; p < N; ++p)
      for (int t = 0; t < 3; ++t) {
        auto D = random_mv(rng, pa.nvars(), p);
        CHECK_MESSAGE(delta_P(pa, delta_P(pa, D)).is_zero(), name << " degree " << p);
      }
  }
}

TEST_CASE("nonlinear cochains") {
  auto W = pa_of("weyl:1");
  Multivector dxi(2, 1);
  dxi.add(0b10, Polynomial::constant(2, 1));
  auto T = mv_to_nonlinear(W, dxi, 1);
  CHECK(T.value(W, 0, {{Monomial{}, 0}}, {}) == Polynomial::constant(2, 1));
  CHECK(T.value(W, 1, {}, {0}).is_zero());
  CHECK(nonlinear_to_mv(W, T) == dxi);

  std::mt19937_64 rng(79);
  for (const char* name : {"weyl:1", "arrangement:3", "semidirect:sl2", "lie:sl2"}) {
    auto pa = pa_of(name);
    auto D = random_mv(rng, pa.nvars(), 2);
    auto T2 = mv_to_nonlinear(pa, D, 1);
    CHECK_MESSAGE(nonlinear_to_mv(pa, T2) == D, name);
    if (pa.lr().n() == 0) continue;
    // perturb a value on a non-generator argument
    auto bad = T2;
    std::vector<LArg> args{{Monomial::unit(0), 0}, {Monomial{}, pa.lr().d() - 1}};
    std::sort(args.begin(), args.end());
    auto& slot = bad.phi[0].try_emplace({args, {}}, Polynomial(pa.nvars())).first->second;
    slot += Polynomial::constant(pa.nvars(), 1);
    CHECK_THROWS_AS(nonlinear_to_mv(pa, bad), NonlinearConstraintError);
  }
}

TEST_CASE("Poisson cohomology") {
  auto W = pa_of("weyl:1");
  auto tw = poisson_cohomology(W, 8, 2);
  for (const auto& e : tw)
    if (e.dimension) CHECK_MESSAGE((e.degree == 0 && e.weight == 0 && e.dimension == 1),
                                   e.degree << "," << e.weight);
  CHECK(totals(tw)[0] == 1);

  auto Ab = pa_of("lie:abelian:2");
  for (const auto& e : poisson_cohomology(Ab, 4, 2)) {
    int q = e.weight + e.degree;  // Sym-degree with unit weights
    std::size_t expect = q < 0 ? 0 : binom(2, e.degree) * static_cast<std::size_t>(q + 1);
    CHECK(e.dimension == expect);
  }

  // sl2: H^0 against a direct kernel of the coadjoint action per degree
  auto S = pa_of("lie:sl2");
  std::map<int, std::size_t> h0;
  for (const auto& e : poisson_cohomology(S, 6, 0)) h0[e.weight] = e.dimension;
  for (int q = 0; q <= 6; ++q) {
    auto monos = monomials_of_weight(3, {1, 1, 1}, q);
    std::map<Monomial, std::size_t> rows;
    SparseMatrixQ M(0, monos.size());
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(monos.size());
    for (std::size_t j = 0; j < monos.size(); ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        Polynomial b = S.bracket(S.coordinate(k), Polynomial::term(3, monos[j], 1));
        for (const auto& [m, c] : b.terms()) {
          Monomial key = m * Monomial::unit(10 + k);  // tag by generator
          cols[j].emplace_back(rows.try_emplace(key, rows.size()).first->second, c);
        }
      }
    SparseMatrixQ K(rows.size(), monos.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, c] : cols[j]) K.add(r, j, c);
    std::size_t oracle = kernel_and_rank(K).basis.size();
    CHECK(h0[q] == oracle);
    CHECK(h0[q] == (q % 2 == 0 ? 1u : 0u));
  }

  auto A = pa_of("arrangement:3");
  CHECK_THROWS_AS(poisson_cohomology(A, 2, 1), WeightError);
}

TEST_CASE("Kahler forms and L_P") {
  auto W = pa_of("weyl:1");
  auto x = W.coordinate(0), xi = W.coordinate(1);
  auto d = kahler_d(x * xi);
  CHECK(d.coefficient(0b01) == xi);
  CHECK(d.coefficient(0b10) == x);

  KahlerForm top(2, 2);
  top.add(0b11, Polynomial::constant(2, 1));
  CHECK(iota_P(W, top).coefficient(0) == Polynomial::constant(2, -1));

  std::mt19937_64 rng(83);
  for (const auto& name : builtin_names()) {
    auto pa = pa_of(name);
    std::size_t N = pa.nvars();
    for (int t = 0; t < 4; ++t) {
      // L_P(f dg) = {f, g}
      auto f = testutil::random_poly(rng, N, 2), g = testutil::random_poly(rng, N, 2);
      CHECK(L_P(pa, kahler_d(g).scaled(f)).coefficient(0) == pa.bracket(f, g));
      for (int m = 0; m <= static_cast<int>(N); ++m) {
        auto w = random_form(rng, N, m);
        CHECK(kahler_d(kahler_d(w)).is_zero());
        CHECK_MESSAGE(L_P(pa, L_P(pa, w)).is_zero(), name << " degree " << m);
        CHECK((kahler_d(L_P(pa, w)) + L_P(pa, kahler_d(w))).is_zero());
      }
    }
  }
}

TEST_CASE("Poisson and cyclic homology") {
  auto W = pa_of("weyl:1");
  auto hw = totals(poisson_homology(W, 8));
  CHECK(hw[0] == 0);
  CHECK(hw[1] == 0);
  CHECK(hw[2] == 1);

  auto cyc = cyclic_homology(W, 8, 3);
  auto hc = totals(cyc.entries);
  CHECK(hc[0] == 0);
  CHECK(hc[1] == 0);
  CHECK(hc[2] == 1);
  CHECK(hc[3] == 0);
  CHECK(hc[4] == 1);
  CHECK(cyc.stabilized);

  auto Ab = pa_of("lie:abelian:2");
  for (const auto& e : poisson_homology(Ab, 4)) {
    int q = e.weight - e.degree;
    std::size_t expect = q < 0 ? 0 : binom(2, e.degree) * static_cast<std::size_t>(q + 1);
    CHECK(e.dimension == expect);
  }
}

TEST_CASE("duality cap") {
  auto W = pa_of("weyl:1");
  Multivector full(2, 2);
  full.add(0b11, Polynomial::constant(2, 1));
  auto c = duality_cap(full);
  CHECK(c.degree() == 0);
  CHECK(c.coefficient(0) == Polynomial::constant(2, 1));

  Multivector f(2, 0);
  f.add(0, W.coordinate(0));
  CHECK(duality_cap(f).coefficient(0b11) == W.coordinate(0));

  for (const char* name : {"weyl:1", "lie:sl2", "semidirect:sl2", "weyl:2"}) {
    auto rep = duality_rank_check(pa_of(name), 3);
    CHECK_MESSAGE(rep.ok, name << ": " << rep.failure);
  }
}

TEST_CASE("Euler contraction") {
  for (const char* name : {"arrangement:3", "arrangement:4"}) {
    auto a = builtin(name);
    PoissonAlgebra pa(a.lr);
    auto rep = euler_contraction_check(pa, *a.euler, 4, 3);
    CHECK_MESSAGE(rep.report.ok, name << ": " << rep.report.failure);
    CHECK(rep.grading == *a.lr.weights);
    CHECK(rep.checked > 100);

    auto cas = capped_casimir_search(pa, 100, 4);
    REQUIRE(cas.size() == 1);
    CHECK(cas[0] == Polynomial::constant(pa.nvars(), 1));
  }

  auto w = builtin("weyl:1");
  PoissonAlgebra W(w.lr);
  auto rep = euler_contraction_check(W, *w.euler, 6, 3);
  CHECK_MESSAGE(rep.report.ok, rep.report.failure);
  CHECK(rep.grading == WeightVector{1, -1});

  auto bad = euler_contraction_check(W, W.coordinate(0), 6, 2);
  CHECK_FALSE(bad.report.ok);
}
