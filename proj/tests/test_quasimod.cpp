#include <doctest.h>

#include <random>

#include "rinehart/quasimod.hpp"
#include "test_util.hpp"

using namespace rinehart;

namespace {

std::shared_ptr<const Enveloping> env_of(const Algebra& a) {
  return std::make_shared<const Enveloping>(a.lr, a.connection);
}

Monomial pow_x(std::size_t i, int k) {
  Monomial m;
  m[i] = k;
  return m;
}

// Random cochain of the given arity, values fixed per monomial tuple.
TableCochain random_cochain(std::shared_ptr<const Enveloping> U, int arity, int cap,
                            std::uint64_t seed) {
  return TableCochain::generated(U, arity, cap, [U, seed](const std::vector<Monomial>& key) {
    std::vector<std::uint64_t> words{seed, key.size()};
    for (const auto& m : key)
      for (std::size_t i = 0; i < U->lr().n(); ++i) words.push_back(static_cast<std::uint64_t>(m[i]));
    std::seed_seq ss(words.begin(), words.end());
    std::mt19937_64 rng(ss);
    return testutil::random_uea(rng, *U, 1, 1, 2);
  });
}

}  // namespace

TEST_CASE("adjoint instance on the Weyl algebra") {
  Algebra a = builtin("weyl:1");
  PoissonAlgebra pa(a.lr);
  const auto& lr = a.lr;
  std::size_t N = pa.nvars();
  Multivector dx(N, 1);
  dx.add(1, Polynomial::constant(N, 1));
  Multivector xi(N, 0);
  xi.add(0, pa.coordinate(1));

  CHECK(adjoint_homotopy(pa, lr.x(0), lr.e(0), dx) == xi);

  LElement xe = lr.e(0).scaled(lr.x(0));
  CHECK(adjoint_action(pa, xe, dx) == dx * Rational(-1));

  // L_{xe} = x L_e + h d + d h on dx, with d = -delta.
  auto d = [&](const Multivector& m) { return adjoint_delta(pa, m) * Rational(-1); };
  Multivector rhs = adjoint_action(pa, lr.e(0), dx).scaled(pa.coordinate(0)) +
                    adjoint_homotopy(pa, lr.x(0), lr.e(0), d(dx)) +
                    d(adjoint_homotopy(pa, lr.x(0), lr.e(0), dx));
  CHECK(adjoint_action(pa, xe, dx) == rhs);
}

TEST_CASE("adjoint homotopy vanishes for a Lie algebra") {
  Algebra a = builtin("lie:sl2");
  PoissonAlgebra pa(a.lr);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Multivector m(pa.nvars(), 0);
    m.add(0, testutil::random_poly(rng, pa.nvars(), 3));
    LElement X = testutil::random_l(rng, a.lr, 0);
    CHECK(adjoint_homotopy(pa, Polynomial::constant(0, 1), X, m).is_zero());
  }
}

TEST_CASE("Hochschild differential and action in low arity") {
  Algebra a = builtin("weyl:1");
  auto U = env_of(a);
  const auto& lr = a.lr;
  std::mt19937_64 rng(3);
  UEAElement u = testutil::random_uea(rng, *U, 2, 2);
  auto phi0 = TableCochain::constant(U, u);
  Polynomial r = lr.x(0) * lr.x(0) + lr.x(0);
  CHECK(hochschild_b(phi0)({r}) == U->mul(U->scalar(r), u) - U->mul(u, U->scalar(r)));

  auto phi = random_cochain(U, 1, 6, 42);
  // (L_e phi)(x) = [e, phi(x)] - phi(e(x)) and e(x) = 1.
  auto one = Polynomial::constant(1, 1);
  CHECK(hochschild_action(lr.e(0), phi)({lr.x(0)}) ==
        U->commutator(U->gen(0), phi({lr.x(0)})) - phi({one}));

  // At arity one the homotopy is phi(r) X.
  auto h = hochschild_homotopy(lr.x(0), lr.e(0), phi);
  CHECK(h.arity() == 0);
  CHECK(h({}) == U->mul(phi({lr.x(0)}), U->gen(0)));
}

TEST_CASE("cup product with a derivation") {
  Algebra a = builtin("weyl:1");
  auto U = env_of(a);
  auto D = PolyDerivation::partial(1, 0);
  auto c = cup_derivation(D, TableCochain::constant(U, U->one()));
  Polynomial x = a.lr.x(0);
  CHECK(c({x * x}) == U->scalar(x * Rational(2)));

  for (std::string name : {"weyl:1", "arrangement:3", "semidirect:sl2"}) {
    Algebra b = builtin(name);
    auto V = env_of(b);
    std::mt19937_64 rng(17);
    std::size_t n = b.lr.n();
    for (int arity = 0; arity <= 1; ++arity) {
      auto E = testutil::random_der(rng, n, 1);
      auto phi = random_cochain(V, arity, 8, rng());
      auto lhs = hochschild_b(cup_derivation(E, phi));
      auto rhs = cup_derivation(E, hochschild_b(phi)) * Rational(-1);
      CHECK_MESSAGE(compare_cochains(lhs, rhs, 2).empty(), name, " arity ", arity);
    }
    // Iterated cups of derivations with the unit are cocycles.
    auto one = TableCochain::constant(V, V->one());
    auto E1 = testutil::random_der(rng, n, 1), E2 = testutil::random_der(rng, n, 1);
    auto hkr = cup_derivation(E1, cup_derivation(E2, one));
    CHECK(compare_cochains(hochschild_b(hkr), TableCochain::zero(V, 3), 2).empty());
  }
}

TEST_CASE("iterated cups of coordinate fields evaluate as wedge products") {
  Algebra a = builtin("arrangement:3");
  auto U = env_of(a);
  auto one = TableCochain::constant(U, U->one());
  auto dx = PolyDerivation::partial(2, 0), dy = PolyDerivation::partial(2, 1);
  auto w = cup_derivation(dx, cup_derivation(dy, one)) - cup_derivation(dy, cup_derivation(dx, one));
  Polynomial x = a.lr.x(0), y = a.lr.x(1);
  CHECK(w({x, y}) == U->one());
  CHECK(w({y, x}) == U->one() * Rational(-1));
  CHECK(w({x * y, y}) == U->scalar(y));
  CHECK(compare_cochains(hochschild_b(w), TableCochain::zero(U, 3), 2).empty());
}

TEST_CASE("base tables report reads beyond their cap") {
  Algebra a = builtin("weyl:1");
  auto U = env_of(a);
  auto t = TableCochain::from_table(U, 1, 1, {{{pow_x(0, 1)}, U->one()}});
  Polynomial x = a.lr.x(0);
  CHECK(t({x}) == U->one());
  CHECK_THROWS_AS(t({x * x}), CapError);
  // Composite operators propagate the error instead of reading zero.
  CHECK_THROWS_AS(hochschild_b(t)({x, x}), CapError);
}

TEST_CASE("quasi-module laws hold for both instances") {
  for (std::string name : {"weyl:1", "lie:sl2", "semidirect:sl2", "arrangement:4"}) {
    Algebra a = builtin(name);
    PoissonAlgebra pa(a.lr);
    QuasiCheckOptions opt;
    opt.trials = 100;
    opt.seed = 7;
    opt.max_degree = 3;
    auto adj = quasi_axiom_check(adjoint_instance(pa), opt);
    CHECK_MESSAGE(adj.ok, name, " adjoint: ", adj.failure);

    opt.max_degree = 2;
    HochschildOptions ho;
    ho.cap = 1 + 3 * opt.max_degree + 4;
    auto hh = quasi_axiom_check(hochschild_instance(a, ho), opt);
    CHECK_MESSAGE(hh.ok, name, " hochschild: ", hh.failure);
  }
}

TEST_CASE("dropping the homotopy is detected with a generator witness") {
  Algebra a = builtin("weyl:1");
  PoissonAlgebra pa(a.lr);
  QuasiCheckOptions opt;
  opt.trials = 20;
  auto adj = quasi_axiom_check(with_zero_homotopy(adjoint_instance(pa)), opt);
  CHECK_FALSE(adj.ok);
  CHECK(adj.failure.find("r = x") != std::string::npos);
  HochschildOptions ho;
  ho.cap = 14;
  auto hh = quasi_axiom_check(with_zero_homotopy(hochschild_instance(a, ho)), opt);
  CHECK_FALSE(hh.ok);
  CHECK(hh.failure.find("r = x") != std::string::npos);

  // Der(R) = 0 for a Lie algebra, so there is nothing to detect.
  PoissonAlgebra sl2(builtin("lie:sl2").lr);
  CHECK(quasi_axiom_check(with_zero_homotopy(adjoint_instance(sl2)), opt).ok);
}

TEST_CASE("a law check that outruns its tables fails loudly") {
  Algebra a = builtin("weyl:1");
  HochschildOptions ho;
  ho.cap = 1;
  QuasiCheckOptions opt;
  opt.trials = 5;
  opt.max_degree = 3;
  auto rep = quasi_axiom_check(hochschild_instance(a, ho), opt);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failure.find("cap") != std::string::npos);
}
