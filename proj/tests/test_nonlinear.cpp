#include <doctest.h>

#include <algorithm>
#include <random>

#include "rinehart/quasimod.hpp"
#include "test_util.hpp"

using namespace rinehart;

namespace {

Multivector random_mv(std::mt19937_64& rng, std::size_t N, int p, int terms = 2) {
  Multivector D(N, p);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::size_t> v(N);
    for (std::size_t i = 0; i < N; ++i) v[i] = i;
    std::shuffle(v.begin(), v.end(), rng);
    v.resize(static_cast<std::size_t>(p));
    LegSet s = 0;
    for (auto u : v) s |= LegSet{1} << u;
    D.add(s, testutil::random_poly(rng, N, 2, 2));
  }
  return D;
}

// Element of Sym_R(L) with only d/dx legs, as the adjoint instance uses.
Multivector random_x_leg(std::mt19937_64& rng, const PoissonAlgebra& pa, std::size_t n, int p) {
  Multivector w(pa.nvars(), p);
  LegSet s = 0;
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  std::shuffle(v.begin(), v.end(), rng);
  for (int u = 0; u < p; ++u) s |= LegSet{1} << v[static_cast<std::size_t>(u)];
  w.add(s, testutil::random_poly(rng, pa.nvars(), 2, 3) + Polynomial::constant(pa.nvars(), 1));
  return w;
}

LinearCochain random_linear(std::mt19937_64& rng, const PoissonAlgebra& pa, const LieRinehart& lr,
                            int k) {
  LinearCochain c;
  c.degree = k;
  c.c.resize(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) {
    if (k - i > static_cast<int>(lr.d()) || i > static_cast<int>(lr.n())) continue;
    std::vector<std::size_t> K;
    for (int t = 0; t < k - i; ++t) K.push_back(static_cast<std::size_t>(t));
    c.c[i][K] = random_x_leg(rng, pa, lr.n(), i);
  }
  return c;
}

Connection random_connection(std::mt19937_64& rng, const LieRinehart& lr) {
  Connection conn = Connection::trivial(lr);
  for (auto& row : conn.gamma)
    for (auto& X : row) X = testutil::random_l(rng, lr, 1);
  return conn;
}

std::vector<std::size_t> dims_of(const std::vector<TableEntry>& t) {
  std::vector<std::size_t> out;
  for (const auto& e : t) out.push_back(e.dimension);
  return out;
}

}  // namespace

TEST_CASE("multivectors transport to nonlinear cochains") {
  std::mt19937_64 rng(5);
  for (std::string name : {"weyl:1", "lie:sl2", "semidirect:sl2", "weyl:2"}) {
    Algebra a = builtin(name);
    PoissonAlgebra pa(a.lr);
    auto inst = adjoint_instance(pa);
    int cap = nl_input_cap(a.lr, 1);
    for (int p = 0; p <= 2; ++p) {
      Multivector D = random_mv(rng, pa.nvars(), p);
      auto c = adjoint_from_multivector(pa, D, cap);
      INFO(name, " degree ", p);
      auto m = nl_membership(inst, c);
      CHECK_MESSAGE(m.ok, m.failure);
      CHECK(adjoint_to_multivector(pa, c) == D);

      auto dc = nl_ce_apply(inst, c, 1);
      auto image = nl_membership(inst, dc);
      CHECK_MESSAGE(image.ok, image.failure);
      auto expected = adjoint_from_multivector(pa, delta_P(pa, D) * Rational(-1), 1);
      CHECK(nl_compare(inst, dc, expected).empty());
    }
  }
}

TEST_CASE("the nonlinear differential squares to zero") {
  std::mt19937_64 rng(8);
  for (std::string name : {"weyl:1", "semidirect:sl2"}) {
    Algebra a = builtin(name);
    PoissonAlgebra pa(a.lr);
    auto inst = adjoint_instance(pa);
    for (int p = 0; p <= 1; ++p) {
      Multivector D = random_mv(rng, pa.nvars(), p);
      while (delta_P(pa, D).is_zero()) D = random_mv(rng, pa.nvars(), p);
      auto c = adjoint_from_multivector(pa, D, nl_input_cap(a.lr, nl_input_cap(a.lr, 0)));
      auto dc = nl_ce_apply(inst, c, nl_input_cap(a.lr, 0));
      bool nonzero = std::any_of(dc.phi.begin(), dc.phi.end(), [](const auto& m) { return !m.empty(); });
      CHECK(nonzero);
      auto ddc = nl_ce_apply(inst, dc, 0);
      for (const auto& part : ddc.phi) CHECK(part.empty());
    }
  }
}

TEST_CASE("nonlinear CE cohomology agrees with Poisson cohomology") {
  for (std::string name : {"weyl:1", "lie:sl2"}) {
    PoissonAlgebra pa(builtin(name).lr);
    auto expected = poisson_cohomology(pa, 4, 3);
    auto got = nonlinear_ce_cohomology(pa, 4, 3);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].complex == "nonlinear-ce");
      CHECK(got[i].weight == expected[i].weight);
      CHECK(got[i].degree == expected[i].degree);
      CHECK_MESSAGE(got[i].dimension == expected[i].dimension, name, " weight ", got[i].weight,
                    " degree ", got[i].degree);
    }
  }
}

TEST_CASE("linear cochains embed into nonlinear cochains") {
  std::mt19937_64 rng(7);
  for (std::string name : {"weyl:1", "semidirect:sl2", "weyl:2", "arrangement:3"}) {
    Algebra a = builtin(name);
    PoissonAlgebra pa(a.lr);
    auto inst = adjoint_instance(pa);
    for (int flat = 1; flat >= 0; --flat) {
      Connection conn = flat ? Connection::trivial(a.lr) : random_connection(rng, a.lr);
      for (int k = 1; k <= 2; ++k) {
        INFO(name, flat ? " trivial" : " random", " connection, degree ", k);
        auto c = random_linear(rng, pa, a.lr, k);
        auto phi = linear_to_nonlinear(pa, conn, c, 2);
        auto m = nl_membership(inst, phi);
        CHECK_MESSAGE(m.ok, m.failure);
        CHECK(nonlinear_to_linear(pa, conn, phi).c == c.c);
      }
    }
  }
}

TEST_CASE("the differential preserves the image of linear cochains") {
  std::mt19937_64 rng(12);
  for (std::string name : {"weyl:1", "weyl:2"}) {
    Algebra a = builtin(name);
    PoissonAlgebra pa(a.lr);
    auto inst = adjoint_instance(pa);
    Connection conn = random_connection(rng, a.lr);
    auto c = random_linear(rng, pa, a.lr, 1);
    auto phi = linear_to_nonlinear(pa, conn, c, nl_input_cap(a.lr, 1));
    auto dphi = nl_ce_apply(inst, phi, 1);
    auto again = linear_to_nonlinear(pa, conn, nonlinear_to_linear(pa, conn, dphi), 1);
    CHECK_MESSAGE(nl_compare(inst, dphi, again).empty(), name);
  }
}

TEST_CASE("linear to nonlinear is the identity for a Lie algebra and sends zero to zero") {
  std::mt19937_64 rng(2);
  Algebra a = builtin("lie:sl2");
  PoissonAlgebra pa(a.lr);
  auto inst = adjoint_instance(pa);
  auto conn = Connection::trivial(a.lr);
  auto c = random_linear(rng, pa, a.lr, 2);
  auto phi = linear_to_nonlinear(pa, conn, c, 0);
  for (const auto& [key, v] : c.c[0]) {
    std::vector<LElement> args;
    for (auto k : key) args.push_back(a.lr.e(k));
    CHECK(nl_value(inst, phi, 0, args) == v);
  }

  Algebra w = builtin("weyl:2");
  PoissonAlgebra pw(w.lr);
  LinearCochain zero;
  zero.degree = 2;
  zero.c.resize(3);
  auto z = linear_to_nonlinear(pw, random_connection(rng, w.lr), zero, 2);
  for (const auto& part : z.phi) CHECK(part.empty());
}

TEST_CASE("Chevalley-Eilenberg cohomology of sl2") {
  LieRinehart sl2 = builtin("lie:sl2").lr;
  CHECK(dims_of(ce_cohomology(sl2, ce_trivial_module(sl2), 3)) ==
        std::vector<std::size_t>{1, 0, 0, 1});

  auto sym = ce_cohomology(sl2, ce_sym_adjoint_module(sl2, 4), 0);
  CHECK(dims_of(sym) == std::vector<std::size_t>{1, 0, 1, 0, 1});
  for (const auto& e : sym) CHECK(e.complex == "ce");

  // Whitehead: H^1 = H^2 = 0 for every Sym^q piece.
  for (const auto& e : ce_cohomology(sl2, ce_sym_adjoint_module(sl2, 4), 2))
    if (e.degree >= 1) CHECK(e.dimension == 0);
}

TEST_CASE("Poisson cohomology of sl2* is CE cohomology with Sym coefficients") {
  LieRinehart sl2 = builtin("lie:sl2").lr;
  PoissonAlgebra pa(sl2);
  auto ce = ce_cohomology(sl2, ce_sym_adjoint_module(sl2, 6), 3);
  for (const auto& e : poisson_cohomology(pa, 3, 3)) {
    int q = e.weight + e.degree;
    auto it = std::find_if(ce.begin(), ce.end(), [&](const TableEntry& f) {
      return f.weight == q && f.degree == e.degree;
    });
    REQUIRE(it != ce.end());
    CHECK_MESSAGE(it->dimension == e.dimension, "weight ", e.weight, " degree ", e.degree);
  }
}

TEST_CASE("abelian CE cohomology is exterior powers tensor the module") {
  LieRinehart ab = builtin("lie:abelian:3").lr;
  auto t = ce_cohomology(ab, ce_sym_adjoint_module(ab, 2), 3);
  std::size_t sym[] = {1, 3, 6}, ext[] = {1, 3, 3, 1};
  for (const auto& e : t) CHECK(e.dimension == sym[e.weight] * ext[e.degree]);
}

TEST_CASE("CE cohomology rejects bad input") {
  LieRinehart sl2 = builtin("lie:sl2").lr;
  std::vector<std::vector<std::vector<Rational>>> action(3, {{Rational(1)}});
  CHECK_THROWS_AS(ce_custom_module(sl2, action), std::invalid_argument);
  CHECK_THROWS_AS(ce_trivial_module(builtin("weyl:1").lr), std::invalid_argument);

  // The defining representation passes.
  using M = std::vector<std::vector<Rational>>;
  M e{{0, 1}, {0, 0}}, f{{0, 0}, {1, 0}}, h{{1, 0}, {0, -1}};
  auto t = ce_cohomology(sl2, ce_custom_module(sl2, {e, f, h}), 3);
  CHECK(dims_of(t) == std::vector<std::size_t>{0, 0, 0, 0});
}
