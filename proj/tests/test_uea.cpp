#include <doctest.h>

#include <random>

#include "rinehart/algebra_io.hpp"
#include "rinehart/uea.hpp"
#include "test_util.hpp"

using namespace rinehart;

namespace {

// Independent Poisson bracket on Sym_R(L): Leibniz over the pairings of
// coordinates, {xi_i, x_j} = rho(e_i)(x_j), {xi_i, xi_j} = [e_i, e_j].
Polynomial poisson_oracle(const LieRinehart& lr, const Polynomial& a, const Polynomial& b) {
  std::size_t n = lr.n(), d = lr.d(), N = n + d;
  auto pair = [&](std::size_t u, std::size_t v) {
    Polynomial r(N);
    if (u >= n && v < n) r = lr.anchor[u - n].image(v).embed(N, 0);
    if (u < n && v >= n) r = -lr.anchor[v - n].image(u).embed(N, 0);
    if (u >= n && v >= n)
      for (std::size_t k = 0; k < d; ++k)
        r += lr.structure[u - n][v - n][k].embed(N, 0) * Polynomial::variable(N, n + k);
    return r;
  };
  Polynomial r(N);
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t v = 0; v < N; ++v) {
      Polynomial p = pair(u, v);
      if (!p.is_zero()) r += a.derivative(u) * b.derivative(v) * p;
    }
  return r;
}

// Part of u of filtration exactly k, as a symbol.
Polynomial symbol_at(const Enveloping& U, const UEAElement& u, int k) {
  UEAElement top = U.zero();
  for (const auto& [a, f] : u.terms())
    if (a.degree() == k) top.add_term(a, f);
  return U.gr_symbol(top);
}

// Random Sym_R(L) element of fixed xi-degree k.
Polynomial random_sym(std::mt19937_64& rng, const LieRinehart& lr, int k, int xdeg = 1) {
  std::size_t n = lr.n(), N = n + lr.d();
  std::uniform_int_distribution<std::size_t> gen(0, lr.d() - 1);
  Polynomial r(N);
  for (int t = 0; t < 2; ++t) {
    Monomial m;
    for (int p = 0; p < k; ++p) m[n + gen(rng)] += 1;
    r += testutil::random_poly(rng, n, xdeg, 2).embed(N, 0) * Polynomial::term(N, m, 1);
  }
  return r;
}

Enveloping env(const std::string& name) {
  auto a = builtin(name);
  return Enveloping(a.lr, a.connection);
}

}  // namespace

TEST_CASE("normal ordering examples") {
  auto W = env("weyl:1");
  auto x = W.scalar(W.lr().x(0)), e = W.gen(0);
  CHECK(W.mul(e, x) == W.mul(x, e) + W.one());
  auto e2 = W.mul(e, e);
  CHECK(W.mul(e2, x) == W.mul(x, e2) + e * Rational(2));
  CHECK(W.mul(e2, x).to_string(W.lr()) == "x*e^2 + 2*e");

  auto S = env("lie:sl2");
  auto E = S.gen(0), F = S.gen(1), H = S.gen(2);
  CHECK(S.mul(E, F) == S.mul(F, E) + H);
  CHECK(S.mul(H, E) == S.mul(E, H) + E * Rational(2));
  CHECK(S.mul(F, E).to_string(S.lr()) == "e*f - h");
}

TEST_CASE("associativity, confluence and filtration") {
  std::mt19937_64 rng(41);
  for (const auto& name : builtin_names()) {
    auto U = env(name);
    for (int t = 0; t < 8; ++t) {
      auto a = testutil::random_uea(rng, U, 2), b = testutil::random_uea(rng, U, 2),
           c = testutil::random_uea(rng, U, 1);
      auto ab = U.mul(a, b);
      CHECK_MESSAGE(U.mul(ab, c) == U.mul(a, U.mul(b, c)), name);
      CHECK_MESSAGE(U.mul_right_first(a, b) == ab, name);
      if (a.is_zero() || b.is_zero()) continue;
      int k = a.filtration_degree(), l = b.filtration_degree();
      CHECK(ab.filtration_degree() <= k + l);
      CHECK(U.commutator(a, b).filtration_degree() <= k + l - 1);
      auto prod = U.gr_symbol(a) * U.gr_symbol(b);
      if (!prod.is_zero()) CHECK(U.gr_symbol(ab) == prod);
    }
  }
}

TEST_CASE("symbols") {
  auto W = env("weyl:1");
  auto x = W.scalar(W.lr().x(0)), e = W.gen(0);
  auto u = W.mul(W.mul(e, e), x);
  auto sx = Polynomial::variable(2, 0), sxi = Polynomial::variable(2, 1);
  CHECK(W.gr_symbol(u) == sx * sxi * sxi);
  CHECK(W.gr_symbol(x) == sx);

  auto S = env("lie:sl2");
  auto E = S.gen(0), F = S.gen(1), H = S.gen(2);
  auto cas = S.mul(E, F) + S.mul(F, E) + S.mul(H, H) * Rational(1, 2);
  auto xe = Polynomial::variable(3, 0), xf = Polynomial::variable(3, 1),
       xh = Polynomial::variable(3, 2);
  CHECK(S.gr_symbol(cas) == Rational(2) * xe * xf + Rational(1, 2) * xh * xh);
}

TEST_CASE("pbw map") {
  auto W = env("weyl:1");
  const auto& lr = W.lr();
  auto sx = Polynomial::variable(2, 0), sxi = Polynomial::variable(2, 1);
  auto e = W.gen(0), x = W.scalar(lr.x(0));
  CHECK(W.pbw(sxi) == e);
  CHECK(W.pbw(sx) == x);
  CHECK(W.pbw(sxi * sxi) == W.mul(e, e));
  CHECK(W.pbw(sx * sxi * sxi) == W.mul(x, W.mul(e, e)));
  CHECK(W.pbw_product({lr.e(0), lr.e(0).scaled(lr.x(0))}) == W.mul(x, W.mul(e, e)));

  // symmetrization on a Lie algebra: pbw(xi_e xi_f) = (ef + fe)/2
  auto S = env("lie:sl2");
  auto ss = Polynomial::variable(3, 0) * Polynomial::variable(3, 1);
  CHECK(S.pbw(ss) == (S.mul(S.gen(0), S.gen(1)) + S.mul(S.gen(1), S.gen(0))) * Rational(1, 2));

  std::mt19937_64 rng(43);
  for (const auto& name : builtin_names()) {
    auto U = env(name);
    for (int k = 0; k <= 3; ++k)
      for (int t = 0; t < 3; ++t) {
        auto m = random_sym(rng, U.lr(), k);
        auto p = U.pbw(m);
        CHECK(p.filtration_degree() <= k);
        if (!m.is_zero()) CHECK_MESSAGE(U.gr_symbol(p) == m, name);
      }
  }
}

TEST_CASE("pbw is R-linear for trivial connections") {
  std::mt19937_64 rng(47);
  for (const auto& name : builtin_names()) {
    auto U = env(name);
    const auto& lr = U.lr();
    for (int t = 0; t < 6; ++t) {
      std::vector<LElement> fs;
      for (int k = 0; k < 3; ++k) fs.push_back(testutil::random_l(rng, lr, 1));
      auto f = testutil::random_poly(rng, lr.n(), 2);
      auto moved = fs;
      moved[t % 3] = moved[t % 3].scaled(f);
      CHECK_MESSAGE(U.pbw_product(moved) == U.pbw_product(fs).left_scaled(f), name);
    }
  }
}

TEST_CASE("pbw with non-flat connections") {
  std::mt19937_64 rng(67);
  for (const char* name : {"weyl:1", "arrangement:3", "semidirect:sl2"}) {
    auto a = builtin(name);
    Connection c = Connection::trivial(a.lr);
    for (auto& row : c.gamma)
      for (auto& g : row) g = testutil::random_l(rng, a.lr, 1);
    Enveloping U(a.lr, c);
    for (int t = 0; t < 4; ++t) {
      std::vector<LElement> fs;
      for (int k = 0; k < 3; ++k) fs.push_back(testutil::random_l(rng, a.lr, 1));
      auto f = testutil::random_poly(rng, a.lr.n(), 1);
      auto moved = fs;
      moved[t % 3] = moved[t % 3].scaled(f);
      CHECK_MESSAGE(U.pbw_product(moved) == U.pbw_product(fs).left_scaled(f), name);
      auto m = random_sym(rng, a.lr, 1 + t % 3);
      if (!m.is_zero()) CHECK(U.gr_symbol(U.pbw(m)) == m);
    }
  }
}

TEST_CASE("commutator induces the Poisson bracket") {
  std::mt19937_64 rng(53);
  for (const auto& name : builtin_names()) {
    auto U = env(name);
    for (int t = 0; t < 6; ++t) {
      int k = 1 + t % 2, l = 1 + (t / 2) % 2;
      auto a = random_sym(rng, U.lr(), k), b = random_sym(rng, U.lr(), l);
      auto c = U.commutator(U.pbw(a), U.pbw(b));
      CHECK(c.filtration_degree() <= k + l - 1);
      CHECK_MESSAGE(symbol_at(U, c, k + l - 1) == poisson_oracle(U.lr(), a, b), name);
    }
  }
}

TEST_CASE("center search") {
  auto W = env("weyl:1");
  auto cw = center_search(W, 4, 6);
  REQUIRE(cw.basis.size() == 1);
  CHECK(cw.basis[0] == W.one());

  auto S = env("lie:sl2");
  auto cs = center_search(S, 2, 2);
  REQUIRE(cs.basis.size() == 2);
  auto E = S.gen(0), F = S.gen(1), H = S.gen(2);
  auto cas = S.mul(E, F) + S.mul(F, E) + S.mul(H, H) * Rational(1, 2);
  for (const auto& z : cs.basis)
    for (std::size_t k = 0; k < 3; ++k) CHECK(S.commutator(z, S.gen(k)).is_zero());
  auto ef = Monomial::unit(0) * Monomial::unit(1);
  int with_casimir = 0;
  for (const auto& z : cs.basis) {
    if (z.filtration_degree() != 2) continue;
    Rational c = z.coefficient(ef).constant_term() / cas.coefficient(ef).constant_term();
    CHECK((z - cas * c).filtration_degree() <= 0);
    ++with_casimir;
  }
  CHECK(with_casimir == 1);

  auto A = env("lie:abelian:2");
  CHECK(center_search(A, 2, 2).basis.size() == 6);

  auto R = env("arrangement:3");
  auto cr = center_search(R, 2, 3);
  REQUIRE(cr.basis.size() == 1);
  CHECK(cr.basis[0] == R.one());
  CHECK(center_search(R, 1, 2, 2).basis.size() == 1);

  auto unweighted = builtin("weyl:1");
  unweighted.lr.weights.reset();
  Enveloping Wu(unweighted.lr, unweighted.connection);
  CHECK_THROWS_AS(center_search(Wu, 2, 4), std::invalid_argument);
  CHECK(center_search(Wu, 2, 4, 3).basis.size() == 1);
  CHECK_THROWS_AS(center_search(W, 1, -1), std::invalid_argument);
}

TEST_CASE("derivation extension") {
  std::mt19937_64 rng(59);
  for (const char* name : {"weyl:1", "lie:sl2", "semidirect:sl2", "arrangement:3"}) {
    auto U = env(name);
    const auto& lr = U.lr();
    auto u = testutil::random_uea(rng, U, 2);
    std::vector<UEAElement> v0, v1;
    for (std::size_t i = 0; i < lr.n(); ++i) v0.push_back(U.commutator(u, U.scalar(lr.x(i))));
    for (std::size_t k = 0; k < lr.d(); ++k) v1.push_back(U.commutator(u, U.gen(k)));
    DerivationExtension inner(U, v0, v1);
    CHECK_MESSAGE(inner.ok(), name << ": " << inner.report().failure);
    for (int t = 0; t < 4; ++t) {
      auto a = testutil::random_uea(rng, U, 2), b = testutil::random_uea(rng, U, 1);
      CHECK(inner.apply(a) == U.commutator(u, a));
      CHECK(inner.apply(U.mul(a, b)) == U.mul(inner.apply(a), b) + U.mul(a, inner.apply(b)));
    }
  }

  auto W = env("weyl:1");
  DerivationExtension de(W, {W.zero()}, {W.one()});
  CHECK(de.ok());
  std::mt19937_64 rng2(61);
  for (int t = 0; t < 6; ++t) {
    auto a = testutil::random_uea(rng2, W, 3, 2), b = testutil::random_uea(rng2, W, 2, 2);
    CHECK(de.apply(W.mul(a, b)) == W.mul(de.apply(a), b) + W.mul(a, de.apply(b)));
  }
  auto e2 = W.mul(W.gen(0), W.gen(0));
  CHECK(de.apply(e2) == W.gen(0) * Rational(2));

  auto S = env("lie:sl2");
  DerivationExtension bad(S, {}, {S.one(), S.zero(), S.zero()});
  CHECK_FALSE(bad.ok());
  CHECK(bad.report().failure.find("bracket equation fails") != std::string::npos);

  DerivationExtension badx(W, {W.scalar(W.lr().x(0))}, {W.zero()});
  CHECK_FALSE(badx.ok());
  CHECK(badx.report().failure.find("anchor equation fails on (e,x)") != std::string::npos);
}
