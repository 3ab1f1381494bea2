#include <doctest.h>

#include <random>

#include "rinehart/exact.hpp"
#include "rinehart/linalg.hpp"
#include "test_util.hpp"

using namespace rinehart;

TEST_CASE("polynomial ring operations") {
  auto x = Polynomial::variable(2, 0);
  auto y = Polynomial::variable(2, 1);
  auto one = Polynomial::constant(2, 1);
  CHECK((x + one) * (x - one) == x * x - one);
  CHECK(x - x == Polynomial(2));
  CHECK((x * x * y).derivative(0) == Rational(2) * x * y);

  PolyDerivation euler({x, y});
  CHECK(euler(x.pow(3) * y) == Rational(4) * x.pow(3) * y);

  Polynomial z(3);
  CHECK_THROWS_AS(x + z, VariableMismatch);
}

TEST_CASE("polynomial printing and order") {
  auto x = Polynomial::variable(2, 0);
  auto y = Polynomial::variable(2, 1);
  std::vector<std::string> names{"x", "y"};
  CHECK((x * x - Rational(1, 2) * y + Polynomial::constant(2, 3)).to_string(names) ==
        "x^2 - 1/2*y + 3");
  CHECK(Polynomial(2).to_string(names) == "0");
}

TEST_CASE("weight_split") {
  auto x = Polynomial::variable(2, 0);
  auto y = Polynomial::variable(2, 1);
  auto parts = weight_split(x * x + x * y.pow(3), {1, 1});
  REQUIRE(parts.size() == 2);
  CHECK(parts.at(2) == x * x);
  CHECK(parts.at(4) == x * y.pow(3));
  CHECK(weight_split(Polynomial(2), {1, 1}).empty());

  // x with weight 1, D with weight r = 2
  auto d = y;
  auto p2 = weight_split(x + d, {1, 2});
  CHECK(p2.at(1) == x);
  CHECK(p2.at(2) == d);
}

TEST_CASE("divide_exact and substitution") {
  auto x = Polynomial::variable(2, 0);
  auto y = Polynomial::variable(2, 1);
  Polynomial q;
  CHECK(((x * x - y * y)).divide_exact(x - y, &q));
  CHECK(q == x + y);
  CHECK_FALSE((x * x + y).divide_exact(x, &q));
  CHECK((x * y + y).substitute(0, y) == y * y + y);
}

TEST_CASE("monomial enumeration") {
  CHECK(monomials_of_weight(2, {1, 1}, 3).size() == 4);
  CHECK(monomials_of_weight(2, {1, 2}, 4).size() == 3);
  CHECK(monomials_up_to_degree(3, 2).size() == 10);
  CHECK(monomials_of_weight_capped(2, {1, -1}, 0, 4).size() == 3);
}

TEST_CASE("random ring laws") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    auto p = testutil::random_poly(rng, 3, 3);
    auto q = testutil::random_poly(rng, 3, 3);
    auto s = testutil::random_poly(rng, 3, 3);
    CHECK((p * q) * s == p * (q * s));
    CHECK(p * q == q * p);
    CHECK(p * (q + s) == p * q + p * s);
    PolyDerivation d({testutil::random_poly(rng, 3, 2), testutil::random_poly(rng, 3, 2),
                      testutil::random_poly(rng, 3, 2)});
    CHECK(d(p * q) == d(p) * q + p * d(q));
    auto parts = weight_split(p, {1, 2, 3});
    Polynomial sum(3);
    for (const auto& [w, piece] : parts) {
      int got = 0;
      CHECK(piece.is_homogeneous(std::vector<int>{1, 2, 3}, &got));
      CHECK(got == w);
      sum += piece;
    }
    CHECK(sum == p);
  }
}

TEST_CASE("kernel and rank") {
  auto id = SparseMatrixQ::identity(3);
  auto k = kernel_and_rank(id);
  CHECK(k.rank == 3);
  CHECK(k.basis.empty());

  SparseMatrixQ zero(2, 5);
  k = kernel_and_rank(zero);
  CHECK(k.rank == 0);
  CHECK(k.basis.size() == 5);

  auto m = SparseMatrixQ::from_dense({{1, 2}, {2, 4}});
  k = kernel_and_rank(m);
  CHECK(k.rank == 1);
  REQUIRE(k.basis.size() == 1);
  CHECK(k.basis[0] == VectorQ{-2, 1});
}

TEST_CASE("random kernels are exact") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3), dim(1, 7);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = dim(rng), c = dim(rng);
    SparseMatrixQ m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (coef(rng) > 0) {
          Rational v(coef(rng), 1 + (coef(rng) & 1));
          v.canonicalize();
          m.add(i, j, v);
        }
    auto k = kernel_and_rank(m);
    CHECK(k.rank + k.basis.size() == c);
    CHECK(rank(m) == k.rank);
    CHECK(rank(m.transpose()) == k.rank);
    for (const auto& v : k.basis)
      for (const auto& e : m.apply(v)) CHECK(e == 0);
    VectorQ x0(c);
    for (auto& v : x0) v = coef(rng);
    VectorQ b = m.apply(x0), x;
    REQUIRE(solve(m, b, &x));
    CHECK(m.apply(x) == b);
  }
}

TEST_CASE("cohomology of small slices") {
  ComplexSlice s;
  s.dims = {1};
  CHECK(cohomology_dims(s) == std::vector<std::size_t>{1});

  ComplexSlice acyclic;
  acyclic.dims = {1, 1};
  acyclic.maps = {SparseMatrixQ::identity(1)};
  CHECK(cohomology_dims(acyclic) == std::vector<std::size_t>{0, 0});

  // Koszul complex of (x, xi) in weight 1.
  ComplexSlice koszul;
  koszul.dims = {1, 2, 1};
  koszul.maps = {SparseMatrixQ::from_dense({{1}, {1}}), SparseMatrixQ::from_dense({{-1, 1}})};
  CHECK(cohomology_dims(koszul) == std::vector<std::size_t>{0, 0, 0});

  ComplexSlice zero;
  zero.dims = {2, 3, 1};
  zero.maps = {SparseMatrixQ(3, 2), SparseMatrixQ(1, 3)};
  CHECK(cohomology_dims(zero) == zero.dims);

  ComplexSlice bad;
  bad.dims = {1, 1, 1};
  bad.maps = {SparseMatrixQ::identity(1), SparseMatrixQ::identity(1)};
  try {
    cohomology_dims(bad);
    FAIL("expected NotAComplex");
  } catch (const NotAComplex& e) {
    CHECK(e.position == 0);
  }
}
