#include <doctest.h>

#include <random>

#include "rinehart/algebra_io.hpp"
#include "rinehart/lie_rinehart.hpp"
#include "rinehart/poly_parse.hpp"
#include "test_util.hpp"

using namespace rinehart;

namespace {

Connection random_connection(std::mt19937_64& rng, const LieRinehart& lr) {
  Connection c = Connection::trivial(lr);
  for (auto& row : c.gamma)
    for (auto& g : row) g = testutil::random_l(rng, lr, 1);
  return c;
}

}  // namespace

TEST_CASE("axiom checks") {
  CHECK(check_axioms(lie_abelian(2).lr).ok);
  CHECK(check_axioms(weyl(1).lr).ok);
  CHECK(check_axioms(weyl(2).lr).ok);
  CHECK(check_axioms(lie_sl2().lr).ok);
  CHECK(check_axioms(semidirect_sl2().lr).ok);
  CHECK(check_axioms(arrangement({"x", "y", "y-x"}).lr).ok);
  CHECK(check_axioms(arrangement({"x", "y", "y-x", "y+x"}).lr).ok);

  LieRinehart bad = lie_sl2().lr;
  bad.structure[2][1] = bad.e(1) * Rational(2);  // [h,f] = +2f
  bad.structure[1][2] = bad.e(1) * Rational(-2);
  auto rep = check_axioms(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failure.find("Jacobi fails on (e,f,h)") != std::string::npos);

  LieRinehart inhomog = weyl(1).lr;
  inhomog.anchor[0] = PolyDerivation({inhomog.one() + inhomog.x(0)});
  CHECK_FALSE(check_axioms(inhomog).ok);
}

TEST_CASE("bracket and anchor") {
  auto W = weyl(1).lr;
  auto x = W.x(0);
  auto e = W.e(0);
  CHECK(bracket(W, e.scaled(x), e) == -e);
  CHECK(bracket(W, e.scaled(x), e.scaled(x)).is_zero());
  CHECK(anchor_apply(W, e, x * x) == Rational(2) * x);

  auto A = arrangement({"x", "y", "y-x"}).lr;
  CHECK(bracket(A, A.e(0), A.e(1)) == A.e(1));
  CHECK(anchor_apply(A, A.e(0), A.x(0) * A.x(0) * A.x(1)) == Rational(3) * A.x(0) * A.x(0) * A.x(1));

  auto S = lie_sl2().lr;
  CHECK(anchor_apply(S, S.e(0), S.one()).is_zero());

  CHECK(bracket_weight(W).value() == -2);
  CHECK(bracket_weight(S).value() == -1);
  CHECK(bracket_weight(A).value() == 0);
  CHECK(bracket_weight(semidirect_sl2().lr).value() == -1);
}

TEST_CASE("random Leibniz, antisymmetry and Jacobi") {
  std::mt19937_64 rng(3);
  for (const auto& name : builtin_names()) {
    auto lr = builtin(name).lr;
    for (int t = 0; t < 15; ++t) {
      auto X = testutil::random_l(rng, lr), Y = testutil::random_l(rng, lr),
           Z = testutil::random_l(rng, lr);
      auto f = testutil::random_poly(rng, lr.n(), 2);
      CHECK(bracket(lr, X, Y) == -bracket(lr, Y, X));
      CHECK(bracket(lr, X, Y.scaled(f)) ==
            Y.scaled(anchor_apply(lr, X, f)) + bracket(lr, X, Y).scaled(f));
      CHECK((bracket(lr, X, bracket(lr, Y, Z)) + bracket(lr, Y, bracket(lr, Z, X)) +
             bracket(lr, Z, bracket(lr, X, Y)))
                .is_zero());
    }
  }
}

TEST_CASE("basic connection") {
  auto W = weyl(1);
  auto& lr = W.lr;
  auto c = W.connection;
  CHECK(basic_nabla_L(lr, c, lr.e(0), lr.e(0).scaled(lr.x(0))) == lr.e(0));
  CHECK(basic_nabla_der(lr, c, lr.e(0), PolyDerivation::partial(1, 0)).is_zero());

  std::mt19937_64 rng(17);
  for (const auto& name : builtin_names()) {
    auto a = builtin(name);
    for (int t = 0; t < 10; ++t) {
      Connection conn = (t % 2) ? random_connection(rng, a.lr) : a.connection;
      auto X = testutil::random_l(rng, a.lr), Y = testutil::random_l(rng, a.lr);
      CHECK(anchor_of(a.lr, basic_nabla_L(a.lr, conn, X, Y)) ==
            basic_nabla_der(a.lr, conn, X, anchor_of(a.lr, Y)));
    }
  }
}

TEST_CASE("basic curvature") {
  auto S = lie_sl2();
  CHECK(basic_curvature(S.lr, S.connection, S.lr.e(0), S.lr.e(1), PolyDerivation(0)).is_zero());

  std::mt19937_64 rng(23);
  for (const auto& name : builtin_names()) {
    auto a = builtin(name);
    for (int t = 0; t < 10; ++t) {
      Connection conn = (t % 2) ? random_connection(rng, a.lr) : a.connection;
      auto X = testutil::random_l(rng, a.lr), Y = testutil::random_l(rng, a.lr),
           Z = testutil::random_l(rng, a.lr);
      auto D = testutil::random_der(rng, a.lr.n());
      CHECK(basic_curvature(a.lr, conn, X, Y, anchor_of(a.lr, Z)) ==
            -basic_curvature_L(a.lr, conn, X, Y, Z));
      CHECK(anchor_of(a.lr, basic_curvature(a.lr, conn, X, Y, D)) ==
            -basic_curvature_der(a.lr, conn, X, Y, D));
      // tensorial in D
      auto f = testutil::random_poly(rng, a.lr.n(), 1);
      CHECK(basic_curvature(a.lr, conn, X, Y, D.scaled(f)) ==
            basic_curvature(a.lr, conn, X, Y, D).scaled(f));
    }
  }
}

TEST_CASE("ruth differential squares to zero") {
  for (const auto& name : builtin_names()) {
    auto a = builtin(name);
    int cap = a.lr.n() > 1 ? 2 : 3;
    auto rep = ruth_check(a.lr, a.connection, cap);
    CHECK_MESSAGE(rep.ok, name << ": " << rep.failure);
  }
  std::mt19937_64 rng(29);
  for (const char* name : {"weyl:1", "arrangement:3"}) {
    auto a = builtin(name);
    auto rep = ruth_check(a.lr, random_connection(rng, a.lr), 2);
    CHECK_MESSAGE(rep.ok, name << " (random connection): " << rep.failure);
  }
}

TEST_CASE("presentations from vector fields") {
  std::vector<std::string> xy{"x", "y"};
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  PolyDerivation E({x, y});

  auto w = from_vector_fields({"x"}, {"e"}, {PolyDerivation::partial(1, 0)});
  CHECK(w.structure[0][0].is_zero());

  auto r0 = from_vector_fields(xy, {"E", "D"}, {E, PolyDerivation({Polynomial(2), y})});
  CHECK(r0.structure[0][1].is_zero());

  auto r1 = from_vector_fields(xy, {"E", "D"}, {E, PolyDerivation({Polynomial(2), y * y - x * x})});
  CHECK(r1.structure[0][1] == LElement({Polynomial(2), Polynomial::constant(2, 1)}));

  CHECK(arrangement({"x", "y", "y-x", "y+x"}).lr.structure[0][1][1] == Polynomial::constant(2, 2));

  CHECK_THROWS_AS(from_vector_fields(xy, {"a", "b"},
                                     {PolyDerivation::partial(2, 0),
                                      PolyDerivation({Polynomial(2), x})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_vector_fields({"x"}, {"a"}, {PolyDerivation(1)}), std::invalid_argument);
}

TEST_CASE("presentations from actions") {
  using Cube = std::vector<std::vector<std::vector<Rational>>>;
  auto one = from_action({"x"}, {"a"}, Cube{{{0}}}, Cube{{{1}}});
  CHECK(check_axioms(one).ok);
  CHECK(one.anchor[0](Polynomial::variable(1, 0)) == Polynomial::variable(1, 0));

  auto sl2 = lie_sl2().lr;
  CHECK(sl2.n() == 0);
  CHECK(check_axioms(sl2).ok);
  CHECK(check_axioms(semidirect_sl2().lr).ok);

  Cube c(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
  c[0][1][2] = 1;
  c[1][0][2] = -1;
  Cube act = {{{0, 0}, {1, 0}}, {{0, 1}, {0, 0}}, {{0, 0}, {0, 0}}};  // h acts by 0
  CHECK_THROWS_AS(from_action({"x", "y"}, {"e", "f", "h"}, c, act), std::invalid_argument);
}

TEST_CASE("presentation files") {
  auto w = algebra_from_json(R"({"vars":["x"],"rank":1,"basis":["e"],"anchor":[["1"]]})");
  CHECK(w.lr.anchor == weyl(1).lr.anchor);
  CHECK(check_axioms(w.lr).ok);

  auto s = algebra_from_json(R"({"vars":[],"rank":3,"basis":["e","f","h"],"anchor":[[],[],[]],
    "bracket":{"e,f":["0","0","1"],"h,e":["2","0","0"],"2,1":["0","-2","0"]}})");
  CHECK(s.lr.structure == lie_sl2().lr.structure);
  CHECK(check_axioms(s.lr).ok);

  CHECK_THROWS_WITH_AS(
      algebra_from_json(R"({"vars":[],"basis":["a","b","c"],"anchor":[[],[],[]],
        "bracket":{"2,2":["1","0","0"]}})"),
      doctest::Contains("antisymmetry"), SpecError);
  CHECK_THROWS_WITH_AS(
      algebra_from_json(R"({"vars":["x"],"basis":["e"],"anchor":[["1 +"]]})"),
      doctest::Contains("anchor[0][0]"), SpecError);
  CHECK_THROWS_AS(algebra_from_json("{"), SpecError);

  for (const auto& name : builtin_names()) {
    auto a = builtin(name);
    auto b = algebra_from_json(algebra_to_json(a));
    CHECK(b.lr == a.lr);
    CHECK(b.euler == a.euler);
  }
  std::mt19937_64 rng(1);
  auto a = builtin("arrangement:3");
  a.connection = random_connection(rng, a.lr);
  auto b = algebra_from_json(algebra_to_json(a));
  CHECK(b.connection.gamma == a.connection.gamma);
}

TEST_CASE("polynomial grammar") {
  std::vector<std::string> v{"x", "y"};
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  CHECK(parse_polynomial("(x+1)*(x-1)", v) == x * x - Polynomial::constant(2, 1));
  CHECK(parse_polynomial("-3/4*x^2*y + y", v) == Rational(-3, 4) * x * x * y + y);
  CHECK(parse_polynomial(" - - x", v) == x);
  CHECK_THROWS_AS(parse_polynomial("x + z", v), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x)", v), ParseError);
  CHECK_THROWS_AS(parse_polynomial("1/0", v), ParseError);
}
