// eta tensors, F_Y, the basic connection on adjoint elements, and the
// recursions for pbw~ and s^n.
#include "rinehart/pbw_ext.hpp"

#include <functional>

#include "sampling.hpp"

namespace rinehart {

namespace {

Polynomial x_monomial(std::size_t n, const Monomial& m) { return Polynomial::term(n, m, 1); }

// D_1 ^ .. ^ D_p with coefficients in R, over the n + d coordinates.
Multivector wedge(const PoissonAlgebra& pa, const std::vector<PolyDerivation>& D) {
  std::size_t n = pa.lr().n(), N = pa.nvars();
  Multivector out(N, static_cast<int>(D.size()));
  std::vector<std::size_t> legs;
  std::function<void(std::size_t, const Polynomial&)> rec = [&](std::size_t a, const Polynomial& c) {
    if (c.is_zero()) return;
    if (a == D.size()) {
      auto sorted = legs;
      int sg = sampling::sort_sign(sorted);
      if (sg == 0) return;
      LegSet s = 0;
      for (auto l : sorted) s |= LegSet{1} << l;
      out.add(s, c.embed(N, 0) * Rational(sg));
      return;
    }
    for (std::size_t l = 0; l < n; ++l) {
      if (std::find(legs.begin(), legs.end(), l) != legs.end()) continue;
      legs.push_back(l);
      rec(a + 1, c * D[a].image(l));
      legs.pop_back();
    }
  };
  rec(0, Polynomial::constant(n, 1));
  return out;
}

template <class T>
std::vector<T> without(const std::vector<T>& v, std::size_t i) {
  std::vector<T> r;
  for (std::size_t a = 0; a < v.size(); ++a)
    if (a != i) r.push_back(v[a]);
  return r;
}

}  // namespace

Multivector adjoint_element(const PoissonAlgebra& pa, const std::vector<PolyDerivation>& D,
                            const std::vector<LElement>& X) {
  Polynomial sym = Polynomial::constant(pa.nvars(), 1);
  for (const auto& Xj : X) sym = sym * pa.from_l(Xj);
  return wedge(pa, D).scaled(sym);
}

std::vector<AdjointTerm> adjoint_terms(const PoissonAlgebra& pa, const Multivector& v,
                                       Polynomial* scalar_part) {
  const LieRinehart& lr = pa.lr();
  std::size_t n = lr.n(), d = lr.d();
  *scalar_part = Polynomial(n);
  std::vector<AdjointTerm> out;
  for (const auto& [S, c] : v.terms()) {
    auto legs = legs_of(S);
    for (auto l : legs)
      if (l >= n) throw std::invalid_argument("adjoint elements carry d/dx legs only");
    for (const auto& [M, a] : c.terms()) {
      Monomial m;
      for (std::size_t i = 0; i < n; ++i) m[i] = M[i];
      AdjointTerm t;
      t.coeff = a;
      for (auto l : legs) t.D.push_back(PolyDerivation::partial(n, l));
      for (std::size_t k = 0; k < d; ++k)
        for (int e = 0; e < M[n + k]; ++e) t.X.push_back(lr.e(k));
      Polynomial f = x_monomial(n, m);
      if (!t.D.empty()) {
        t.D[0] = t.D[0].scaled(f);
      } else if (!t.X.empty()) {
        t.X[0] = t.X[0].scaled(f);
      } else {
        *scalar_part += f * a;
        continue;
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

PbwExtension::PbwExtension(LieRinehart lr, Connection conn)
    : pa_(lr), conn_(std::move(conn)),
      U_(std::make_shared<const Enveloping>(std::move(lr), conn_)) {}

LElement PbwExtension::eta(const LElement& Y, const PolyDerivation& D, const LElement& X) const {
  const LieRinehart& L = lr();
  return bracket(L, Y, nabla(L, conn_, D, X)) - nabla(L, conn_, anchor_of(L, Y).bracket(D), X) -
         nabla(L, conn_, D, bracket(L, Y, X));
}

PolyDerivation PbwExtension::eta_b(const LElement& Y, const LElement& X,
                                   const PolyDerivation& D) const {
  const LieRinehart& L = lr();
  PolyDerivation rY = anchor_of(L, Y);
  return rY.bracket(basic_nabla_der(L, conn_, X, D)) -
         basic_nabla_der(L, conn_, bracket(L, Y, X), D) -
         basic_nabla_der(L, conn_, X, rY.bracket(D));
}

LElement PbwExtension::eta_b(const LElement& Y, const LElement& X, const LElement& Z) const {
  const LieRinehart& L = lr();
  return bracket(L, Y, basic_nabla_L(L, conn_, X, Z)) -
         basic_nabla_L(L, conn_, bracket(L, Y, X), Z) -
         basic_nabla_L(L, conn_, X, bracket(L, Y, Z));
}

Multivector PbwExtension::nabla_b(const LElement& X, const Multivector& v) const {
  const LieRinehart& L = lr();
  Polynomial scalar;
  auto terms = adjoint_terms(pa_, v, &scalar);
  Multivector out(pa_.nvars(), v.degree());
  if (!scalar.is_zero()) out.add(0, pa_.from_r(anchor_apply(L, X, scalar)));
  for (const auto& t : terms) {
    for (std::size_t a = 0; a < t.D.size(); ++a) {
      auto D = t.D;
      D[a] = basic_nabla_der(L, conn_, X, D[a]);
      out = out + adjoint_element(pa_, D, t.X) * t.coeff;
    }
    for (std::size_t b = 0; b < t.X.size(); ++b) {
      auto Xs = t.X;
      Xs[b] = basic_nabla_L(L, conn_, X, Xs[b]);
      out = out + adjoint_element(pa_, t.D, Xs) * t.coeff;
    }
  }
  return out;
}

Multivector PbwExtension::F(const LElement& Y, const Multivector& v) const {
  Polynomial scalar;
  auto terms = adjoint_terms(pa_, v, &scalar);
  Multivector out(pa_.nvars(), std::max(v.degree() - 1, 0));
  if (v.degree() == 0) return out;
  for (const auto& t : terms)
    for (std::size_t i = 0; i < t.D.size(); ++i)
      for (std::size_t j = 0; j < t.X.size(); ++j) {
        auto Xs = without(t.X, j);
        Xs.push_back(eta(Y, t.D[i], t.X[j]));
        Rational c = i % 2 == 0 ? t.coeff : Rational(-t.coeff);
        out = out + adjoint_element(pa_, without(t.D, i), Xs) * c;
      }
  return out;
}

}  // namespace rinehart
