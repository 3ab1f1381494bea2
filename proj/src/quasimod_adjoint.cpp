#include <algorithm>
#include <numeric>

#include "rinehart/quasimod.hpp"
#include "sampling.hpp"

namespace rinehart {

namespace {

int below(LegSet s, std::size_t u) { return leg_count(s & ((LegSet{1} << u) - 1)); }

LegSet to_set(const std::vector<std::size_t>& legs) {
  LegSet s = 0;
  for (auto u : legs) s |= LegSet{1} << u;
  return s;
}

}  // namespace

Multivector adjoint_delta(const PoissonAlgebra& pa, const Multivector& m) {
  const auto& lr = pa.lr();
  std::size_t n = lr.n();
  Multivector out(pa.nvars(), m.degree() + 1);
  for (const auto& [s, c] : m.terms())
    for (std::size_t j = 0; j < lr.d(); ++j) {
      Polynomial dc = c.derivative(n + j);
      if (dc.is_zero()) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (s & (LegSet{1} << l)) continue;
        Polynomial a = pa.from_r(lr.anchor[j](lr.x(l)));
        if (a.is_zero()) continue;
        Polynomial t = a * dc;
        out.add(s | (LegSet{1} << l), below(s, l) % 2 == 0 ? t : -t);
      }
    }
  return out;
}

Multivector adjoint_action(const PoissonAlgebra& pa, const LElement& X, const Multivector& m) {
  const auto& lr = pa.lr();
  std::size_t n = lr.n();
  Polynomial Xt = pa.from_l(X);
  std::vector<Polynomial> V;
  for (std::size_t l = 0; l < n; ++l) V.push_back(anchor_apply(lr, X, lr.x(l)));
  Multivector out(pa.nvars(), m.degree());
  for (const auto& [s, c] : m.terms()) {
    out.add(s, pa.bracket(Xt, c));
    auto legs = legs_of(s);
    for (std::size_t a = 0; a < legs.size(); ++a)
      for (std::size_t l = 0; l < n; ++l) {
        // [V, d/dx_i] = -sum_l (d V^l / dx_i) d/dx_l
        Polynomial k = V[l].derivative(legs[a]);
        if (k.is_zero()) continue;
        auto seq = legs;
        seq[a] = l;
        int sg = sampling::sort_sign(seq);
        if (sg == 0) continue;
        Polynomial t = pa.from_r(k) * c;
        out.add(to_set(seq), sg > 0 ? -t : t);
      }
  }
  return out;
}

Multivector adjoint_homotopy(const PoissonAlgebra& pa, const Polynomial& r, const LElement& X,
                             const Multivector& m) {
  Polynomial Xt = pa.from_l(X);
  Multivector out(pa.nvars(), m.degree() - 1);
  for (const auto& [s, c] : m.terms()) {
    auto legs = legs_of(s);
    for (std::size_t a = 0; a < legs.size(); ++a) {
      Polynomial dr = r.derivative(legs[a]);
      if (dr.is_zero()) continue;
      Polynomial t = pa.from_r(dr) * c * Xt;
      out.add(s & ~(LegSet{1} << legs[a]), a % 2 == 0 ? t : -t);
    }
  }
  return out;
}

QuasiModule<Multivector> adjoint_instance(const PoissonAlgebra& pa) {
  auto P = std::make_shared<PoissonAlgebra>(pa);
  std::size_t N = pa.nvars(), n = pa.lr().n();
  QuasiModule<Multivector> q;
  q.name = "adjoint";
  q.lr = pa.lr();
  q.degree = [](const Multivector& m) { return m.degree(); };
  q.zero = [N](int p) { return Multivector(N, p); };
  q.d = [P](const Multivector& m) { return adjoint_delta(*P, m) * Rational(-1); };
  q.act_r = [P](const Polynomial& r, const Multivector& m) { return m.scaled(P->from_r(r)); };
  q.act_l = [P](const LElement& X, const Multivector& m) { return adjoint_action(*P, X, m); };
  q.h = [P](const Polynomial& r, const LElement& X, const Multivector& m) {
    return adjoint_homotopy(*P, r, X, m);
  };
  q.compare = [P](const Multivector& a, const Multivector& b) -> std::string {
    if (a == b) return {};
    return to_string(*P, a) + " vs " + to_string(*P, b);
  };
  q.describe = [P](const Multivector& m) { return to_string(*P, m); };
  q.sample = [N, n](std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> deg(0, n);
    std::uniform_int_distribution<int> terms(1, 2);
    std::size_t p = deg(rng);
    Multivector m(N, static_cast<int>(p));
    int t = terms(rng);
    for (int k = 0; k < t; ++k) {
      std::vector<std::size_t> vars(n);
      std::iota(vars.begin(), vars.end(), 0);
      std::shuffle(vars.begin(), vars.end(), rng);
      vars.resize(p);
      m.add(to_set(vars), sampling::poly(rng, N, 2));
    }
    return m;
  };
  return q;
}

}  // namespace rinehart
