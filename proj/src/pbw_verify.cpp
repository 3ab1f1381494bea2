// Pointwise verification of the identities around the extended PBW map, and
// the comparison map Phi on nonlinear cochains.
#include <functional>

#include "rinehart/pbw_ext.hpp"
#include "sampling.hpp"

namespace rinehart {

namespace {

struct Sampler {
  const PbwExtension& ext;
  const PbwCheckOptions& opt;
  std::mt19937_64 rng;

  Sampler(const PbwExtension& e, const PbwCheckOptions& o, std::uint64_t salt)
      : ext(e), opt(o) {
    std::seed_seq ss{o.seed, salt};
    rng.seed(ss);
  }

  std::size_t n() const { return ext.lr().n(); }
  Polynomial r() { return sampling::poly(rng, n(), opt.coeff_degree); }
  LElement l() { return sampling::l_element(rng, ext.lr(), opt.coeff_degree); }
  PolyDerivation der() {
    if (n() == 0) return PolyDerivation(0);
    std::vector<Polynomial> img;
    for (std::size_t i = 0; i < n(); ++i) img.push_back(sampling::poly(rng, n(), opt.coeff_degree, 2));
    return PolyDerivation(img);
  }
  Multivector adjoint(int p, int q) {
    std::vector<PolyDerivation> D;
    for (int i = 0; i < p; ++i) D.push_back(der());
    std::vector<LElement> X;
    for (int j = 0; j < q; ++j) X.push_back(l());
    return adjoint_element(ext.poisson(), D, X);
  }
  // (p, q) with p + q >= 1 inside the configured box.
  std::pair<int, int> degrees(int min_p = 0) {
    int pmax = std::min<int>(opt.max_p, static_cast<int>(n()));
    if (pmax < min_p) return {-1, -1};
    std::uniform_int_distribution<int> P(min_p, pmax), Q(0, opt.max_q);
    int p, q;
    do {
      p = P(rng);
      q = Q(rng);
    } while (p + q == 0);
    return {p, q};
  }
};

struct Recorder {
  CheckReport& rep;
  bool expect(bool ok, const std::function<std::string()>& what) {
    if (!ok && rep.ok) {
      rep.ok = false;
      rep.failure = what();
    }
    return ok;
  }
};

std::string show(const LieRinehart& lr, const LElement& X) { return to_string(lr, X); }

// Replaces one factor of every decomposable term.
Multivector replace_factors(const PbwExtension& ext, const Multivector& v,
                            const std::function<PolyDerivation(const PolyDerivation&)>& onD,
                            const std::function<LElement(const LElement&)>& onX) {
  Polynomial scalar;
  auto terms = adjoint_terms(ext.poisson(), v, &scalar);
  Multivector out(ext.poisson().nvars(), v.degree());
  for (const auto& t : terms) {
    for (std::size_t a = 0; a < t.D.size(); ++a) {
      auto D = t.D;
      D[a] = onD(D[a]);
      out = out + adjoint_element(ext.poisson(), D, t.X) * t.coeff;
    }
    for (std::size_t b = 0; b < t.X.size(); ++b) {
      auto X = t.X;
      X[b] = onX(X[b]);
      out = out + adjoint_element(ext.poisson(), t.D, X) * t.coeff;
    }
  }
  return out;
}

TableCochain s_or_zero(const PbwExtension& ext, const std::vector<LElement>& Ys,
                       const Multivector& v, int arity) {
  if (v.degree() < static_cast<int>(Ys.size())) return TableCochain::zero(ext.U(), arity);
  return ext.s(Ys, v);
}

}  // namespace

CheckReport verify_eta(const PbwExtension& ext, const PbwCheckOptions& opt) {
  CheckReport rep;
  rep.checks = {"rho-eta-b", "eta-on-anchor", "rho-eta", "eta-linear-D", "eta-linear-X",
                "eta-Leibniz-Y"};
  Recorder rec{rep};
  Sampler S(ext, opt, 11);
  const LieRinehart& L = ext.lr();
  const Connection& c = ext.connection();
  for (std::size_t t = 0; t < opt.samples && rep.ok; ++t) {
    LElement X = S.l(), Y = S.l(), Z = S.l();
    PolyDerivation D = S.der();
    Polynomial r = S.r();
    auto at = [&](const std::string& law) {
      return [&, law] {
        return law + " fails at Y = " + show(L, Y) + ", X = " + show(L, X) + ", Z = " + show(L, Z) +
               ", D = " + to_string(L, D) + ", r = " + r.to_string(L.vars);
      };
    };
    rec.expect(anchor_of(L, ext.eta_b(Y, X, Z)) == ext.eta_b(Y, X, anchor_of(L, Z)), at("rho-eta-b"));
    rec.expect(ext.eta(Y, anchor_of(L, Z), X) == ext.eta_b(Y, X, Z), at("eta-on-anchor"));
    rec.expect(anchor_of(L, ext.eta(Y, D, X)) == ext.eta_b(Y, X, D), at("rho-eta"));
    LElement e = ext.eta(Y, D, X);
    rec.expect(ext.eta(Y, D.scaled(r), X) == e.scaled(r), at("eta-linear-D"));
    rec.expect(ext.eta(Y, D, X.scaled(r)) == e.scaled(r), at("eta-linear-X"));
    LElement nDX = nabla(L, c, D, X);
    LElement expected = e.scaled(r) - Y.scaled(anchor_apply(L, nDX, r)) +
                        nabla(L, c, anchor_of(L, Y), X).scaled(D(r)) -
                        bracket(L, Y, X).scaled(D(r)) + Y.scaled(D(anchor_apply(L, X, r))) +
                        nabla(L, c, D, Y).scaled(anchor_apply(L, X, r));
    rec.expect(ext.eta(Y.scaled(r), D, X) == expected, at("eta-Leibniz-Y"));
  }
  return rep;
}

CheckReport verify_F_identities(const PbwExtension& ext, const PbwCheckOptions& opt) {
  CheckReport rep;
  rep.checks = {"lie-nabla-commutator", "F-delta-anticommutator", "F-equivariance"};
  Recorder rec{rep};
  Sampler S(ext, opt, 12);
  const PoissonAlgebra& pa = ext.poisson();
  const LieRinehart& L = ext.lr();
  auto lie = [&](const LElement& Y, const Multivector& v) { return adjoint_action(pa, Y, v); };
  auto delta = [&](const Multivector& v) { return adjoint_delta(pa, v); };
  for (std::size_t t = 0; t < opt.samples && rep.ok; ++t) {
    auto [p, q] = S.degrees();
    Multivector v = S.adjoint(p, q);
    LElement Y = S.l(), Z = S.l(), Y2 = S.l();
    auto at = [&](const std::string& law) {
      return [&, law] {
        return law + " fails at (p, q) = (" + std::to_string(p) + ", " + std::to_string(q) +
               "), Y = " + show(L, Y) + ", Z = " + show(L, Z);
      };
    };

    Multivector lhs = lie(Y, ext.nabla_b(Z, v)) - ext.nabla_b(Z, lie(Y, v));
    Multivector rhs = ext.nabla_b(bracket(L, Y, Z), v) +
                      replace_factors(
                          ext, v, [&](const PolyDerivation& D) { return ext.eta_b(Y, Z, D); },
                          [&](const LElement& X) { return ext.eta_b(Y, Z, X); });
    rec.expect(lhs == rhs, at("lie-nabla-commutator"));

    // {F_Y, delta} = sum_{i != j} D (x) eta^b_Y(X_i, X_j) X_(i,j)
    //              + sum_{i,j} (-1)^{i+1} eta^b_Y(X_j, D_i) ^ D_(i) (x) X_(j).
    Polynomial scalar;
    auto terms = adjoint_terms(pa, v, &scalar);
    Multivector expected(pa.nvars(), v.degree());
    for (const auto& term : terms) {
      for (std::size_t i = 0; i < term.X.size(); ++i)
        for (std::size_t j = 0; j < term.X.size(); ++j) {
          if (i == j) continue;
          std::vector<LElement> X{ext.eta_b(Y, term.X[i], term.X[j])};
          for (std::size_t b = 0; b < term.X.size(); ++b)
            if (b != i && b != j) X.push_back(term.X[b]);
          expected = expected + adjoint_element(pa, term.D, X) * term.coeff;
        }
      for (std::size_t i = 0; i < term.D.size(); ++i)
        for (std::size_t j = 0; j < term.X.size(); ++j) {
          auto D = term.D;
          D[i] = ext.eta_b(Y, term.X[j], term.D[i]);
          std::vector<LElement> X;
          for (std::size_t b = 0; b < term.X.size(); ++b)
            if (b != j) X.push_back(term.X[b]);
          expected = expected + adjoint_element(pa, D, X) * term.coeff;
        }
    }
    Multivector anti = ext.F(Y, delta(v)) + delta(ext.F(Y, v));
    rec.expect(anti == expected, at("F-delta-anticommutator"));

    Multivector fce = lie(Y, ext.F(Y2, v)) - ext.F(Y2, lie(Y, v)) - lie(Y2, ext.F(Y, v)) +
                      ext.F(Y, lie(Y2, v));
    rec.expect(fce == ext.F(bracket(L, Y, Y2), v), at("F-equivariance"));
  }
  return rep;
}

CheckReport verify_pbw_chain(const PbwExtension& ext, const PbwCheckOptions& opt) {
  CheckReport rep;
  rep.checks = {"pbw-chain-map", "pbw-R-linear", "pbw-on-Sym"};
  Recorder rec{rep};
  Sampler S(ext, opt, 13);
  const PoissonAlgebra& pa = ext.poisson();
  for (std::size_t t = 0; t < opt.samples && rep.ok; ++t) {
    auto [p, q] = S.degrees();
    Multivector v = S.adjoint(p, q);
    auto where = [&, p = p, q = q](const std::string& law) {
      return [=] {
        return law + " fails at (p, q) = (" + std::to_string(p) + ", " + std::to_string(q) + ")";
      };
    };
    auto lhs = ext.pbw_tilde(adjoint_delta(pa, v));
    auto rhs = hochschild_b(ext.pbw_tilde(v)) * Rational(-1);
    std::string diff = compare_cochains(lhs, rhs, opt.probe);
    rec.expect(diff.empty(), [&] { return where("pbw-chain-map")() + ": " + diff; });

    Polynomial r = S.r();
    auto moved = ext.pbw_tilde(v.scaled(pa.from_r(r)));
    diff = compare_cochains(moved, hochschild_r(r, ext.pbw_tilde(v)), opt.probe);
    rec.expect(diff.empty(), [&] { return where("pbw-R-linear")() + ": " + diff; });

    if (p == 0) {
      Polynomial sym = v.coefficient(0);
      rec.expect(ext.pbw_tilde(v)({}) == ext.U()->pbw(sym), where("pbw-on-Sym"));
    }
  }
  return rep;
}

CheckReport verify_identity_tower(const PbwExtension& ext, const PbwCheckOptions& opt) {
  CheckReport rep;
  rep.checks = {"homotopy-tower"};
  Recorder rec{rep};
  Sampler S(ext, opt, 14);
  const PoissonAlgebra& pa = ext.poisson();
  const LieRinehart& L = ext.lr();
  for (int n = 0; n <= opt.max_n && rep.ok; ++n) {
    for (std::size_t t = 0; t < opt.samples && rep.ok; ++t) {
      auto [p, q] = S.degrees(n);
      if (p < 0) break;
      Multivector v = S.adjoint(p, q);
      std::vector<LElement> Y;
      for (int i = 0; i <= n; ++i) Y.push_back(S.l());
      int arity = p - n;
      TableCochain lhs = TableCochain::zero(ext.U(), arity);
      for (std::size_t a = 0; a < Y.size(); ++a) {
        std::vector<LElement> rest;
        for (std::size_t b = 0; b < Y.size(); ++b)
          if (b != a) rest.push_back(Y[b]);
        TableCochain comm = hochschild_action(Y[a], ext.s(rest, v)) -
                            ext.s(rest, adjoint_action(pa, Y[a], v));
        lhs = a % 2 == 0 ? lhs + comm : lhs - comm;
      }
      for (std::size_t a = 0; a < Y.size(); ++a)
        for (std::size_t b = a + 1; b < Y.size(); ++b) {
          std::vector<LElement> args{bracket(L, Y[a], Y[b])};
          for (std::size_t c = 0; c < Y.size(); ++c)
            if (c != a && c != b) args.push_back(Y[c]);
          TableCochain term = ext.s(args, v);
          lhs = (a + b) % 2 == 0 ? lhs + term : lhs - term;
        }
      TableCochain rhs = p > n ? hochschild_b(ext.s(Y, v)) : TableCochain::zero(ext.U(), arity);
      TableCochain tail = s_or_zero(ext, Y, adjoint_delta(pa, v), arity);
      rhs = (n + 1) % 2 == 0 ? rhs + tail : rhs - tail;
      std::string diff = compare_cochains(lhs, rhs, opt.probe);
      rec.expect(diff.empty(), [&] {
        return "homotopy tower fails at n = " + std::to_string(n) + ", (p, q) = (" +
               std::to_string(p) + ", " + std::to_string(q) + "): " + diff;
      });
    }
  }
  return rep;
}

}  // namespace rinehart
