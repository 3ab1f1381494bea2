// The antisymmetrized homotopies and the morphism Phi from nonlinear cochains
// of the adjoint instance to CE cochains with Hochschild values.
#include <algorithm>

#include "nl_tuples.hpp"
#include "rinehart/pbw_ext.hpp"
#include "sampling.hpp"

namespace rinehart {

namespace {

// Calls f(A, B, sign) for every split of 0..m-1 into |A| = i and its
// complement B; sign is that of the permutation (B, A reversed).
void shuffles(std::size_t m, std::size_t i,
              const std::function<void(const std::vector<std::size_t>&,
                                       const std::vector<std::size_t>&, int)>& f) {
  std::vector<std::size_t> all(m);
  for (std::size_t t = 0; t < m; ++t) all[t] = t;
  nl::subsets<std::size_t>(all, i, [&](const std::vector<std::size_t>& A) {
    std::vector<std::size_t> B;
    std::size_t inv = 0;
    for (std::size_t t = 0; t < m; ++t)
      if (std::find(A.begin(), A.end(), t) == A.end()) B.push_back(t);
    for (std::size_t t = 0; t < B.size(); ++t) inv += B[t] - t;
    if (i > 1) inv += i * (i - 1) / 2;
    f(A, B, inv % 2 == 0 ? 1 : -1);
  });
}

int sym_degree(const PoissonAlgebra& pa, const Multivector& v) {
  std::size_t n = pa.lr().n();
  int q = 0;
  for (const auto& [S, c] : v.terms())
    for (const auto& [M, a] : c.terms()) {
      int e = 0;
      for (std::size_t k = n; k < pa.nvars(); ++k) e += M[k];
      q = std::max(q, e);
    }
  return q;
}

}  // namespace

NLCochain<TableCochain> phi_map(const PbwExtension& ext, const NLCochain<Multivector>& c, int cap) {
  if (cap > c.cap) throw CapError("Phi at cap " + std::to_string(cap) + " needs an input of cap >= it");
  const LieRinehart& lr = ext.lr();
  auto adj = adjoint_instance(ext.poisson());
  int k = c.degree;
  NLCochain<TableCochain> out;
  out.degree = k;
  out.cap = cap;
  out.phi.resize(static_cast<std::size_t>(k) + 1);
  auto pool = nl::l_pool(lr, cap);
  for (int j = 0; j <= k; ++j) {
    std::size_t m = static_cast<std::size_t>(k - j);
    nl::subsets<LArg>(pool, m, [&](const std::vector<LArg>& key) {
      auto Y = nl::elements(lr, key);
      TableCochain acc = TableCochain::zero(ext.U(), j);
      bool any = false;
      for (std::size_t i = 0; i <= m && static_cast<std::size_t>(j) + i < c.phi.size(); ++i)
        shuffles(m, i, [&](const std::vector<std::size_t>& A, const std::vector<std::size_t>& B, int sg) {
          std::vector<LElement> YA, YB;
          for (auto a : A) YA.push_back(Y[a]);
          for (auto b : B) YB.push_back(Y[b]);
          Multivector v = nl_value(adj, c, static_cast<std::size_t>(j) + i, YB);
          if (v.is_zero()) return;
          TableCochain t = ext.s(YA, v);
          acc = sg > 0 ? acc + t : acc - t;
          any = true;
        });
      if (any) out.phi[static_cast<std::size_t>(j)].emplace(key, acc);
    });
  }
  return out;
}

CheckReport verify_phi(const PbwExtension& ext, const PbwCheckOptions& opt) {
  CheckReport rep;
  rep.checks = {"phi-chain-map", "phi-filtration"};
  const PoissonAlgebra& pa = ext.poisson();
  const LieRinehart& lr = ext.lr();
  auto adj = adjoint_instance(pa);
  HochschildOptions hopt;
  hopt.probe = opt.probe;
  auto hoch = hochschild_instance(ext.algebra(), hopt);
  std::seed_seq ss{opt.seed, std::uint64_t{21}};
  std::mt19937_64 rng(ss);
  int out_cap = 1, in_cap = nl_input_cap(lr, out_cap);
  for (std::size_t t = 0; t < opt.samples && rep.ok; ++t) {
    NLCochain<Multivector> c;
    if (t % 2 == 0) {
      // mixed legs: d/dxi legs become L-arguments of the transported cochain
      int p = static_cast<int>((t / 2) % static_cast<std::size_t>(opt.max_p + 1));
      std::vector<std::size_t> legs(pa.nvars());
      for (std::size_t l = 0; l < legs.size(); ++l) legs[l] = l;
      std::shuffle(legs.begin(), legs.end(), rng);
      LegSet S = 0;
      for (int u = 0; u < p && u < static_cast<int>(legs.size()); ++u)
        S |= LegSet{1} << legs[static_cast<std::size_t>(u)];
      Polynomial coeff = Polynomial::constant(pa.nvars(), 1);
      for (int u = 0; u < opt.max_q; ++u)
        coeff = coeff * pa.from_l(sampling::l_element(rng, lr, opt.coeff_degree));
      Multivector D(pa.nvars(), p);
      D.add(S, coeff + pa.from_r(sampling::poly(rng, lr.n(), opt.coeff_degree)));
      c = adjoint_from_multivector(pa, D, in_cap);
    } else {
      // image of an R-linear cochain with one entry per component
      LinearCochain lin;
      lin.degree = 1 + static_cast<int>((t / 2) % 2);
      lin.c.resize(static_cast<std::size_t>(lin.degree) + 1);
      for (int i = 0; i <= lin.degree; ++i) {
        int m = lin.degree - i;
        if (m > static_cast<int>(lr.d()) || i > static_cast<int>(lr.n())) continue;
        std::vector<std::size_t> K;
        for (int u = 0; u < m; ++u) K.push_back(static_cast<std::size_t>(u));
        LegSet S = 0;
        for (int u = 0; u < i; ++u) S |= LegSet{1} << static_cast<std::size_t>(u);
        Multivector w(pa.nvars(), i);
        Polynomial coeff = pa.from_r(sampling::poly(rng, lr.n(), opt.coeff_degree));
        for (int u = 0; u < opt.max_q; ++u)
          coeff = coeff + pa.from_l(sampling::l_element(rng, lr, opt.coeff_degree));
        w.add(S, coeff);
        lin.c[static_cast<std::size_t>(i)][K] = w;
      }
      c = linear_to_nonlinear(pa, ext.connection(), lin, in_cap);
    }

    auto lhs = phi_map(ext, nl_ce_apply(adj, c, out_cap), out_cap);
    auto rhs = nl_ce_apply(hoch, phi_map(ext, c, in_cap), out_cap);
    std::string diff = nl_compare(hoch, lhs, rhs);
    if (!diff.empty()) {
      rep.ok = false;
      rep.failure = "Phi does not commute with the differentials on a degree " +
                    std::to_string(c.degree) + " cochain: " + diff;
      break;
    }

    int q = 0;
    for (const auto& part : c.phi)
      for (const auto& [key, v] : part) q = std::max(q, sym_degree(pa, v));
    auto image = phi_map(ext, c, out_cap);
    for (std::size_t j = 0; j < image.phi.size() && rep.ok; ++j)
      for (const auto& [key, cochain] : image.phi[j]) {
        nl::tuples_up_to(lr.n(), j, opt.probe, [&](const std::vector<Monomial>& t) {
          if (!rep.ok) return;
          std::vector<Polynomial> args;
          for (const auto& m : t) args.push_back(Polynomial::term(lr.n(), m, 1));
          int f = cochain(args).filtration_degree();
          if (f > q) {
            rep.ok = false;
            rep.failure = "Phi value of filtration " + std::to_string(f) +
                          " from an input of Sym-degree " + std::to_string(q);
          }
        });
        if (!rep.ok) break;
      }
  }
  return rep;
}

std::string phi_nonmember_witness(const PbwExtension& ext, const PbwCheckOptions& opt) {
  const PoissonAlgebra& pa = ext.poisson();
  HochschildOptions hopt;
  hopt.probe = opt.probe;
  auto hoch = hochschild_instance(ext.algebra(), hopt);
  for (int cap = 1; cap <= 2; ++cap)
    for (int p = 1; p <= opt.max_p; ++p) {
      std::vector<std::size_t> all(pa.nvars());
      for (std::size_t l = 0; l < all.size(); ++l) all[l] = l;
      std::vector<LegSet> sets;
      nl::subsets<std::size_t>(all, static_cast<std::size_t>(p), [&](const std::vector<std::size_t>& I) {
        LegSet S = 0;
        for (auto l : I) S |= LegSet{1} << l;
        sets.push_back(S);
      });
      for (LegSet S : sets)
        for (const auto& m : monomials_up_to_degree(pa.nvars(), opt.max_q + 1)) {
          Multivector D(pa.nvars(), p);
          D.add(S, Polynomial::term(pa.nvars(), m, 1));
          auto image = phi_map(ext, adjoint_from_multivector(pa, D, cap), cap);
          auto r = nl_membership(hoch, image);
          if (!r.ok)
            return "Phi(" + to_string(pa, D) + ") at cap " + std::to_string(cap) +
                   " is not a nonlinear cochain: " + r.failure;
        }
    }
  return {};
}

}  // namespace rinehart
