// Weight-sliced complexes on Sym_R(L): Poisson cohomology, Kahler forms with
// L_P, the cyclic mixed complex, the duality cap and the Euler contraction.
#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "rinehart/poisson.hpp"

namespace rinehart {

namespace {

using Basis = std::vector<std::pair<LegSet, Monomial>>;

const WeightVector& positive_weights(const PoissonAlgebra& pa) {
  if (!pa.weights() || !weights_positive(*pa.weights()))
    throw WeightError(
        "weight slices need positive weights on every coordinate; use the capped Casimir "
        "search or the capped center search for non-positive weights");
  return *pa.weights();
}

int require_beta(const PoissonAlgebra& pa) {
  positive_weights(pa);
  auto b = pa.bracket_weight();
  if (!b) throw WeightError("the bracket is not weight-homogeneous");
  return *b;
}

int leg_weight(LegSet s, const WeightVector& w) {
  int t = 0;
  for (auto u : legs_of(s)) t += w[u];
  return t;
}

int below(LegSet s, std::size_t u) { return leg_count(s & ((LegSet{1} << u) - 1)); }

template <class LM>
SparseMatrixQ matrix_of(std::size_t N, const Basis& from, const Basis& to,
                        const std::function<LM(const LM&)>& op, int from_degree) {
  std::map<std::pair<LegSet, Monomial>, std::size_t> index;
  for (std::size_t i = 0; i < to.size(); ++i) index.emplace(to[i], i);
  SparseMatrixQ M(to.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j) {
    LM x(N, from_degree);
    x.add(from[j].first, Polynomial::term(N, from[j].second, 1));
    LM y = op(x);
    for (const auto& [s, c] : y.terms())
      for (const auto& [m, v] : c.terms()) {
        auto it = index.find({s, m});
        if (it == index.end()) throw std::logic_error("operator left its weight slice");
        M.add(it->second, j, v);
      }
  }
  return M;
}

Basis enumerate_legs(std::size_t N, int degree, const WeightVector& w,
                     const std::function<int(LegSet)>& mono_weight) {
  Basis out;
  if (degree < 0 || degree > static_cast<int>(N)) return out;
  for (LegSet s = 0; s < (LegSet{1} << N); ++s) {
    if (leg_count(s) != degree) continue;
    for (const auto& m : monomials_of_weight(N, w, mono_weight(s))) out.emplace_back(s, m);
  }
  return out;
}

}  // namespace

Basis multivector_basis(const PoissonAlgebra& pa, int degree, int weight) {
  const auto& w = positive_weights(pa);
  return enumerate_legs(pa.nvars(), degree, w,
                        [&](LegSet s) { return weight + leg_weight(s, w); });
}

Basis form_basis(const PoissonAlgebra& pa, int degree, int weight) {
  const auto& w = positive_weights(pa);
  return enumerate_legs(pa.nvars(), degree, w,
                        [&](LegSet s) { return weight - leg_weight(s, w); });
}

std::vector<TableEntry> poisson_cohomology(const PoissonAlgebra& pa, int max_weight,
                                           int max_degree) {
  int beta = require_beta(pa);
  const auto& w = *pa.weights();
  std::size_t N = pa.nvars();
  std::vector<int> sorted_w(w.begin(), w.end());
  std::sort(sorted_w.rbegin(), sorted_w.rend());
  std::function<Multivector(const Multivector&)> op = [&](const Multivector& D) {
    return delta_P(pa, D);
  };
  std::vector<TableEntry> out;
  int top = std::min<int>(max_degree, static_cast<int>(N));
  for (int p = 0; p <= top; ++p) {
    int lowest = 0;
    for (int k = 0; k < p; ++k) lowest -= sorted_w[k];
    for (int c = lowest; c <= max_weight; ++c) {
      ComplexSlice s;
      Basis b0 = multivector_basis(pa, p - 1, c - beta), b1 = multivector_basis(pa, p, c),
            b2 = multivector_basis(pa, p + 1, c + beta);
      s.dims = {b0.size(), b1.size(), b2.size()};
      s.maps = {matrix_of<Multivector>(N, b0, b1, op, p - 1),
                matrix_of<Multivector>(N, b1, b2, op, p)};
      out.push_back({"poisson", c, p, cohomology_dims(s)[1]});
    }
  }
  return out;
}

// ---------------------------------------------------------------- forms

KahlerForm kahler_d(const Polynomial& f) {
  KahlerForm r(f.nvars(), 1);
  for (std::size_t u = 0; u < f.nvars(); ++u) r.add(LegSet{1} << u, f.derivative(u));
  return r;
}

KahlerForm kahler_d(const KahlerForm& w) {
  std::size_t N = w.nvars();
  KahlerForm r(N, w.degree() + 1);
  for (const auto& [s, c] : w.terms())
    for (std::size_t u = 0; u < N; ++u) {
      if (s & (LegSet{1} << u)) continue;
      Polynomial dc = c.derivative(u);
      if (dc.is_zero()) continue;
      // dy_u ^ dy_S, moved into place
      r.add(s | (LegSet{1} << u), (below(s, u) % 2 == 0) ? dc : -dc);
    }
  return r;
}

namespace {

// iota_{d/dy_u}
KahlerForm contract(const KahlerForm& w, std::size_t u) {
  KahlerForm r(w.nvars(), w.degree() - 1);
  for (const auto& [s, c] : w.terms()) {
    if (!(s & (LegSet{1} << u))) continue;
    r.add(s & ~(LegSet{1} << u), (below(s, u) % 2 == 0) ? c : -c);
  }
  return r;
}

}  // namespace

KahlerForm iota_P(const PoissonAlgebra& pa, const KahlerForm& w) {
  std::size_t N = pa.nvars();
  KahlerForm r(N, w.degree() - 2);
  if (w.degree() < 2) return r;
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t v = u + 1; v < N; ++v) {
      const Polynomial& p = pa.bivector(u, v);
      if (p.is_zero()) continue;
      r = r + contract(contract(w, u), v).scaled(p);
    }
  return r;
}

KahlerForm L_P(const PoissonAlgebra& pa, const KahlerForm& w) {
  KahlerForm a = iota_P(pa, kahler_d(w));
  if (w.degree() < 2) return a;
  return a - kahler_d(iota_P(pa, w));
}

std::vector<TableEntry> poisson_homology(const PoissonAlgebra& pa, int max_weight) {
  int beta = require_beta(pa);
  std::size_t N = pa.nvars();
  std::function<KahlerForm(const KahlerForm&)> op = [&](const KahlerForm& w) {
    return L_P(pa, w);
  };
  std::vector<TableEntry> out;
  for (int m = 0; m <= static_cast<int>(N); ++m)
    for (int c = 0; c <= max_weight; ++c) {
      ComplexSlice s;
      Basis b0 = form_basis(pa, m + 1, c - beta), b1 = form_basis(pa, m, c),
            b2 = form_basis(pa, m - 1, c + beta);
      s.dims = {b0.size(), b1.size(), b2.size()};
      s.maps = {matrix_of<KahlerForm>(N, b0, b1, op, m + 1),
                matrix_of<KahlerForm>(N, b1, b2, op, m)};
      out.push_back({"poisson-homology", c, m, cohomology_dims(s)[1]});
    }
  return out;
}

// ---------------------------------------------------------------- cyclic

namespace {

struct CyclicCell {
  int slot;
  LegSet legs;
  Monomial m;
  bool operator<(const CyclicCell& o) const {
    return std::tie(slot, legs, m) < std::tie(o.slot, o.legs, o.m);
  }
};

// Basis of the total degree-m, weight-c part of Omega[u] truncated at u^J.
std::vector<CyclicCell> cyclic_basis(const PoissonAlgebra& pa, int m, int c, int beta, int J) {
  std::vector<CyclicCell> out;
  if (m < 0) return out;
  for (int j = 0; j <= J && m - 2 * j >= 0; ++j)
    for (const auto& [s, mono] : form_basis(pa, m - 2 * j, c + j * beta))
      out.push_back({j, s, mono});
  return out;
}

// (D x)_j = L_P x_j + d x_{j+1}
SparseMatrixQ cyclic_matrix(const PoissonAlgebra& pa, const std::vector<CyclicCell>& from,
                            const std::vector<CyclicCell>& to) {
  std::size_t N = pa.nvars();
  std::map<CyclicCell, std::size_t> index;
  for (std::size_t i = 0; i < to.size(); ++i) index.emplace(to[i], i);
  SparseMatrixQ M(to.size(), from.size());
  auto put = [&](std::size_t col, int slot, const KahlerForm& y) {
    for (const auto& [s, c] : y.terms())
      for (const auto& [m, v] : c.terms()) {
        auto it = index.find({slot, s, m});
        if (it == index.end()) throw std::logic_error("cyclic differential left its slice");
        M.add(it->second, col, v);
      }
  };
  for (std::size_t j = 0; j < from.size(); ++j) {
    KahlerForm x(N, leg_count(from[j].legs));
    x.add(from[j].legs, Polynomial::term(N, from[j].m, 1));
    put(j, from[j].slot, L_P(pa, x));
    if (from[j].slot > 0) put(j, from[j].slot - 1, kahler_d(x));
  }
  return M;
}

std::vector<TableEntry> cyclic_table(const PoissonAlgebra& pa, int max_weight, int J, int beta,
                                     int top_degree) {
  std::vector<TableEntry> out;
  int lowest = std::min(0, -J * beta);
  for (int m = 0; m <= top_degree; ++m)
    for (int c = lowest; c <= max_weight; ++c) {
      auto b0 = cyclic_basis(pa, m + 1, c - beta, beta, J);
      auto b1 = cyclic_basis(pa, m, c, beta, J);
      auto b2 = cyclic_basis(pa, m - 1, c + beta, beta, J);
      ComplexSlice s;
      s.dims = {b0.size(), b1.size(), b2.size()};
      s.maps = {cyclic_matrix(pa, b0, b1), cyclic_matrix(pa, b1, b2)};
      out.push_back({"cyclic", c, m, cohomology_dims(s)[1]});
    }
  return out;
}

}  // namespace

CyclicResult cyclic_homology(const PoissonAlgebra& pa, int max_weight, int u_cap) {
  int beta = require_beta(pa);
  if (u_cap < 1) throw std::invalid_argument("u cap must be at least 1");
  CyclicResult r;
  int top = 2 * u_cap - 2;
  r.entries = cyclic_table(pa, max_weight, u_cap, beta, top);
  auto prev = cyclic_table(pa, max_weight, u_cap - 1, beta, top);
  std::map<std::pair<int, int>, std::size_t> before;
  for (const auto& e : prev) before[{e.degree, e.weight}] = e.dimension;
  r.stabilized = true;
  for (const auto& e : r.entries) {
    auto it = before.find({e.degree, e.weight});
    std::size_t b = it == before.end() ? 0 : it->second;
    if (b != e.dimension) r.stabilized = false;
  }
  return r;
}

// ---------------------------------------------------------------- duality

KahlerForm duality_cap(const Multivector& D) {
  std::size_t N = D.nvars();
  LegSet all = (LegSet{1} << N) - 1;
  KahlerForm r(N, static_cast<int>(N) - D.degree());
  for (const auto& [s, c] : D.terms()) {
    // sign of the shuffle (S, complement) -> sorted
    int inv = 0;
    for (auto u : legs_of(s)) inv += leg_count(~s & all & ((LegSet{1} << u) - 1));
    r.add(all & ~s, (inv % 2 == 0) ? c : -c);
  }
  return r;
}

CheckReport duality_rank_check(const PoissonAlgebra& pa, int max_weight) {
  const auto& w = positive_weights(pa);
  std::size_t N = pa.nvars();
  int total = 0;
  for (int x : w) total += x;
  CheckReport rep;
  rep.checks.push_back("duality-cap-rank");
  std::vector<int> sorted_w(w.begin(), w.end());
  std::sort(sorted_w.rbegin(), sorted_w.rend());
  std::function<KahlerForm(const Multivector&)> cap = [](const Multivector& D) {
    return duality_cap(D);
  };
  for (int p = 0; p <= static_cast<int>(N) && rep.ok; ++p) {
    int lowest = 0;
    for (int k = 0; k < p; ++k) lowest -= sorted_w[k];
    for (int c = lowest; c <= max_weight && rep.ok; ++c) {
      Basis from = multivector_basis(pa, p, c);
      Basis to = form_basis(pa, static_cast<int>(N) - p, c + total);
      std::map<std::pair<LegSet, Monomial>, std::size_t> index;
      for (std::size_t i = 0; i < to.size(); ++i) index.emplace(to[i], i);
      SparseMatrixQ M(to.size(), from.size());
      for (std::size_t j = 0; j < from.size(); ++j) {
        Multivector x(N, p);
        x.add(from[j].first, Polynomial::term(N, from[j].second, 1));
        KahlerForm y = cap(x);
        for (const auto& [s, cf] : y.terms())
          for (const auto& [m, v] : cf.terms()) M.add(index.at({s, m}), j, v);
      }
      std::size_t r = rank(M);
      if (r != from.size() || r != to.size()) {
        rep.ok = false;
        rep.failure = "duality cap not bijective at degree " + std::to_string(p) + ", weight " +
                      std::to_string(c);
      }
    }
  }
  return rep;
}

}  // namespace rinehart
