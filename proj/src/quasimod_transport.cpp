// Nonlinear cochains of the adjoint quasi-module compared with multivectors
// and with R-linear cochains.
#include <algorithm>
#include <functional>

#include "rinehart/quasimod.hpp"
#include "sampling.hpp"

namespace rinehart {

namespace {

int below(LegSet s, std::size_t u) { return leg_count(s & ((LegSet{1} << u) - 1)); }

template <class T>
void subsets(const std::vector<T>& pool, std::size_t k,
             const std::function<void(const std::vector<T>&)>& f) {
  std::vector<T> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      f(cur);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

std::vector<LArg> l_pool(const LieRinehart& lr, int cap) {
  std::vector<LArg> pool;
  for (const auto& m : monomials_up_to_degree(lr.n(), cap))
    for (std::size_t k = 0; k < lr.d(); ++k) pool.emplace_back(m, k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::size_t> range(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

LegSet to_set(const std::vector<std::size_t>& legs, std::size_t offset = 0) {
  LegSet s = 0;
  for (auto u : legs) s |= LegSet{1} << (offset + u);
  return s;
}

// Contraction of x_l into the first slot.
Multivector first_slot(const Multivector& W, std::size_t l) {
  Multivector r(W.nvars(), W.degree() - 1);
  for (const auto& [s, c] : W.terms()) {
    if (!(s & (LegSet{1} << l))) continue;
    r.add(s & ~(LegSet{1} << l), below(s, l) % 2 == 0 ? c : -c);
  }
  return r;
}

// c_i on arbitrary L-elements, extended R-linearly.
Multivector linear_value(const PoissonAlgebra& pa, const LinearCochain& c, std::size_t i,
                         const std::vector<LElement>& args) {
  const auto& lr = pa.lr();
  Multivector acc(pa.nvars(), static_cast<int>(i));
  if (i >= c.c.size()) return acc;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, const Polynomial&)> rec = [&](std::size_t pos,
                                                                const Polynomial& f) {
    if (pos == args.size()) {
      auto key = idx;
      int s = sampling::sort_sign(key);
      if (s == 0) return;
      auto it = c.c[i].find(key);
      if (it == c.c[i].end()) return;
      acc = acc + it->second.scaled(pa.from_r(s > 0 ? f : -f));
      return;
    }
    for (std::size_t k = 0; k < lr.d(); ++k) {
      if (args[pos][k].is_zero()) continue;
      idx.push_back(k);
      rec(pos + 1, f * args[pos][k]);
      idx.pop_back();
    }
  };
  rec(0, lr.one());
  return acc;
}

// Sum over nonempty J of the terms where every X_j, j in J, is fed through
// the splitting: c_{i+|J|}(X_{J^c}, x_{l_1}, .., x_{l_|J|}, ..) prod nabla_{l_j} X_j,
// signed by the shuffle (X_{J^c}, X_J). For |J| = 1 this is the one-step
// formula sum_j (-1)^{m-j} sigma(c_{i+1}(.., X_j omitted, .., -, ..))(X_j).
Multivector splitting_terms(const PoissonAlgebra& pa, const Connection& conn,
                            const std::function<Multivector(std::size_t, const std::vector<LElement>&)>& upper,
                            const std::vector<LElement>& X, int degree) {
  const auto& lr = pa.lr();
  std::size_t m = X.size(), n = lr.n();
  std::vector<std::vector<Polynomial>> nab(m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < n; ++l)
      nab[j].push_back(pa.from_l(nabla(lr, conn, PolyDerivation::partial(n, l), X[j])));
  Multivector acc(pa.nvars(), degree);
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<LElement> rest;
    std::vector<std::size_t> J;
    int inversions = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (std::size_t{1} << j)) {
        J.push_back(j);
      } else {
        rest.push_back(X[j]);
        inversions += static_cast<int>(J.size());
      }
    }
    Multivector W = upper(J.size(), rest);
    if (W.is_zero()) continue;
    // contract x_{l_1} into the first slot, then x_{l_2}, ...
    std::function<void(std::size_t, const Multivector&, const Polynomial&)> rec =
        [&](std::size_t pos, const Multivector& V, const Polynomial& f) {
          if (pos == J.size()) {
            Multivector t = V.scaled(f);
            acc = (inversions % 2 == 0) ? acc + t : acc - t;
            return;
          }
          for (std::size_t l = 0; l < n; ++l) {
            if (nab[J[pos]][l].is_zero()) continue;
            Multivector V2 = first_slot(V, l);
            if (V2.is_zero()) continue;
            rec(pos + 1, V2, f * nab[J[pos]][l]);
          }
        };
    rec(0, W, Polynomial::constant(pa.nvars(), 1));
  }
  return acc;
}

}  // namespace

NLCochain<Multivector> adjoint_from_multivector(const PoissonAlgebra& pa, const Multivector& D,
                                                int cap) {
  const auto& lr = pa.lr();
  std::size_t N = pa.nvars(), n = lr.n();
  NLCochain<Multivector> out;
  out.degree = D.degree();
  out.cap = cap;
  out.phi.resize(static_cast<std::size_t>(D.degree()) + 1);
  auto pool = l_pool(lr, cap);
  auto vars = range(n);
  for (int i = 0; i <= D.degree(); ++i) {
    subsets<LArg>(pool, static_cast<std::size_t>(D.degree() - i), [&](const std::vector<LArg>& key) {
      std::vector<Polynomial> largs;
      for (const auto& a : key)
        largs.push_back(pa.from_l(lr.e(a.second).scaled(Polynomial::term(n, a.first, 1))));
      Multivector v(N, i);
      subsets<std::size_t>(vars, static_cast<std::size_t>(i), [&](const std::vector<std::size_t>& I) {
        auto args = largs;
        for (auto u : I) args.push_back(pa.coordinate(u));
        v.add(to_set(I), evaluate(D, args));
      });
      if (!v.is_zero()) out.phi[static_cast<std::size_t>(i)].emplace(key, v);
    });
  }
  return out;
}

Multivector adjoint_to_multivector(const PoissonAlgebra& pa, const NLCochain<Multivector>& c) {
  std::size_t n = pa.lr().n();
  Multivector D(pa.nvars(), c.degree);
  for (std::size_t i = 0; i < c.phi.size(); ++i)
    for (const auto& [key, v] : c.phi[i]) {
      if (!std::all_of(key.begin(), key.end(), [](const LArg& a) { return a.first.degree() == 0; }))
        continue;
      std::vector<std::size_t> ks;
      for (const auto& a : key) ks.push_back(a.second);
      LegSet K = to_set(ks, n);
      bool odd = (i * key.size()) % 2 == 1;
      for (const auto& [s, f] : v.terms()) D.add(s | K, odd ? -f : f);
    }
  return D;
}

std::vector<TableEntry> nonlinear_ce_cohomology(const PoissonAlgebra& pa, int max_weight,
                                                int max_degree) {
  auto inst = adjoint_instance(pa);
  int cap = nl_input_cap(pa.lr(), 0);
  auto w = pa.weights();
  auto beta = pa.bracket_weight();
  if (!w || !weights_positive(*w) || !beta)
    throw WeightError("nonlinear CE slices need positive weights and a homogeneous bracket");
  std::size_t N = pa.nvars();
  auto op = [&](const Multivector& D) {
    return adjoint_to_multivector(pa, nl_ce_apply(inst, adjoint_from_multivector(pa, D, cap), 0));
  };
  auto matrix = [&](const std::vector<std::pair<LegSet, Monomial>>& from,
                    const std::vector<std::pair<LegSet, Monomial>>& to, int from_degree) {
    std::map<std::pair<LegSet, Monomial>, std::size_t> index;
    for (std::size_t i = 0; i < to.size(); ++i) index.emplace(to[i], i);
    SparseMatrixQ M(to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j) {
      Multivector x(N, from_degree);
      x.add(from[j].first, Polynomial::term(N, from[j].second, 1));
      Multivector y = op(x);
      for (const auto& [s, c] : y.terms())
        for (const auto& [m, v] : c.terms()) {
          auto it = index.find({s, m});
          if (it == index.end()) throw std::logic_error("nonlinear differential left its slice");
          M.add(it->second, j, v);
        }
    }
    return M;
  };
  std::vector<int> sorted_w(w->begin(), w->end());
  std::sort(sorted_w.rbegin(), sorted_w.rend());
  std::vector<TableEntry> out;
  int top = std::min<int>(max_degree, static_cast<int>(N));
  for (int p = 0; p <= top; ++p) {
    int lowest = 0;
    for (int k = 0; k < p; ++k) lowest -= sorted_w[k];
    for (int c = lowest; c <= max_weight; ++c) {
      auto b0 = multivector_basis(pa, p - 1, c - *beta), b1 = multivector_basis(pa, p, c),
           b2 = multivector_basis(pa, p + 1, c + *beta);
      ComplexSlice s;
      s.dims = {b0.size(), b1.size(), b2.size()};
      s.maps = {matrix(b0, b1, p - 1), matrix(b1, b2, p)};
      out.push_back({"nonlinear-ce", c, p, cohomology_dims(s)[1]});
    }
  }
  return out;
}

Polynomial splitting_apply(const PoissonAlgebra& pa, const Connection& conn,
                           const std::vector<Polynomial>& D_on_vars, const LElement& X) {
  const auto& lr = pa.lr();
  Polynomial acc(pa.nvars());
  for (std::size_t l = 0; l < lr.n(); ++l)
    acc += D_on_vars[l] *
           pa.from_l(nabla(lr, conn, PolyDerivation::partial(lr.n(), l), X));
  return acc;
}

NLCochain<Multivector> linear_to_nonlinear(const PoissonAlgebra& pa, const Connection& conn,
                                           const LinearCochain& c, int cap) {
  const auto& lr = pa.lr();
  NLCochain<Multivector> out;
  out.degree = c.degree;
  out.cap = cap;
  out.phi.resize(static_cast<std::size_t>(c.degree) + 1);
  auto pool = l_pool(lr, cap);
  for (int i = 0; i <= c.degree; ++i) {
    auto upper = [&](std::size_t extra, const std::vector<LElement>& args) {
      return linear_value(pa, c, static_cast<std::size_t>(i) + extra, args);
    };
    subsets<LArg>(pool, static_cast<std::size_t>(c.degree - i), [&](const std::vector<LArg>& key) {
      std::vector<LElement> X;
      for (const auto& a : key) X.push_back(lr.e(a.second).scaled(Polynomial::term(lr.n(), a.first, 1)));
      Multivector v = linear_value(pa, c, static_cast<std::size_t>(i), X) +
                      splitting_terms(pa, conn, upper, X, i);
      if (!v.is_zero()) out.phi[static_cast<std::size_t>(i)].emplace(key, v);
    });
  }
  return out;
}

LinearCochain nonlinear_to_linear(const PoissonAlgebra& pa, const Connection& conn,
                                  const NLCochain<Multivector>& phi) {
  const auto& lr = pa.lr();
  LinearCochain c;
  c.degree = phi.degree;
  c.c.resize(static_cast<std::size_t>(phi.degree) + 1);
  auto basis = range(lr.d());
  for (int i = phi.degree; i >= 0; --i) {
    auto upper = [&](std::size_t extra, const std::vector<LElement>& args) {
      return linear_value(pa, c, static_cast<std::size_t>(i) + extra, args);
    };
    subsets<std::size_t>(basis, static_cast<std::size_t>(phi.degree - i),
                         [&](const std::vector<std::size_t>& K) {
      std::vector<LArg> key;
      std::vector<LElement> X;
      for (auto k : K) {
        key.emplace_back(Monomial{}, k);
        X.push_back(lr.e(k));
      }
      auto it = phi.phi[static_cast<std::size_t>(i)].find(key);
      Multivector v = it == phi.phi[static_cast<std::size_t>(i)].end()
                          ? Multivector(pa.nvars(), i)
                          : it->second;
      v = v - splitting_terms(pa, conn, upper, X, i);
      if (!v.is_zero()) c.c[static_cast<std::size_t>(i)].emplace(K, v);
    });
  }
  return c;
}

}  // namespace rinehart
