#include "rinehart/poisson.hpp"

#include <algorithm>
#include <functional>

namespace rinehart {

std::vector<std::size_t> legs_of(LegSet s) {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; s; ++u, s >>= 1)
    if (s & 1u) out.push_back(u);
  return out;
}

namespace {

// Sorts in place; returns the permutation sign or 0 on a repeat.
template <class T>
int sort_sign(std::vector<T>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && !(v[j - 1] < v[j]); --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  return sign;
}

LegSet mask_of(const std::vector<std::size_t>& legs) {
  LegSet m = 0;
  for (auto u : legs) m |= LegSet{1} << u;
  return m;
}

// D(y_{us}) on coordinates in the given order.
Polynomial coord_value(const Multivector& D, std::vector<std::size_t> us) {
  int s = sort_sign(us);
  if (s == 0) return Polynomial(D.nvars());
  Polynomial c = D.coefficient(mask_of(us));
  return s > 0 ? c : -c;
}

Polynomial det(std::vector<std::vector<Polynomial>> m, std::size_t nvars) {
  std::size_t k = m.size();
  if (k == 0) return Polynomial::constant(nvars, 1);
  if (k == 1) return m[0][0];
  Polynomial r(nvars);
  for (std::size_t c = 0; c < k; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t a = 1; a < k; ++a) {
      std::vector<Polynomial> row;
      for (std::size_t b = 0; b < k; ++b)
        if (b != c) row.push_back(m[a][b]);
      minor.push_back(std::move(row));
    }
    Polynomial t = m[0][c] * det(std::move(minor), nvars);
    r = (c % 2 == 0) ? r + t : r - t;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- algebra

PoissonAlgebra::PoissonAlgebra(LieRinehart lr) : lr_(std::move(lr)), N_(lr_.n() + lr_.d()) {
  if (N_ > 16) throw std::invalid_argument("Sym_R(L) needs n + d <= 16 coordinates");
  std::size_t n = lr_.n(), d = lr_.d();
  P_.assign(N_, std::vector<Polynomial>(N_, Polynomial(N_)));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial v = lr_.anchor[k].image(j).embed(N_, 0);
      P_[n + k][j] = v;
      P_[j][n + k] = -v;
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) P_[n + i][n + j] = from_l(lr_.structure[i][j]);
  beta_ = rinehart::bracket_weight(lr_);
}

Polynomial PoissonAlgebra::from_l(const LElement& X) const {
  Polynomial r(N_);
  for (std::size_t k = 0; k < X.rank(); ++k)
    if (!X[k].is_zero()) r += X[k].embed(N_, 0) * Polynomial::variable(N_, lr_.n() + k);
  return r;
}

Polynomial PoissonAlgebra::bracket_coordinate(std::size_t u, const Polynomial& f) const {
  Polynomial r(N_);
  for (std::size_t v = 0; v < N_; ++v)
    if (!P_[u][v].is_zero()) r += P_[u][v] * f.derivative(v);
  return r;
}

Polynomial PoissonAlgebra::bracket(const Polynomial& a, const Polynomial& b) const {
  Polynomial r(N_);
  for (std::size_t u = 0; u < N_; ++u) {
    Polynomial da = a.derivative(u);
    if (!da.is_zero()) r += da * bracket_coordinate(u, b);
  }
  return r;
}

std::vector<std::string> PoissonAlgebra::coordinate_names() const {
  std::vector<std::string> names = lr_.vars;
  names.insert(names.end(), lr_.basis.begin(), lr_.basis.end());
  return names;
}

Polynomial evaluate(const Multivector& D, const std::vector<Polynomial>& args) {
  if (static_cast<int>(args.size()) != D.degree())
    throw std::invalid_argument("multivector evaluated on the wrong number of arguments");
  std::size_t N = D.nvars();
  Polynomial r(N);
  for (const auto& [s, c] : D.terms()) {
    auto legs = legs_of(s);
    std::vector<std::vector<Polynomial>> m(legs.size());
    for (std::size_t a = 0; a < legs.size(); ++a)
      for (const auto& g : args) m[a].push_back(g.derivative(legs[a]));
    r += c * det(std::move(m), N);
  }
  return r;
}

Multivector poisson_tensor(const PoissonAlgebra& pa) {
  Multivector P(pa.nvars(), 2);
  for (std::size_t u = 0; u < pa.nvars(); ++u)
    for (std::size_t v = u + 1; v < pa.nvars(); ++v)
      P.add((LegSet{1} << u) | (LegSet{1} << v), pa.bivector(u, v));
  return P;
}

Multivector delta_P(const PoissonAlgebra& pa, const Multivector& D) {
  std::size_t N = pa.nvars();
  int k = D.degree();
  Multivector out(N, k + 1);
  if (k + 1 > static_cast<int>(N)) return out;
  for (LegSet t = 0; t < (LegSet{1} << N); ++t) {
    if (leg_count(t) != k + 1) continue;
    auto us = legs_of(t);
    Polynomial acc(N);
    // sum_i (-1)^i {y_i, D(.. no i ..)}, 1-based i
    for (std::size_t i = 0; i < us.size(); ++i) {
      std::vector<std::size_t> rest;
      for (std::size_t a = 0; a < us.size(); ++a)
        if (a != i) rest.push_back(us[a]);
      Polynomial v = pa.bracket_coordinate(us[i], coord_value(D, rest));
      acc = (i % 2 == 0) ? acc - v : acc + v;
    }
    // - sum_{i<j} (-1)^{i+j} D({y_i, y_j}, ..)
    for (std::size_t i = 0; i < us.size(); ++i)
      for (std::size_t j = i + 1; j < us.size(); ++j) {
        const Polynomial& b = pa.bivector(us[i], us[j]);
        if (b.is_zero()) continue;
        std::vector<std::size_t> rest;
        for (std::size_t a = 0; a < us.size(); ++a)
          if (a != i && a != j) rest.push_back(us[a]);
        Polynomial v(N);
        for (std::size_t w = 0; w < N; ++w) {
          Polynomial db = b.derivative(w);
          if (db.is_zero()) continue;
          std::vector<std::size_t> args{w};
          args.insert(args.end(), rest.begin(), rest.end());
          v += db * coord_value(D, args);
        }
        acc = ((i + j) % 2 == 0) ? acc - v : acc + v;
      }
    out.add(t, acc);
  }
  return out;
}

// ---------------------------------------------------------------- nonlinear

Polynomial NonlinearTuple::value(const PoissonAlgebra& pa, std::size_t i, std::vector<LArg> largs,
                                 std::vector<std::size_t> rargs) const {
  int s = sort_sign(largs) * sort_sign(rargs);
  if (s == 0 || i >= phi.size()) return Polynomial(pa.nvars());
  auto it = phi[i].find({largs, rargs});
  if (it == phi[i].end()) return Polynomial(pa.nvars());
  return s > 0 ? it->second : -it->second;
}

namespace {

std::vector<LArg> l_pool(const PoissonAlgebra& pa, int cap) {
  std::vector<LArg> pool;
  for (const auto& m : monomials_up_to_degree(pa.lr().n(), cap))
    for (std::size_t k = 0; k < pa.lr().d(); ++k) pool.emplace_back(m, k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

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

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Enumerates the domain of phi_i: sorted L-argument tuples and R-variable tuples.
void nl_domain(const PoissonAlgebra& pa, int degree, int cap, std::size_t i,
               const std::function<void(const std::vector<LArg>&,
                                        const std::vector<std::size_t>&)>& f) {
  auto pool = l_pool(pa, cap);
  auto vars = iota_vec(pa.lr().n());
  subsets<LArg>(pool, static_cast<std::size_t>(degree) - i, [&](const std::vector<LArg>& ls) {
    subsets<std::size_t>(vars, i, [&](const std::vector<std::size_t>& rs) { f(ls, rs); });
  });
}

Polynomial larg_poly(const PoissonAlgebra& pa, const LArg& a) {
  return pa.from_l(pa.lr().e(a.second).scaled(Polynomial::term(pa.lr().n(), a.first, 1)));
}

}  // namespace

NonlinearTuple mv_to_nonlinear(const PoissonAlgebra& pa, const Multivector& D, int cap) {
  NonlinearTuple T;
  T.degree = D.degree();
  T.cap = cap;
  T.phi.resize(static_cast<std::size_t>(D.degree()) + 1);
  for (std::size_t i = 0; i < T.phi.size(); ++i)
    nl_domain(pa, T.degree, cap, i, [&](const std::vector<LArg>& ls,
                                        const std::vector<std::size_t>& rs) {
      std::vector<Polynomial> args;
      for (const auto& a : ls) args.push_back(larg_poly(pa, a));
      for (auto v : rs) args.push_back(pa.coordinate(v));
      Polynomial val = evaluate(D, args);
      if (!val.is_zero()) T.phi[i].emplace(std::make_pair(ls, rs), val);
    });
  return T;
}

Multivector nonlinear_to_mv(const PoissonAlgebra& pa, const NonlinearTuple& T) {
  std::size_t n = pa.lr().n(), N = pa.nvars();
  auto names = pa.coordinate_names();
  for (std::size_t i = 0; i + 1 < T.phi.size(); ++i)
    nl_domain(pa, T.degree, T.cap, i, [&](const std::vector<LArg>& ls,
                                          const std::vector<std::size_t>& rs) {
      Polynomial lhs = T.value(pa, i, ls, rs);
      std::size_t q = ls.size();
      for (std::size_t a = 0; a < q; ++a)
        for (std::size_t v = 0; v < n; ++v) {
          if (ls[a].first[v] == 0) continue;
          auto smaller = ls;
          smaller[a].first = ls[a].first / Monomial::unit(v);
          std::vector<LArg> rest;
          for (std::size_t b = 0; b < q; ++b)
            if (b != a) rest.push_back(ls[b]);
          std::vector<std::size_t> r2{v};
          r2.insert(r2.end(), rs.begin(), rs.end());
          Polynomial tail = T.value(pa, i + 1, rest, r2) * pa.coordinate(n + ls[a].second);
          Polynomial rhs = pa.coordinate(v) * T.value(pa, i, smaller, rs) +
                           (((q - 1 - a) % 2 == 0) ? tail : -tail);
          if (lhs != rhs)
            throw NonlinearConstraintError(
                "nonlinearity constraint fails for phi_" + std::to_string(i) + " at factor " +
                names[v] + " of argument " + std::to_string(a + 1));
        }
    });
  Multivector D(N, T.degree);
  for (std::size_t i = 0; i < T.phi.size(); ++i)
    for (const auto& [key, val] : T.phi[i]) {
      const auto& [ls, rs] = key;
      bool generators = std::all_of(ls.begin(), ls.end(),
                                    [](const LArg& a) { return a.first.degree() == 0; });
      if (!generators) continue;
      LegSet s = 0;
      for (const auto& a : ls) s |= LegSet{1} << (n + a.second);
      for (auto v : rs) s |= LegSet{1} << v;
      D.add(s, ((ls.size() * rs.size()) % 2 == 0) ? val : -val);
    }
  return D;
}

}  // namespace rinehart
