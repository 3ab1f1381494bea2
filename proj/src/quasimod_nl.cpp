// Nonlinear Chevalley-Eilenberg cochains and the comparison with Poisson
// cochains and R-linear cochains.
#include <algorithm>
#include <functional>

#include "rinehart/quasimod.hpp"
#include "nl_tuples.hpp"
#include "sampling.hpp"

namespace rinehart {

namespace {

using nl::elements;
using nl::l_pool;
using nl::larg_element;
using nl::subsets;

template <class E>
bool is_zero_elem(const QuasiModule<E>& inst, const E& v, int degree) {
  return inst.compare(v, inst.zero(degree)).empty();
}

}  // namespace

template <class E>
E nl_value(const QuasiModule<E>& inst, const NLCochain<E>& c, std::size_t i,
           const std::vector<LElement>& args) {
  const LieRinehart& lr = inst.lr;
  E acc = inst.zero(static_cast<int>(i));
  if (i >= c.phi.size()) return acc;
  if (static_cast<int>(args.size()) != c.degree - static_cast<int>(i))
    throw std::invalid_argument("nonlinear cochain evaluated on the wrong number of arguments");
  std::vector<std::vector<std::pair<LArg, Rational>>> expanded;
  for (const auto& X : args) {
    std::vector<std::pair<LArg, Rational>> terms;
    for (std::size_t k = 0; k < lr.d(); ++k)
      for (const auto& [m, v] : X[k].terms()) {
        if (m.degree() > c.cap)
          throw CapError("nonlinear cochain of cap " + std::to_string(c.cap) +
                         " evaluated on an argument of degree " + std::to_string(m.degree()));
        terms.emplace_back(LArg{m, k}, v);
      }
    expanded.push_back(std::move(terms));
  }
  std::vector<LArg> cur;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t pos, const Rational& w) {
    if (pos == expanded.size()) {
      auto key = cur;
      int s = sampling::sort_sign(key);
      if (s == 0) return;
      auto it = c.phi[i].find(key);
      if (it == c.phi[i].end()) return;
      acc = acc + it->second * (s > 0 ? w : -w);
      return;
    }
    for (const auto& [a, v] : expanded[pos]) {
      cur.push_back(a);
      rec(pos + 1, w * v);
      cur.pop_back();
    }
  };
  rec(0, Rational(1));
  return acc;
}

template <class E>
NLCochain<E> nl_ce_apply(const QuasiModule<E>& inst, const NLCochain<E>& c, int out_cap) {
  const LieRinehart& lr = inst.lr;
  int k = c.degree;
  NLCochain<E> out;
  out.degree = k + 1;
  out.cap = out_cap;
  out.phi.resize(static_cast<std::size_t>(k) + 2);
  auto pool = l_pool(lr, out_cap);
  for (int i = 0; i <= k + 1; ++i) {
    std::size_t m = static_cast<std::size_t>(k + 1 - i);
    subsets<LArg>(pool, m, [&](const std::vector<LArg>& key) {
      auto X = elements(lr, key);
      E acc = inst.zero(i);
      if (i <= k) {
        for (std::size_t a = 0; a < m; ++a) {
          std::vector<LElement> rest;
          for (std::size_t b = 0; b < m; ++b)
            if (b != a) rest.push_back(X[b]);
          E v = inst.act_l(X[a], nl_value(inst, c, i, rest));
          acc = (a % 2 == 0) ? acc + v : acc - v;
        }
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = a + 1; b < m; ++b) {
            std::vector<LElement> args{bracket(lr, X[a], X[b])};
            for (std::size_t t = 0; t < m; ++t)
              if (t != a && t != b) args.push_back(X[t]);
            E v = nl_value(inst, c, i, args);
            acc = ((a + b) % 2 == 0) ? acc + v : acc - v;
          }
      }
      if (i >= 1) {
        E v = inst.d(nl_value(inst, c, i - 1, X));
        acc = (m % 2 == 0) ? acc + v : acc - v;
      }
      if (!is_zero_elem(inst, acc, i)) out.phi[i].emplace(key, acc);
    });
  }
  return out;
}

template <class E>
CheckReport nl_membership(const QuasiModule<E>& inst, const NLCochain<E>& c) {
  const LieRinehart& lr = inst.lr;
  CheckReport rep;
  rep.checks.push_back("nonlinearity-constraint");
  auto pool = l_pool(lr, c.cap);
  for (int i = 0; i < c.degree && rep.ok; ++i) {
    std::size_t m = static_cast<std::size_t>(c.degree - i);
    subsets<LArg>(pool, m, [&](const std::vector<LArg>& key) {
      if (!rep.ok) return;
      for (std::size_t a = 0; a < m && rep.ok; ++a)
        for (std::size_t v = 0; v < lr.n() && rep.ok; ++v) {
          if (key[a].first[v] == 0) continue;
          std::vector<LElement> others;
          for (std::size_t b = 0; b < m; ++b)
            if (b != a) others.push_back(larg_element(lr, key[b]));
          LArg smaller{key[a].first / Monomial::unit(v), key[a].second};
          LElement X = larg_element(lr, smaller);
          auto with = [&](const LElement& Z) {
            auto args = others;
            args.push_back(Z);
            return nl_value(inst, c, static_cast<std::size_t>(i), args);
          };
          E lhs = with(larg_element(lr, key[a]));
          E rhs = inst.act_r(lr.x(v), with(X)) +
                  inst.h(lr.x(v), X, nl_value(inst, c, static_cast<std::size_t>(i) + 1, others));
          std::string diff = inst.compare(lhs, rhs);
          if (diff.empty()) continue;
          rep.ok = false;
          rep.failure = "phi_" + std::to_string(i) + " violates the constraint at factor " +
                        lr.vars[v] + " of " + to_string(lr, larg_element(lr, key[a])) + ": " + diff;
        }
    });
  }
  return rep;
}

template <class E>
std::string nl_compare(const QuasiModule<E>& inst, const NLCochain<E>& a, const NLCochain<E>& b) {
  if (a.degree != b.degree) return "degrees differ";
  for (std::size_t i = 0; i < a.phi.size(); ++i) {
    auto keys = a.phi[i];
    for (const auto& [k, v] : b.phi[i]) keys.emplace(k, v);
    for (const auto& [k, unused] : keys) {
      auto args = elements(inst.lr, k);
      E u = nl_value(inst, a, i, args), v = nl_value(inst, b, i, args);
      std::string diff = inst.compare(u, v);
      if (!diff.empty()) return "phi_" + std::to_string(i) + ": " + diff;
    }
  }
  return {};
}

int nl_input_cap(const LieRinehart& lr, int out_cap) {
  int s = 0;
  for (const auto& row : lr.structure)
    for (const auto& X : row)
      for (std::size_t k = 0; k < lr.d(); ++k) s = std::max(s, X[k].degree());
  for (std::size_t k = 0; k < lr.d(); ++k)
    for (std::size_t l = 0; l < lr.n(); ++l)
      s = std::max(s, lr.anchor[k](lr.x(l)).degree() - 1);
  return 2 * out_cap + s;
}

template Multivector nl_value(const QuasiModule<Multivector>&, const NLCochain<Multivector>&,
                              std::size_t, const std::vector<LElement>&);
template NLCochain<Multivector> nl_ce_apply(const QuasiModule<Multivector>&,
                                            const NLCochain<Multivector>&, int);
template CheckReport nl_membership(const QuasiModule<Multivector>&, const NLCochain<Multivector>&);
template std::string nl_compare(const QuasiModule<Multivector>&, const NLCochain<Multivector>&,
                                const NLCochain<Multivector>&);

template TableCochain nl_value(const QuasiModule<TableCochain>&, const NLCochain<TableCochain>&,
                               std::size_t, const std::vector<LElement>&);
template NLCochain<TableCochain> nl_ce_apply(const QuasiModule<TableCochain>&,
                                             const NLCochain<TableCochain>&, int);
template CheckReport nl_membership(const QuasiModule<TableCochain>&,
                                   const NLCochain<TableCochain>&);
template std::string nl_compare(const QuasiModule<TableCochain>&, const NLCochain<TableCochain>&,
                                const NLCochain<TableCochain>&);

}  // namespace rinehart
