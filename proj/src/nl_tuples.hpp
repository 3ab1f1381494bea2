// Generator tuples m e_k for nonlinear cochains and monomial argument tuples
// for Hochschild cochains.
#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "rinehart/poisson.hpp"

namespace rinehart::nl {

inline std::vector<LArg> l_pool(const LieRinehart& lr, int cap) {
  std::vector<LArg> pool;
  for (const auto& m : monomials_up_to_degree(lr.n(), cap))
    for (std::size_t k = 0; k < lr.d(); ++k) pool.emplace_back(m, k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Increasing k-subsets of pool.
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

inline LElement larg_element(const LieRinehart& lr, const LArg& a) {
  return lr.e(a.second).scaled(Polynomial::term(lr.n(), a.first, 1));
}

inline std::vector<LElement> elements(const LieRinehart& lr, const std::vector<LArg>& args) {
  std::vector<LElement> out;
  for (const auto& a : args) out.push_back(larg_element(lr, a));
  return out;
}

// Tuples of arity monomials in nvars variables with total degree <= budget.
inline void tuples_up_to(std::size_t nvars, std::size_t arity, int budget,
                         const std::function<void(const std::vector<Monomial>&)>& f) {
  std::vector<Monomial> cur;
  std::function<void(int)> rec = [&](int left) {
    if (cur.size() == arity) {
      f(cur);
      return;
    }
    for (const auto& m : monomials_up_to_degree(nvars, left)) {
      cur.push_back(m);
      rec(left - m.degree());
      cur.pop_back();
    }
  };
  rec(budget);
}

}  // namespace rinehart::nl
