// Seeded element generators used by the property harnesses. Coefficients
// come from {-2..2}.
#pragma once

#include <random>
#include <vector>

#include "rinehart/lie_rinehart.hpp"

namespace rinehart::sampling {

inline Polynomial poly(std::mt19937_64& rng, std::size_t nvars, int max_degree,
                       int max_terms = 3) {
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, nvars ? nvars - 1 : 0);
  PolyBuilder b(nvars);
  int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m;
    int k = nvars ? deg(rng) : 0;
    for (int p = 0; p < k; ++p) m[var(rng)] += 1;
    b.add(m, coef(rng));
  }
  return b.build();
}

inline LElement l_element(std::mt19937_64& rng, const LieRinehart& lr, int max_degree) {
  LElement X = lr.zero();
  for (std::size_t k = 0; k < lr.d(); ++k) X[k] = poly(rng, lr.n(), max_degree, 2);
  return X;
}

// Sorts in place; returns the permutation sign, 0 on a repeat.
template <class T>
int sort_sign(std::vector<T>& v) {
  int s = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && !(v[j - 1] < v[j]); --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      s = -s;
    }
  return s;
}

}  // namespace rinehart::sampling
