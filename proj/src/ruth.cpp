// D = rho + nabla^b + K^b on Omega(L; L + Der(R)) for free L, with cochains
// stored by their values on increasing basis tuples.
#include <functional>
#include <map>

#include "rinehart/lie_rinehart.hpp"

namespace rinehart {

namespace {

using Tuple = std::vector<std::size_t>;

// Sorts `t` in place; returns the permutation sign, 0 on a repeated index.
int sort_sign(Tuple& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) return 0;
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  return sign;
}

void increasing_tuples(std::size_t d, std::size_t k, const std::function<void(const Tuple&)>& f) {
  Tuple t(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      f(t);
      return;
    }
    for (std::size_t i = start; i < d; ++i) {
      t[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

template <class V>
struct Alt {
  std::size_t degree = 0;
  std::map<Tuple, V> values;
  V zero;

  V eval(Tuple t) const {
    int s = sort_sign(t);
    if (s == 0) return zero;
    auto it = values.find(t);
    if (it == values.end()) return zero;
    return s > 0 ? it->second : it->second * Rational(-1);
  }
  bool is_zero() const {
    for (const auto& [t, v] : values)
      if (!v.is_zero()) return false;
    return true;
  }
};

Tuple without(const Tuple& t, std::size_t a, std::size_t b = SIZE_MAX) {
  Tuple r;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (i != a && i != b) r.push_back(t[i]);
  return r;
}

// Covariant CE differential for an L-connection `act` on the value module.
template <class V>
Alt<V> covariant_d(const LieRinehart& lr, const Alt<V>& w,
                   const std::function<V(const LElement&, const V&)>& act) {
  Alt<V> out{w.degree + 1, {}, w.zero};
  increasing_tuples(lr.d(), w.degree + 1, [&](const Tuple& t) {
    V acc = w.zero;
    for (std::size_t a = 0; a < t.size(); ++a) {
      V v = act(lr.e(t[a]), w.eval(without(t, a)));
      acc = (a % 2 == 0) ? acc + v : acc - v;
    }
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b) {
        const LElement& c = lr.structure[t[a]][t[b]];
        Tuple rest = without(t, a, b);
        for (std::size_t m = 0; m < lr.d(); ++m) {
          if (c[m].is_zero()) continue;
          Tuple args{m};
          args.insert(args.end(), rest.begin(), rest.end());
          V v = w.eval(args).scaled(c[m]);
          acc = ((a + b) % 2 == 0) ? acc + v : acc - v;
        }
      }
    if (!acc.is_zero()) out.values[t] = acc;
  });
  return out;
}

struct AdCochain {
  Alt<LElement> l;         // degree k
  Alt<PolyDerivation> der; // degree k - 1 (ignored at k = 0)
  std::size_t k = 0;
};

AdCochain ruth_apply(const LieRinehart& lr, const Connection& c, const AdCochain& w) {
  AdCochain out;
  out.k = w.k + 1;
  int sign = (w.k % 2 == 0) ? 1 : -1;
  out.l = covariant_d<LElement>(lr, w.l, [&](const LElement& X, const LElement& v) {
    return basic_nabla_L(lr, c, X, v);
  });
  out.der.zero = PolyDerivation(lr.n());
  out.der.degree = w.k;
  if (w.k >= 1) {
    out.der = covariant_d<PolyDerivation>(lr, w.der, [&](const LElement& X,
                                                         const PolyDerivation& v) {
      return basic_nabla_der(lr, c, X, v);
    });
    // K ^ der : pairs (a<b) in front with shuffle sign (-1)^(a+b+1), 1-based
    increasing_tuples(lr.d(), w.k + 1, [&](const Tuple& t) {
      LElement acc = lr.zero();
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b) {
          PolyDerivation D = w.der.eval(without(t, a, b));
          if (D.is_zero()) continue;
          LElement v = basic_curvature(lr, c, lr.e(t[a]), lr.e(t[b]), D);
          acc = ((a + b) % 2 == 1) ? acc + v : acc - v;  // 0-based a+b odd <=> 1-based even
        }
      if (!acc.is_zero()) {
        LElement& slot = out.l.values.try_emplace(t, lr.zero()).first->second;
        slot = sign > 0 ? slot - acc : slot + acc;
        if (slot.is_zero()) out.l.values.erase(t);
      }
    });
  }
  for (const auto& [t, v] : w.l.values) {
    PolyDerivation r = anchor_of(lr, v);
    if (r.is_zero()) continue;
    PolyDerivation& slot = out.der.values.try_emplace(t, PolyDerivation(lr.n())).first->second;
    slot = sign > 0 ? slot + r : slot - r;
    if (slot.is_zero()) out.der.values.erase(t);
  }
  return out;
}

}  // namespace

CheckReport ruth_check(const LieRinehart& lr, const Connection& c, int degree_cap) {
  CheckReport rep;
  rep.checks.push_back("ruth-D-squared");
  auto monos = monomials_up_to_degree(lr.n(), degree_cap);
  auto fail = [&](std::size_t k, const std::string& what) {
    rep.ok = false;
    rep.failure = "D^2 != 0 on a degree-" + std::to_string(k) + " cochain: " + what;
  };
  for (std::size_t k = 0; k <= 2 && rep.ok; ++k) {
    // L-valued basis cochains
    increasing_tuples(lr.d(), k, [&](const Tuple& t) {
      for (std::size_t j = 0; j < lr.d() && rep.ok; ++j)
        for (const auto& m : monos) {
          AdCochain w;
          w.k = k;
          w.l = {k, {}, lr.zero()};
          w.der = {k ? k - 1 : 0, {}, PolyDerivation(lr.n())};
          w.l.values[t] = lr.e(j).scaled(Polynomial::term(lr.n(), m, 1));
          AdCochain dd = ruth_apply(lr, c, ruth_apply(lr, c, w));
          if (!dd.l.is_zero() || !dd.der.is_zero()) {
            fail(k, "value " + to_string(lr, w.l.values[t]) + " on L-tuple");
            return;
          }
        }
    });
    if (k == 0) continue;
    increasing_tuples(lr.d(), k - 1, [&](const Tuple& t) {
      for (std::size_t i = 0; i < lr.n() && rep.ok; ++i)
        for (const auto& m : monos) {
          AdCochain w;
          w.k = k;
          w.l = {k, {}, lr.zero()};
          w.der = {k - 1, {}, PolyDerivation(lr.n())};
          w.der.values[t] = PolyDerivation::partial(lr.n(), i).scaled(Polynomial::term(lr.n(), m, 1));
          AdCochain dd = ruth_apply(lr, c, ruth_apply(lr, c, w));
          if (!dd.l.is_zero() || !dd.der.is_zero()) {
            fail(k, "Der-valued " + w.der.values[t].to_string(lr.vars));
            return;
          }
        }
    });
  }
  return rep;
}

}  // namespace rinehart
