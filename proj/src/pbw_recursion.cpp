// The recursions for pbw~ and s^n on monomial factor tuples. With t = p + q,
// s^{n,p,q} = (1/t) (cup terms + X_j s - s nabla^b_{X_j} + F terms), the
// unnormalized recursion divided by t!. Every term drops t by one.
#include <algorithm>
#include <functional>

#include "rinehart/pbw_ext.hpp"
#include "sampling.hpp"

namespace rinehart {

namespace {

using Factor = std::pair<Monomial, std::size_t>;
using Expansion = std::vector<std::pair<Factor, Rational>>;

Expansion expand(const PolyDerivation& D) {
  Expansion out;
  for (std::size_t l = 0; l < D.nvars(); ++l)
    for (const auto& [m, c] : D.image(l).terms()) out.emplace_back(Factor{m, l}, c);
  return out;
}

Expansion expand(const LElement& X) {
  Expansion out;
  for (std::size_t k = 0; k < X.rank(); ++k)
    for (const auto& [m, c] : X[k].terms()) out.emplace_back(Factor{m, k}, c);
  return out;
}

template <class T>
std::vector<T> without(const std::vector<T>& v, std::size_t i) {
  std::vector<T> r;
  for (std::size_t a = 0; a < v.size(); ++a)
    if (a != i) r.push_back(v[a]);
  return r;
}

// Calls f on every choice of one term per expansion with the product weight.
void product(const std::vector<Expansion>& ex,
             const std::function<void(const std::vector<Factor>&, const Rational&)>& f) {
  std::vector<Factor> cur;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t a, const Rational& w) {
    if (a == ex.size()) {
      f(cur, w);
      return;
    }
    for (const auto& [fac, c] : ex[a]) {
      cur.push_back(fac);
      rec(a + 1, w * c);
      cur.pop_back();
    }
  };
  rec(0, Rational(1));
}

void monomial_tuples(const std::vector<Polynomial>& args,
                     const std::function<void(const std::vector<Monomial>&, const Rational&)>& f) {
  std::vector<Monomial> cur;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t a, const Rational& w) {
    if (a == args.size()) {
      f(cur, w);
      return;
    }
    for (const auto& [m, c] : args[a].terms()) {
      cur.push_back(m);
      rec(a + 1, w * c);
      cur.pop_back();
    }
  };
  rec(0, Rational(1));
}

}  // namespace

UEAElement PbwExtension::eval_terms(const std::vector<LElement>& Ys,
                                    const std::vector<PolyDerivation>& D,
                                    const std::vector<LElement>& X,
                                    const std::vector<Monomial>& args) const {
  std::vector<Expansion> ex;
  for (const auto& Y : Ys) ex.push_back(expand(Y));
  for (const auto& Di : D) ex.push_back(expand(Di));
  for (const auto& Xj : X) ex.push_back(expand(Xj));
  UEAElement acc = U_->zero();
  std::size_t n = Ys.size(), p = D.size();
  product(ex, [&](const std::vector<Factor>& f, const Rational& w) {
    std::vector<Factor> y(f.begin(), f.begin() + n), dd(f.begin() + n, f.begin() + n + p),
        xx(f.begin() + n + p, f.end());
    acc += value(y, dd, xx, args) * w;
  });
  return acc;
}

UEAElement PbwExtension::value(const std::vector<Factor>& Y, const std::vector<Factor>& D,
                               const std::vector<Factor>& X,
                               const std::vector<Monomial>& args) const {
  auto y = Y, d = D, x = X;
  int sg = sampling::sort_sign(y) * sampling::sort_sign(d);
  if (sg == 0) return U_->zero();
  std::sort(x.begin(), x.end());
  Key key{y, d, x, args};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return sg > 0 ? it->second : -it->second;
  }
  UEAElement v = compute(y, d, x, args);
  {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(std::move(key), v);
  }
  return sg > 0 ? v : -v;
}

UEAElement PbwExtension::compute(const std::vector<Factor>& Y, const std::vector<Factor>& D,
                                 const std::vector<Factor>& X,
                                 const std::vector<Monomial>& args) const {
  const LieRinehart& L = lr();
  std::size_t nv = L.n();
  std::size_t n = Y.size(), p = D.size(), q = X.size();
  if (p < n || args.size() != p - n)
    throw std::logic_error("s: arity does not match the factor counts");
  if (p + q == 0) return U_->one();

  auto der = [&](const Factor& f) {
    return PolyDerivation::partial(nv, f.second).scaled(Polynomial::term(nv, f.first, 1));
  };
  auto elem = [&](const Factor& f) { return L.e(f.second).scaled(Polynomial::term(nv, f.first, 1)); };
  std::vector<LElement> Ys;
  for (const auto& f : Y) Ys.push_back(elem(f));
  std::vector<PolyDerivation> Ds;
  for (const auto& f : D) Ds.push_back(der(f));
  std::vector<LElement> Xs;
  for (const auto& f : X) Xs.push_back(elem(f));

  UEAElement acc = U_->zero();
  if (!args.empty()) {
    std::vector<Monomial> tail(args.begin() + 1, args.end());
    Polynomial r0 = Polynomial::term(nv, args[0], 1);
    for (std::size_t a = 0; a < p; ++a) {
      Polynomial g = Ds[a](r0);
      if (g.is_zero()) continue;
      UEAElement v = value(Y, without(D, a), X, tail).left_scaled(g);
      if ((a + n) % 2 == 0) acc += v;
      else acc -= v;
    }
  }
  for (std::size_t j = 0; j < q; ++j) {
    auto rest = without(X, j);
    acc += U_->mul(U_->from_l(Xs[j]), value(Y, D, rest, args));
    auto restX = without(Xs, j);
    for (std::size_t a = 0; a < p; ++a) {
      auto D2 = Ds;
      D2[a] = basic_nabla_der(L, conn_, Xs[j], Ds[a]);
      acc -= eval_terms(Ys, D2, restX, args);
    }
    for (std::size_t b = 0; b < restX.size(); ++b) {
      auto X2 = restX;
      X2[b] = basic_nabla_L(L, conn_, Xs[j], restX[b]);
      acc -= eval_terms(Ys, Ds, X2, args);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    auto Yrest = without(Ys, a);
    bool plus = (a + 1 + n) % 2 == 0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) {
        auto X2 = without(Xs, j);
        X2.push_back(eta(Ys[a], Ds[i], Xs[j]));
        UEAElement v = eval_terms(Yrest, without(Ds, i), X2, args);
        if (plus == (i % 2 == 0)) acc += v;
        else acc -= v;
      }
  }
  return acc * Rational(1, static_cast<unsigned long>(p + q));
}

TableCochain PbwExtension::s_term(const std::vector<LElement>& Ys, const AdjointTerm& t) const {
  std::size_t n = Ys.size(), p = t.D.size();
  if (p < n) throw std::invalid_argument("s^n needs at least n derivation legs");
  return TableCochain(U_, static_cast<int>(p - n), 1 << 20,
                      [this, Ys, t](const std::vector<Polynomial>& args) {
                        UEAElement acc = U_->zero();
                        monomial_tuples(args, [&](const std::vector<Monomial>& m, const Rational& w) {
                          acc += eval_terms(Ys, t.D, t.X, m) * (w * t.coeff);
                        });
                        return acc;
                      });
}

TableCochain PbwExtension::s(const std::vector<LElement>& Ys, const Multivector& v) const {
  std::size_t n = Ys.size(), p = static_cast<std::size_t>(v.degree());
  if (p < n) throw std::invalid_argument("s^n needs at least n derivation legs");
  Polynomial scalar;
  auto terms = adjoint_terms(pa_, v, &scalar);
  return TableCochain(U_, static_cast<int>(p - n), 1 << 20,
                      [this, Ys, terms, scalar](const std::vector<Polynomial>& args) {
                        UEAElement acc = U_->zero();
                        if (Ys.empty() && !scalar.is_zero()) acc += U_->scalar(scalar);
                        monomial_tuples(args, [&](const std::vector<Monomial>& m, const Rational& w) {
                          for (const auto& t : terms)
                            acc += eval_terms(Ys, t.D, t.X, m) * (w * t.coeff);
                        });
                        return acc;
                      });
}

}  // namespace rinehart
