#include <functional>
#include <mutex>

#include "rinehart/quasimod.hpp"
#include "nl_tuples.hpp"
#include "sampling.hpp"

namespace rinehart {

namespace {

using Tuple = std::vector<Monomial>;
using nl::tuples_up_to;

UEAElement expand(const Enveloping& U, int cap, const std::vector<Polynomial>& args,
                  const std::function<UEAElement(const Tuple&)>& lookup) {
  UEAElement acc = U.zero();
  Tuple cur;
  std::function<void(std::size_t, const Rational&, int)> rec = [&](std::size_t pos,
                                                                   const Rational& c, int deg) {
    if (pos == args.size()) {
      if (deg > cap)
        throw CapError("cochain table of cap " + std::to_string(cap) +
                       " queried at total degree " + std::to_string(deg));
      UEAElement v = lookup(cur);
      if (!v.is_zero()) acc += v * c;
      return;
    }
    for (const auto& [m, a] : args[pos].terms()) {
      cur.push_back(m);
      rec(pos + 1, c * a, deg + m.degree());
      cur.pop_back();
    }
  };
  rec(0, Rational(1), 0);
  return acc;
}

}  // namespace

TableCochain::TableCochain(std::shared_ptr<const Enveloping> U, int arity, int cap, Eval eval)
    : U_(std::move(U)), arity_(arity), cap_(cap),
      eval_(std::make_shared<const Eval>(std::move(eval))) {}

TableCochain TableCochain::from_table(std::shared_ptr<const Enveloping> U, int arity, int cap,
                                      std::map<Tuple, UEAElement> values) {
  auto table = std::make_shared<const std::map<Tuple, UEAElement>>(std::move(values));
  const Enveloping* u = U.get();
  return TableCochain(U, arity, cap, [u, cap, table](const std::vector<Polynomial>& args) {
    return expand(*u, cap, args, [&](const Tuple& t) {
      auto it = table->find(t);
      return it == table->end() ? u->zero() : it->second;
    });
  });
}

TableCochain TableCochain::generated(std::shared_ptr<const Enveloping> U, int arity, int cap,
                                     Generator gen) {
  struct Memo {
    std::mutex mu;
    std::map<Tuple, UEAElement> values;
  };
  auto memo = std::make_shared<Memo>();
  const Enveloping* u = U.get();
  return TableCochain(U, arity, cap, [u, cap, memo, gen](const std::vector<Polynomial>& args) {
    return expand(*u, cap, args, [&](const Tuple& t) {
      std::lock_guard<std::mutex> lock(memo->mu);
      auto it = memo->values.find(t);
      if (it == memo->values.end()) it = memo->values.emplace(t, gen(t)).first;
      return it->second;
    });
  });
}

TableCochain TableCochain::constant(std::shared_ptr<const Enveloping> U, const UEAElement& u) {
  return TableCochain(U, 0, 1 << 20, [u](const std::vector<Polynomial>&) { return u; });
}

TableCochain TableCochain::zero(std::shared_ptr<const Enveloping> U, int arity) {
  const Enveloping* u = U.get();
  return TableCochain(U, arity, 1 << 20, [u](const std::vector<Polynomial>&) { return u->zero(); });
}

UEAElement TableCochain::operator()(const std::vector<Polynomial>& args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("cochain of arity " + std::to_string(arity_) + " given " +
                                std::to_string(args.size()) + " arguments");
  return (*eval_)(args);
}

TableCochain TableCochain::operator+(const TableCochain& o) const {
  if (arity_ != o.arity_) throw std::invalid_argument("adding cochains of different arity");
  auto a = *this, b = o;
  return TableCochain(U_, arity_, std::min(cap_, o.cap_),
                      [a, b](const std::vector<Polynomial>& x) { return a(x) + b(x); });
}

TableCochain TableCochain::operator-(const TableCochain& o) const { return *this + o * Rational(-1); }

TableCochain TableCochain::operator*(const Rational& c) const {
  auto a = *this;
  return TableCochain(U_, arity_, cap_,
                      [a, c](const std::vector<Polynomial>& x) { return a(x) * c; });
}

int anchor_shift(const LieRinehart& lr, const LElement& X) {
  int s = 0;
  for (std::size_t k = 0; k < lr.d(); ++k) {
    if (X[k].is_zero()) continue;
    for (std::size_t l = 0; l < lr.n(); ++l) {
      Polynomial a = lr.anchor[k](lr.x(l));
      if (!a.is_zero()) s = std::max(s, X[k].degree() + a.degree() - 1);
    }
  }
  return s;
}

TableCochain hochschild_b(const TableCochain& phi) {
  int q = phi.arity();
  if (q < 0) return TableCochain::zero(phi.U_ptr(), q + 1);
  return TableCochain(phi.U_ptr(), q + 1, phi.cap(), [phi, q](const std::vector<Polynomial>& r) {
    const Enveloping& U = phi.U();
    std::vector<Polynomial> tail(r.begin() + 1, r.end());
    UEAElement acc = phi(tail).left_scaled(r[0]);
    for (int i = 1; i <= q; ++i) {
      std::vector<Polynomial> merged;
      for (int a = 0; a < q + 1; ++a) {
        if (a == i) continue;
        merged.push_back(a == i - 1 ? r[a] * r[a + 1] : r[a]);
      }
      UEAElement v = phi(merged);
      if (i % 2) acc -= v;
      else acc += v;
    }
    std::vector<Polynomial> head(r.begin(), r.end() - 1);
    UEAElement last = U.mul(phi(head), U.scalar(r.back()));
    if ((q + 1) % 2) acc -= last;
    else acc += last;
    return acc;
  });
}

TableCochain hochschild_r(const Polynomial& r, const TableCochain& phi) {
  return TableCochain(phi.U_ptr(), phi.arity(), phi.cap(),
                      [phi, r](const std::vector<Polynomial>& a) { return phi(a).left_scaled(r); });
}

TableCochain hochschild_action(const LElement& X, const TableCochain& phi) {
  const LieRinehart& lr = phi.U().lr();
  int cap = phi.cap() - anchor_shift(lr, X);
  return TableCochain(phi.U_ptr(), phi.arity(), cap, [phi, X](const std::vector<Polynomial>& a) {
    const Enveloping& U = phi.U();
    UEAElement acc = U.commutator(U.from_l(X), phi(a));
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto b = a;
      b[i] = anchor_apply(U.lr(), X, a[i]);
      if (b[i].is_zero()) continue;
      acc -= phi(b);
    }
    return acc;
  });
}

TableCochain hochschild_homotopy(const Polynomial& r, const LElement& X, const TableCochain& phi) {
  int q = phi.arity();
  if (q == 0) return TableCochain::zero(phi.U_ptr(), -1);
  const LieRinehart& lr = phi.U().lr();
  int cap = phi.cap() - std::max(r.degree(), 0) - anchor_shift(lr, X);
  return TableCochain(phi.U_ptr(), q - 1, cap, [phi, r, X, q](const std::vector<Polynomial>& a) {
    const Enveloping& U = phi.U();
    UEAElement acc = U.zero();
    // r inserted before slot i (1-based), X applied to a later original slot j >= i
    for (int i = 1; i <= q - 1; ++i)
      for (int j = i; j <= q - 1; ++j) {
        Polynomial Xr = anchor_apply(U.lr(), X, a[j - 1]);
        if (Xr.is_zero()) continue;
        std::vector<Polynomial> b(a.begin(), a.end());
        b[j - 1] = Xr;
        b.insert(b.begin() + (i - 1), r);
        UEAElement v = phi(b);
        if (i % 2) acc += v;
        else acc -= v;
      }
    UEAElement Xu = U.from_l(X);
    for (int i = 1; i <= q; ++i) {
      std::vector<Polynomial> b(a.begin(), a.end());
      b.insert(b.begin() + (i - 1), r);
      UEAElement v = U.mul(phi(b), Xu);
      if (i % 2) acc += v;
      else acc -= v;
    }
    return acc;
  });
}

TableCochain cup_derivation(const PolyDerivation& D, const TableCochain& phi) {
  return TableCochain(phi.U_ptr(), phi.arity() + 1, phi.cap(),
                      [phi, D](const std::vector<Polynomial>& a) {
                        std::vector<Polynomial> tail(a.begin() + 1, a.end());
                        return phi(tail).left_scaled(D(a[0]));
                      });
}

std::string compare_cochains(const TableCochain& a, const TableCochain& b, int probe) {
  if (a.arity() != b.arity())
    return "arity " + std::to_string(a.arity()) + " vs " + std::to_string(b.arity());
  if (a.arity() < 0) return {};
  if (probe > std::min(a.cap(), b.cap()))
    throw CapError("comparison at degree " + std::to_string(probe) +
                   " exceeds the guaranteed budget " + std::to_string(std::min(a.cap(), b.cap())));
  const Enveloping& U = a.U();
  std::size_t n = U.lr().n();
  std::string diff;
  tuples_up_to(n, a.arity(), probe, [&](const Tuple& t) {
    if (!diff.empty()) return;
    std::vector<Polynomial> args;
    for (const auto& m : t) args.push_back(Polynomial::term(n, m, 1));
    UEAElement u = a(args), v = b(args);
    if (u == v) return;
    std::string at;
    for (const auto& p : args) at += (at.empty() ? "" : ", ") + p.to_string(U.lr().vars);
    diff = "at (" + at + "): " + u.to_string(U.lr()) + " vs " + v.to_string(U.lr());
  });
  return diff;
}

QuasiModule<TableCochain> hochschild_instance(const Algebra& alg, const HochschildOptions& opt) {
  auto U = std::make_shared<const Enveloping>(alg.lr, alg.connection);
  QuasiModule<TableCochain> q;
  q.name = "hochschild";
  q.lr = alg.lr;
  q.degree = [](const TableCochain& c) { return c.arity(); };
  q.zero = [U](int p) { return TableCochain::zero(U, p); };
  q.d = [](const TableCochain& c) { return hochschild_b(c); };
  q.act_r = [](const Polynomial& r, const TableCochain& c) { return hochschild_r(r, c); };
  q.act_l = [](const LElement& X, const TableCochain& c) { return hochschild_action(X, c); };
  q.h = [](const Polynomial& r, const LElement& X, const TableCochain& c) {
    return hochschild_homotopy(r, X, c);
  };
  int probe = opt.probe;
  q.compare = [probe](const TableCochain& a, const TableCochain& b) {
    return compare_cochains(a, b, probe);
  };
  q.describe = [](const TableCochain& c) {
    return "cochain of arity " + std::to_string(c.arity());
  };
  int cap = opt.cap, max_arity = opt.max_arity;
  q.sample = [U, cap, max_arity](std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ar(0, max_arity);
    int arity = ar(rng);
    std::uint64_t seed = rng();
    std::size_t n = U->lr().n(), d = U->lr().d();
    return TableCochain::generated(U, arity, cap, [U, seed, n, d](const Tuple& t) {
      std::vector<std::uint32_t> key{static_cast<std::uint32_t>(seed),
                                     static_cast<std::uint32_t>(seed >> 32)};
      for (const auto& m : t)
        for (std::size_t v = 0; v < n; ++v) key.push_back(m[v]);
      std::seed_seq ss(key.begin(), key.end());
      std::mt19937_64 g(ss);
      std::uniform_int_distribution<int> terms(1, 2), filt(0, 1);
      std::uniform_int_distribution<std::size_t> gen(0, d - 1);
      UEAElement u = U->zero();
      int k = terms(g);
      for (int i = 0; i < k; ++i) {
        Monomial a;
        if (filt(g)) a[gen(g)] += 1;
        u.add_term(a, sampling::poly(g, n, 1, 2));
      }
      return u;
    });
  };
  return q;
}

}  // namespace rinehart
