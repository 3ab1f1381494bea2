#include "rinehart/quasimod.hpp"
#include "sampling.hpp"

namespace rinehart {

template <class E>
CheckReport quasi_axiom_check(const QuasiModule<E>& inst, const QuasiCheckOptions& opt) {
  CheckReport rep;
  rep.checks = {"d-squared",  "d-compatible",        "leibniz",
                "homotopy",   "homotopy-naturality", "flatness"};
  const LieRinehart& lr = inst.lr;
  std::string witness;

  auto same = [&](const char* law, const E& a, const E& b) {
    std::string diff = inst.compare(a, b);
    if (diff.empty()) return true;
    rep.ok = false;
    rep.failure = std::string(law) + " fails at " + witness + ": " + diff;
    return false;
  };

  auto run = [&](const E& m, const Polynomial& r, const LElement& X, const LElement& Y) {
    witness = "r = " + r.to_string(lr.vars) + ", X = " + to_string(lr, X) +
              ", Y = " + to_string(lr, Y) + ", m = " + inst.describe(m);
    int p = inst.degree(m);
    E dm = inst.d(m);
    if (!same("d-squared", inst.d(dm), inst.zero(p + 2))) return false;
    if (!same("d-compatible", inst.d(inst.act_r(r, m)), inst.act_r(r, dm))) return false;
    if (!same("d-compatible", inst.d(inst.act_l(X, m)), inst.act_l(X, dm))) return false;
    E leib = inst.act_r(r, inst.act_l(X, m)) + inst.act_r(anchor_apply(lr, X, r), m);
    if (!same("leibniz", inst.act_l(X, inst.act_r(r, m)), leib)) return false;
    E htp = inst.act_r(r, inst.act_l(X, m)) + inst.h(r, X, dm) + inst.d(inst.h(r, X, m));
    if (!same("homotopy", inst.act_l(X.scaled(r), m), htp)) return false;
    E nat = inst.h(r, X, inst.act_l(Y, m)) + inst.h(anchor_apply(lr, Y, r), X, m) +
            inst.h(r, bracket(lr, Y, X), m);
    if (!same("homotopy-naturality", inst.act_l(Y, inst.h(r, X, m)), nat)) return false;
    E flat = inst.act_l(X, inst.act_l(Y, m)) - inst.act_l(Y, inst.act_l(X, m));
    return same("flatness", flat, inst.act_l(bracket(lr, X, Y), m));
  };

  try {
    std::mt19937_64 g0(opt.seed);
    for (std::size_t i = 0; i < lr.n(); ++i)
      for (std::size_t k = 0; k < lr.d(); ++k)
        for (int s = 0; s < 3; ++s)
          if (!run(inst.sample(g0), lr.x(i), lr.e(k), lr.e((k + 1) % lr.d()))) return rep;
    for (std::size_t t = 0; t < opt.trials; ++t) {
      std::seed_seq ss{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                       static_cast<std::uint32_t>(t)};
      std::mt19937_64 rng(ss);
      E m = inst.sample(rng);
      Polynomial r = sampling::poly(rng, lr.n(), opt.max_degree);
      LElement X = sampling::l_element(rng, lr, opt.max_degree);
      LElement Y = sampling::l_element(rng, lr, opt.max_degree);
      if (!run(m, r, X, Y)) return rep;
    }
  } catch (const CapError& e) {
    rep.ok = false;
    rep.failure = "cap exhausted at " + witness + ": " + e.what();
  }
  return rep;
}

template <class E>
QuasiModule<E> with_zero_homotopy(QuasiModule<E> inst) {
  auto zero = inst.zero;
  auto degree = inst.degree;
  inst.name += " (h = 0)";
  inst.h = [zero, degree](const Polynomial&, const LElement&, const E& m) {
    return zero(degree(m) - 1);
  };
  return inst;
}

template CheckReport quasi_axiom_check(const QuasiModule<Multivector>&, const QuasiCheckOptions&);
template CheckReport quasi_axiom_check(const QuasiModule<TableCochain>&, const QuasiCheckOptions&);
template QuasiModule<Multivector> with_zero_homotopy(QuasiModule<Multivector>);
template QuasiModule<TableCochain> with_zero_homotopy(QuasiModule<TableCochain>);

}  // namespace rinehart
