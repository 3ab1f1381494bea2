// Quasi-modules: cochain complexes with R- and L-actions that agree only up
// to homotopies h_{r,X}; the adjoint and Hochschild instances, nonlinear
// Chevalley-Eilenberg cochains, and CE cohomology of honest modules.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rinehart/algebra_io.hpp"
#include "rinehart/poisson.hpp"
#include "rinehart/uea.hpp"

namespace rinehart {

/// An operator needed a table value beyond the degree cap it was built with.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operator bundle of a quasi-module with elements E.
template <class E>
struct QuasiModule {
  std::string name;
  LieRinehart lr;
  std::function<int(const E&)> degree;
  std::function<E(int)> zero;
  std::function<E(const E&)> d;
  std::function<E(const Polynomial&, const E&)> act_r;
  std::function<E(const LElement&, const E&)> act_l;
  std::function<E(const Polynomial&, const LElement&, const E&)> h;
  /// Empty when equal, otherwise a description of the difference.
  std::function<std::string(const E&, const E&)> compare;
  std::function<std::string(const E&)> describe;
  std::function<E(std::mt19937_64&)> sample;
};

// ------------------------------------------------------------------ adjoint

/// Sym(ad L) as multivectors over Sym_R(L) with legs d/dx only; the module
/// differential is -delta.
QuasiModule<Multivector> adjoint_instance(const PoissonAlgebra& pa);

/// delta(c d/dx_I) = sum_j sum_l rho(e_j)(x_l) (dc/dxi_j) d/dx_l ^ d/dx_I.
Multivector adjoint_delta(const PoissonAlgebra& pa, const Multivector& m);
Multivector adjoint_action(const PoissonAlgebra& pa, const LElement& X, const Multivector& m);
Multivector adjoint_homotopy(const PoissonAlgebra& pa, const Polynomial& r, const LElement& X,
                             const Multivector& m);

// --------------------------------------------------------------- hochschild

/// A cochain R^{(x)q} -> U. Base tables hold values on monomial tuples of
/// total degree <= cap; composite cochains are evaluated lazily and record
/// the budget within which evaluation is guaranteed.
class TableCochain {
 public:
  using Eval = std::function<UEAElement(const std::vector<Polynomial>&)>;
  using Generator = std::function<UEAElement(const std::vector<Monomial>&)>;

  TableCochain() = default;
  TableCochain(std::shared_ptr<const Enveloping> U, int arity, int cap, Eval eval);

  /// Values on monomial tuples; missing entries are zero.
  static TableCochain from_table(std::shared_ptr<const Enveloping> U, int arity, int cap,
                                 std::map<std::vector<Monomial>, UEAElement> values);
  /// Values produced on first query and memoized.
  static TableCochain generated(std::shared_ptr<const Enveloping> U, int arity, int cap,
                                Generator gen);
  static TableCochain constant(std::shared_ptr<const Enveloping> U, const UEAElement& u);
  static TableCochain zero(std::shared_ptr<const Enveloping> U, int arity);

  int arity() const { return arity_; }
  int cap() const { return cap_; }
  const Enveloping& U() const { return *U_; }
  const std::shared_ptr<const Enveloping>& U_ptr() const { return U_; }

  /// Multilinear evaluation; throws CapError beyond a base table's cap.
  UEAElement operator()(const std::vector<Polynomial>& args) const;

  TableCochain operator+(const TableCochain& o) const;
  TableCochain operator-(const TableCochain& o) const;
  TableCochain operator*(const Rational& c) const;

 private:
  std::shared_ptr<const Enveloping> U_;
  int arity_ = 0;
  int cap_ = 0;
  std::shared_ptr<const Eval> eval_;
};

/// Degree increase of X(m) over deg m for monomials m; 0 when X acts by zero.
int anchor_shift(const LieRinehart& lr, const LElement& X);

TableCochain hochschild_b(const TableCochain& phi);
TableCochain hochschild_r(const Polynomial& r, const TableCochain& phi);
/// (L_X phi)(r_1..r_q) = [X, phi(r_1..r_q)] - sum_i phi(.., X(r_i), ..).
TableCochain hochschild_action(const LElement& X, const TableCochain& phi);
/// h_{r,X}; see docs/signs.md for the ranges and signs.
TableCochain hochschild_homotopy(const Polynomial& r, const LElement& X, const TableCochain& phi);
/// (D cup phi)(r_0, .., r_q) = D(r_0) phi(r_1, .., r_q).
TableCochain cup_derivation(const PolyDerivation& D, const TableCochain& phi);

struct HochschildOptions {
  int cap = 8;          // cap of sampled base tables
  int probe = 1;        // total argument degree compared pointwise
  int max_arity = 2;    // arity of sampled cochains
};

/// Compares cochains on every monomial tuple of total degree <= probe.
std::string compare_cochains(const TableCochain& a, const TableCochain& b, int probe);

QuasiModule<TableCochain> hochschild_instance(const Algebra& alg, const HochschildOptions& opt = {});

// --------------------------------------------------------------- the laws

struct QuasiCheckOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  int max_degree = 3;  // polynomial degree of sampled r and coefficients of X, Y
};

/// d^2 = 0; d commutes with r and L_X; Leibniz; the homotopy formula for
/// L_{rX}; naturality of h under L_Y. Flatness [L_X, L_Y] = L_[X,Y] is
/// checked as well. Generator pairs (x_i, e_k) are tried before the seeded
/// random trials, so a failure names the simplest witness.
template <class E>
CheckReport quasi_axiom_check(const QuasiModule<E>& inst, const QuasiCheckOptions& opt = {});

/// The same operators with h replaced by zero.
template <class E>
QuasiModule<E> with_zero_homotopy(QuasiModule<E> inst);

extern template CheckReport quasi_axiom_check(const QuasiModule<Multivector>&,
                                              const QuasiCheckOptions&);
extern template CheckReport quasi_axiom_check(const QuasiModule<TableCochain>&,
                                              const QuasiCheckOptions&);
extern template QuasiModule<Multivector> with_zero_homotopy(QuasiModule<Multivector>);
extern template QuasiModule<TableCochain> with_zero_homotopy(QuasiModule<TableCochain>);

// ------------------------------------------------------- nonlinear cochains

/// (phi_0, .., phi_k): phi_i takes k - i L-arguments m e_j with deg m <= cap,
/// stored on sorted distinct tuples, and values in module degree i.
template <class E>
struct NLCochain {
  int degree = 0;
  int cap = 0;
  std::vector<std::map<std::vector<LArg>, E>> phi;
};

/// phi_i on arbitrary L-elements, extended K-multilinearly and alternating.
template <class E>
E nl_value(const QuasiModule<E>& inst, const NLCochain<E>& c, std::size_t i,
           const std::vector<LElement>& args);

/// Total differential delta_CE + (-1)^{CE degree} d on generator tuples of
/// degree <= out_cap.
template <class E>
NLCochain<E> nl_ce_apply(const QuasiModule<E>& inst, const NLCochain<E>& c, int out_cap);

/// The nonlinearity constraint phi_i(.., r X) - r phi_i(..X) =
/// h_{r,X} phi_{i+1}(..) for every stored tuple and r a variable.
template <class E>
CheckReport nl_membership(const QuasiModule<E>& inst, const NLCochain<E>& c);

template <class E>
std::string nl_compare(const QuasiModule<E>& inst, const NLCochain<E>& a, const NLCochain<E>& b);

/// Input cap that suffices for nl_ce_apply at out_cap.
int nl_input_cap(const LieRinehart& lr, int out_cap);

extern template Multivector nl_value(const QuasiModule<Multivector>&, const NLCochain<Multivector>&,
                                     std::size_t, const std::vector<LElement>&);
extern template NLCochain<Multivector> nl_ce_apply(const QuasiModule<Multivector>&,
                                                   const NLCochain<Multivector>&, int);
extern template CheckReport nl_membership(const QuasiModule<Multivector>&,
                                          const NLCochain<Multivector>&);
extern template std::string nl_compare(const QuasiModule<Multivector>&,
                                       const NLCochain<Multivector>&,
                                       const NLCochain<Multivector>&);

extern template TableCochain nl_value(const QuasiModule<TableCochain>&,
                                      const NLCochain<TableCochain>&, std::size_t,
                                      const std::vector<LElement>&);
extern template NLCochain<TableCochain> nl_ce_apply(const QuasiModule<TableCochain>&,
                                                    const NLCochain<TableCochain>&, int);
extern template CheckReport nl_membership(const QuasiModule<TableCochain>&,
                                          const NLCochain<TableCochain>&);
extern template std::string nl_compare(const QuasiModule<TableCochain>&,
                                       const NLCochain<TableCochain>&,
                                       const NLCochain<TableCochain>&);

/// phi_i(X_1..X_{k-i}) = sum_I D(X_1..X_{k-i}, x_I) d/dx_I.
NLCochain<Multivector> adjoint_from_multivector(const PoissonAlgebra& pa, const Multivector& D,
                                                int cap);
/// Reads D back from generator entries.
Multivector adjoint_to_multivector(const PoissonAlgebra& pa, const NLCochain<Multivector>& c);

/// Cohomology of the nonlinear CE complex of the adjoint instance, per cell
/// weight (as poisson_cohomology), computed with nl_ce_apply.
std::vector<TableEntry> nonlinear_ce_cohomology(const PoissonAlgebra& pa, int max_weight,
                                                int max_degree);

// ------------------------------------------------- linear to nonlinear

/// An R-linear cochain (c_0..c_k) of L with values in Sym(ad L): c_i on
/// increasing basis tuples of length k - i, valued in degree-i elements.
struct LinearCochain {
  int degree = 0;
  std::vector<std::map<std::vector<std::size_t>, Multivector>> c;
};

/// sigma(D)(X) = sum_l D(x_l) nabla_{d/dx_l} X for D : R -> Sym_R(L).
Polynomial splitting_apply(const PoissonAlgebra& pa, const Connection& conn,
                           const std::vector<Polynomial>& D_on_vars, const LElement& X);

/// phi_i = c_i + sum_j (-1)^{m-j} sigma(c_{i+1}(.., X_j omitted, .., -, ..))(X_j)
/// + (terms feeding several X_j through sigma at once); see docs/signs.md.
NLCochain<Multivector> linear_to_nonlinear(const PoissonAlgebra& pa, const Connection& conn,
                                           const LinearCochain& c, int cap);
/// Inverse of linear_to_nonlinear, read from generator entries top-down.
LinearCochain nonlinear_to_linear(const PoissonAlgebra& pa, const Connection& conn,
                                  const NLCochain<Multivector>& phi);

// ------------------------------------------------------- CE cohomology

/// An honest module over a Lie algebra (R = K), split into finite weight
/// pieces; action[k] is the matrix of e_k on the piece.
struct CEModule {
  struct Piece {
    int weight = 0;
    std::size_t dim = 0;
    std::vector<std::vector<std::vector<Rational>>> action;
  };
  std::string name;
  std::vector<Piece> pieces;
};

CEModule ce_trivial_module(const LieRinehart& lr);
/// Sym^q g for q <= max_weight under the adjoint action; weight q.
CEModule ce_sym_adjoint_module(const LieRinehart& lr, int max_weight);
/// A single piece of weight 0 from matrices.
CEModule ce_custom_module(const LieRinehart& lr,
                          std::vector<std::vector<std::vector<Rational>>> action);

/// H^k(g; M) per weight piece for k <= max_degree. Throws std::invalid_argument
/// when R has variables (the module would not be weight-finite) or the
/// matrices do not define a module.
std::vector<TableEntry> ce_cohomology(const LieRinehart& lr, const CEModule& M, int max_degree);

}  // namespace rinehart
