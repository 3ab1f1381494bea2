// Extension of the PBW map to the adjoint complex and to nonlinear CE
// cochains: eta tensors, the maps F_Y, pbw~, the homotopies s^n and Phi.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "rinehart/quasimod.hpp"

namespace rinehart {

/// A decomposable adjoint element c D_1 ^ .. ^ D_p (x) X_1 .. X_q.
struct AdjointTerm {
  Rational coeff = 1;
  std::vector<PolyDerivation> D;
  std::vector<LElement> X;
};

/// D_1 ^ .. ^ D_p (x) X_1 .. X_q as a multivector with d/dx legs over Sym_R(L).
Multivector adjoint_element(const PoissonAlgebra& pa, const std::vector<PolyDerivation>& D,
                            const std::vector<LElement>& X);

/// Splits a multivector into decomposable terms m d/dx_I (x) e^beta, with the
/// monomial m of R placed in the first factor (a scalar when p = q = 0).
std::vector<AdjointTerm> adjoint_terms(const PoissonAlgebra& pa, const Multivector& v,
                                       Polynomial* scalar_part);

/// Connection data, the eta tensors and the recursions of the extended PBW
/// map. Values of pbw~ and s^n are memoized on monomial factor tuples and
/// monomial arguments; evaluation is exact, so the cochains carry no cap.
class PbwExtension {
 public:
  PbwExtension(LieRinehart lr, Connection conn);

  const LieRinehart& lr() const { return pa_.lr(); }
  const Connection& connection() const { return conn_; }
  const PoissonAlgebra& poisson() const { return pa_; }
  const std::shared_ptr<const Enveloping>& U() const { return U_; }
  Algebra algebra() const { return {lr(), conn_, std::nullopt}; }

  /// eta_Y(D, X) = [Y, nabla_D X] - nabla_[rho Y, D] X - nabla_D [Y, X].
  LElement eta(const LElement& Y, const PolyDerivation& D, const LElement& X) const;
  /// eta^b_Y(X, D) = [rho Y, nabla_X D] - nabla_[Y,X] D - nabla_X [rho Y, D].
  PolyDerivation eta_b(const LElement& Y, const LElement& X, const PolyDerivation& D) const;
  /// eta^b_Y(X, Z) = [Y, nabla_X Z] - nabla_[Y,X] Z - nabla_X [Y, Z].
  LElement eta_b(const LElement& Y, const LElement& X, const LElement& Z) const;

  /// Basic connection on Der legs and Sym factors.
  Multivector nabla_b(const LElement& X, const Multivector& v) const;
  /// F_Y(D (x) X) = sum_{i,j} (-1)^{i+1} D_(i) (x) eta_Y(D_i, X_j) X_(j).
  Multivector F(const LElement& Y, const Multivector& v) const;

  /// The extended PBW map, normalized by 1/(p+q)! so that it is pbw for p = 0.
  TableCochain pbw_tilde(const Multivector& v) const { return s({}, v); }
  /// s^n_{Y_1..Y_n}(v), a cochain of arity p - n with the same normalization.
  TableCochain s(const std::vector<LElement>& Ys, const Multivector& v) const;
  /// s^n evaluated on one decomposable term with the recursion applied to its
  /// factors literally (no R-linearity is assumed).
  TableCochain s_term(const std::vector<LElement>& Ys, const AdjointTerm& t) const;

 private:
  using Factor = std::pair<Monomial, std::size_t>;  // m d/dx_l, m e_k, or m e_k as Y
  using Key = std::tuple<std::vector<Factor>, std::vector<Factor>, std::vector<Factor>,
                         std::vector<Monomial>>;

  UEAElement value(const std::vector<Factor>& Y, const std::vector<Factor>& D,
                   const std::vector<Factor>& X, const std::vector<Monomial>& args) const;
  UEAElement compute(const std::vector<Factor>& Y, const std::vector<Factor>& D,
                     const std::vector<Factor>& X, const std::vector<Monomial>& args) const;
  UEAElement eval_terms(const std::vector<LElement>& Ys, const std::vector<PolyDerivation>& D,
                        const std::vector<LElement>& X, const std::vector<Monomial>& args) const;

  PoissonAlgebra pa_;
  Connection conn_;
  std::shared_ptr<const Enveloping> U_;
  mutable std::mutex mu_;
  mutable std::map<Key, UEAElement> memo_;
};

// ------------------------------------------------------------- verification

struct PbwCheckOptions {
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  int max_n = 1;
  int max_p = 2;
  int max_q = 2;
  int coeff_degree = 1;  // polynomial degree of sampled coefficients
  int probe = 2;         // total argument degree of compared cochains
};

/// The three relations between the eta tensors and properties (a)-(c) of eta;
/// see docs/signs.md for the extra term in (c).
CheckReport verify_eta(const PbwExtension& ext, const PbwCheckOptions& opt = {});
/// The commutator of L_Y with nabla^b, the anticommutator of F_Y with delta,
/// and [L_Y1, F_Y2] - [L_Y2, F_Y1] = F_[Y1,Y2].
CheckReport verify_F_identities(const PbwExtension& ext, const PbwCheckOptions& opt = {});
/// pbw~ o delta = -b o pbw~, plus R-linearity of the literal recursion.
CheckReport verify_pbw_chain(const PbwExtension& ext, const PbwCheckOptions& opt = {});
/// sum (-1)^{i+1} [L_{Y_i}, s^n_{Y_(i)}] + sum_{i<j} (-1)^{i+j} s^n_{[Y_i,Y_j],..}
///   = b o s^{n+1}_Y + (-1)^{n+1} s^{n+1}_Y o delta, for n <= max_n.
CheckReport verify_identity_tower(const PbwExtension& ext, const PbwCheckOptions& opt = {});

/// Phi(phi)_j = sum_i s^i(phi_{i+j}) on generator tuples of degree <= cap,
/// with s^i(psi)(Y_1..Y_{i+m}) = sum over splits |A| = i of
/// sgn(B, reversed A) s^i_{Y_A}(psi(Y_B)); see docs/signs.md.
NLCochain<TableCochain> phi_map(const PbwExtension& ext, const NLCochain<Multivector>& c, int cap);

/// Chain-map property of Phi on transported multivectors and linear images,
/// and the filtration bound of its values.
CheckReport verify_phi(const PbwExtension& ext, const PbwCheckOptions& opt = {});

/// Searches transported monomial multivectors (1 <= p <= max_p, monomial
/// degree <= max_q + 1, caps 1 and 2) for one whose Phi image fails the
/// nonlinearity constraint; returns its description, or "" when none is found.
std::string phi_nonmember_witness(const PbwExtension& ext, const PbwCheckOptions& opt = {});

}  // namespace rinehart
