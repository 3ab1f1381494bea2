// Lie-Rinehart algebras presented over a polynomial ring with free L.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rinehart/exact.hpp"

namespace rinehart {

/// An element sum_k f_k e_k of L.
class LElement {
 public:
  LElement() = default;
  LElement(std::size_t rank, std::size_t nvars) : c_(rank, Polynomial(nvars)) {}
  explicit LElement(std::vector<Polynomial> coeffs) : c_(std::move(coeffs)) {}

  static LElement basis(std::size_t rank, std::size_t nvars, std::size_t k);

  std::size_t rank() const { return c_.size(); }
  const Polynomial& operator[](std::size_t k) const { return c_[k]; }
  Polynomial& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Polynomial>& coeffs() const { return c_; }
  bool is_zero() const;

  LElement operator+(const LElement& o) const;
  LElement operator-(const LElement& o) const;
  LElement operator-() const;
  LElement& operator+=(const LElement& o) { return *this = *this + o; }
  LElement& operator-=(const LElement& o) { return *this = *this - o; }
  LElement scaled(const Polynomial& f) const;
  LElement operator*(const Rational& c) const;

  bool operator==(const LElement& o) const { return c_ == o.c_; }
  bool operator!=(const LElement& o) const { return c_ != o.c_; }
  bool operator<(const LElement& o) const { return c_ < o.c_; }

 private:
  std::vector<Polynomial> c_;
};

struct LieRinehart {
  std::string name;
  std::vector<std::string> vars;   // generators of R
  std::vector<std::string> basis;  // free basis of L
  std::vector<PolyDerivation> anchor;
  /// structure[i][j] = coefficients of [e_i, e_j]; antisymmetric, full table.
  std::vector<std::vector<LElement>> structure;
  /// Weights of x_1..x_n followed by those of e_1..e_d, when declared.
  std::optional<WeightVector> weights;

  std::size_t n() const { return vars.size(); }
  std::size_t d() const { return basis.size(); }

  LElement zero() const { return LElement(d(), n()); }
  LElement e(std::size_t k) const { return LElement::basis(d(), n(), k); }
  Polynomial poly_zero() const { return Polynomial(n()); }
  Polynomial x(std::size_t i) const { return Polynomial::variable(n(), i); }
  Polynomial one() const { return Polynomial::constant(n(), 1); }

  /// Checks shapes and antisymmetry of the structure table; throws
  /// std::invalid_argument naming the offending entry.
  void validate_structure() const;

  bool operator==(const LieRinehart& o) const;
};

/// Derivation rho(X) of R.
PolyDerivation anchor_of(const LieRinehart& lr, const LElement& X);
/// rho(X)(f).
Polynomial anchor_apply(const LieRinehart& lr, const LElement& X, const Polynomial& f);
/// Bracket extended from the basis by R-bilinearity and the Leibniz rule.
LElement bracket(const LieRinehart& lr, const LElement& X, const LElement& Y);

/// Weight of the bracket: wt{a,b} = wt a + wt b + beta on Sym_R(L).
/// Returns nullopt when weights are absent or the bracket is not homogeneous;
/// `witness` receives the first inhomogeneous entry.
std::optional<int> bracket_weight(const LieRinehart& lr, std::string* witness = nullptr);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> checks;  // names of the checks run, in order
  std::string failure;              // first counterexample
};

/// Anchor morphism and Jacobi on basis triples; weight homogeneity when
/// weights are declared. Basis checks suffice: the anchor defect is
/// R-bilinear, and the Jacobiator is R-trilinear once the anchor is a morphism.
CheckReport check_axioms(const LieRinehart& lr);

/// A connection on L along Der(R): gamma[i][j] = nabla_{d/dx_i}(e_j).
struct Connection {
  std::vector<std::vector<LElement>> gamma;

  static Connection trivial(const LieRinehart& lr);
  bool is_trivial() const;
};

/// nabla_D(X) for a derivation D of R.
LElement nabla(const LieRinehart& lr, const Connection& c, const PolyDerivation& D,
               const LElement& X);
/// Curvature of nabla: [nabla_D1, nabla_D2] - nabla_[D1,D2] applied to X.
LElement connection_curvature(const LieRinehart& lr, const Connection& c,
                              const PolyDerivation& D1, const PolyDerivation& D2,
                              const LElement& X);

/// nabla^L_X(Y) = nabla_{rho Y} X + [X, Y].
LElement basic_nabla_L(const LieRinehart& lr, const Connection& c, const LElement& X,
                       const LElement& Y);
/// nabla^Der_X(D) = rho(nabla_D X) + [rho X, D].
PolyDerivation basic_nabla_der(const LieRinehart& lr, const Connection& c, const LElement& X,
                               const PolyDerivation& D);
/// K^b(X,Y)(D); see docs/signs.md for the convention.
LElement basic_curvature(const LieRinehart& lr, const Connection& c, const LElement& X,
                         const LElement& Y, const PolyDerivation& D);
/// [nabla^L_X, nabla^L_Y] Z - nabla^L_[X,Y] Z.
LElement basic_curvature_L(const LieRinehart& lr, const Connection& c, const LElement& X,
                           const LElement& Y, const LElement& Z);
/// [nabla^Der_X, nabla^Der_Y] D - nabla^Der_[X,Y] D.
PolyDerivation basic_curvature_der(const LieRinehart& lr, const Connection& c, const LElement& X,
                                   const LElement& Y, const PolyDerivation& D);

/// The adjoint representation up to homotopy D = rho + nabla^b + K^b on
/// cochains of total degree <= 2 whose values have coefficients of degree
/// <= degree_cap: checks D^2 = 0 exactly.
CheckReport ruth_check(const LieRinehart& lr, const Connection& c, int degree_cap);

/// Builds a presentation whose anchor is the given fields; brackets are
/// solved exactly over R. Throws std::invalid_argument with a witness when the
/// fields are dependent or a commutator leaves their span.
LieRinehart from_vector_fields(const std::vector<std::string>& vars,
                               const std::vector<std::string>& basis,
                               const std::vector<PolyDerivation>& fields);

/// Semidirect product R x g for g acting by linear vector fields:
/// rho(e_k)(x_a) = sum_b action[k][a][b] x_b. Throws on a non-morphism.
LieRinehart from_action(const std::vector<std::string>& vars,
                        const std::vector<std::string>& basis,
                        const std::vector<std::vector<std::vector<Rational>>>& constants,
                        const std::vector<std::vector<std::vector<Rational>>>& action);

std::string to_string(const LieRinehart& lr, const LElement& X);
std::string to_string(const LieRinehart& lr, const PolyDerivation& D);

}  // namespace rinehart
