// The universal enveloping algebra U(L,R) in PBW normal form.
#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rinehart/lie_rinehart.hpp"

namespace rinehart {

/// sum f_alpha e^alpha with coefficients on the left and generators in
/// ascending order. Exponent vectors are Monomials over the basis indices.
class UEAElement {
 public:
  UEAElement() = default;
  UEAElement(std::size_t rank, std::size_t nvars) : d_(rank), n_(nvars) {}

  static UEAElement scalar(std::size_t rank, const Polynomial& f);
  static UEAElement generator(std::size_t rank, std::size_t nvars, std::size_t k);
  static UEAElement term(std::size_t rank, const Monomial& alpha, const Polynomial& f);
  static UEAElement from_l(const LElement& X);

  std::size_t rank() const { return d_; }
  std::size_t nvars() const { return n_; }
  const std::map<Monomial, Polynomial>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  /// Maximal |alpha|; -1 for zero.
  int filtration_degree() const;
  Polynomial coefficient(const Monomial& alpha) const;

  void add_term(const Monomial& alpha, const Polynomial& f);
  UEAElement operator+(const UEAElement& o) const;
  UEAElement operator-(const UEAElement& o) const;
  UEAElement operator-() const;
  UEAElement& operator+=(const UEAElement& o);
  UEAElement& operator-=(const UEAElement& o);
  UEAElement operator*(const Rational& c) const;
  /// Left multiplication by r in R (coefficientwise).
  UEAElement left_scaled(const Polynomial& r) const;

  bool operator==(const UEAElement& o) const { return d_ == o.d_ && n_ == o.n_ && t_ == o.t_; }
  bool operator!=(const UEAElement& o) const { return !(*this == o); }

  std::string to_string(const LieRinehart& lr) const;

 private:
  std::size_t d_ = 0, n_ = 0;
  std::map<Monomial, Polynomial> t_;
};

/// Multiplication, symbols and the PBW map for one presentation and
/// connection. Caches are shared and mutex-protected.
class Enveloping {
 public:
  Enveloping(LieRinehart lr, Connection c);

  const LieRinehart& lr() const { return lr_; }
  const Connection& connection() const { return conn_; }

  UEAElement zero() const { return UEAElement(lr_.d(), lr_.n()); }
  UEAElement one() const { return scalar(lr_.one()); }
  UEAElement scalar(const Polynomial& f) const { return UEAElement::scalar(lr_.d(), f); }
  UEAElement gen(std::size_t k) const { return UEAElement::generator(lr_.d(), lr_.n(), k); }
  UEAElement from_l(const LElement& X) const { return UEAElement::from_l(X); }

  UEAElement mul(const UEAElement& a, const UEAElement& b) const;
  /// The same product by a different reduction order (right multiplication
  /// by generators); used to test confluence.
  UEAElement mul_right_first(const UEAElement& a, const UEAElement& b) const;
  UEAElement commutator(const UEAElement& a, const UEAElement& b) const;
  /// e_i * u.
  UEAElement left_mul_gen(std::size_t i, const UEAElement& u) const;

  /// Top filtration part with e_i -> xi_i, over the n + d variables of Sym_R(L).
  Polynomial gr_symbol(const UEAElement& a) const;

  /// The PBW recursion on a symmetric product X_1 ... X_k (K-multilinear).
  UEAElement pbw_product(const std::vector<LElement>& factors) const;
  /// PBW map on Sym_R(L): f xi^beta -> f pbw(e^beta).
  UEAElement pbw(const Polynomial& sym) const;

 private:
  using Key = std::vector<std::pair<Monomial, std::size_t>>;  // sorted factors m e_k

  UEAElement gen_times_monomial(std::size_t i, const Monomial& beta) const;
  UEAElement right_mul_gen(const UEAElement& u, std::size_t j) const;
  UEAElement pbw_key(const Key& key) const;

  LieRinehart lr_;
  Connection conn_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, Monomial>, UEAElement> gen_cache_;
  mutable std::map<Key, UEAElement> pbw_cache_;
};

struct CenterResult {
  std::vector<UEAElement> basis;
  std::size_t unknowns = 0;
  /// Dimension per degree of the grading wt(x_i), wt(e_k) + beta of U;
  /// empty without homogeneous weights.
  std::map<int, std::size_t> by_grading;
};

/// Central elements of U among sum f e^alpha with |alpha| <= filtration_cap,
/// total weight <= weight_cap (when weights are declared) and coefficient
/// degree <= max_degree (when given). Throws std::invalid_argument when the
/// search space is empty or unbounded.
CenterResult center_search(const Enveloping& U, int filtration_cap, int weight_cap,
                           std::optional<int> max_degree = std::nullopt);

/// A derivation U -> U determined by values on the generators x_i of R and
/// the basis e_j of L.
class DerivationExtension {
 public:
  DerivationExtension(const Enveloping& U, std::vector<UEAElement> on_vars,
                      std::vector<UEAElement> on_basis);

  /// The derivation equations on generators; failure names the first witness.
  const CheckReport& report() const { return report_; }
  bool ok() const { return report_.ok; }

  UEAElement phi0(const Polynomial& r) const;
  UEAElement phi1(const LElement& X) const;
  UEAElement apply(const UEAElement& u) const;

 private:
  const Enveloping& U_;
  std::vector<UEAElement> vars_, basis_;
  CheckReport report_;
};

}  // namespace rinehart
