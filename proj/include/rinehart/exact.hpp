// Exact rational arithmetic, multivariate polynomials and weight gradings.
//
// Polynomials are immutable-by-convention values over Q in a fixed number of
// variables. Terms are kept sorted in graded lexicographic order with no zero
// coefficients, so structural equality is mathematical equality.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rinehart {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);

/// Thrown when operands live over different variable lists.
class VariableMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector with a fixed upper bound on the variable count.
class Monomial {
 public:
  Monomial() = default;

  static Monomial unit(std::size_t var) {
    Monomial m;
    m.e_[var] = 1;
    return m;
  }

  std::uint16_t operator[](std::size_t i) const { return e_[i]; }
  std::uint16_t& operator[](std::size_t i) { return e_[i]; }

  int degree() const {
    int s = 0;
    for (auto v : e_) s += v;
    return s;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
  }

  bool divisible_by(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i] < o.e_[i]) return false;
    return true;
  }

  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
  }

  int weight(std::span<const int> w) const {
    int s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * e_[i];
    return s;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

  /// Graded lexicographic: total degree first, then lex with x1 > x2 > ...
  bool operator<(const Monomial& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i] != o.e_[i]) return e_[i] < o.e_[i];
    return false;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : e_) h = (h ^ v) * 1099511628211ull;
    return h;
  }

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
};

class PolyDerivation;

class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) { check_nvars(); }

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial term(std::size_t nvars, const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }

  /// -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient(Monomial{}); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  Polynomial pow(unsigned k) const;
  Polynomial derivative(std::size_t var) const;
  Polynomial apply(const PolyDerivation& d) const;

  /// Reinterpret in a larger ring: variable i goes to variable offset + i.
  Polynomial embed(std::size_t new_nvars, std::size_t offset = 0) const;
  /// Drop variables [offset, offset + count); requires they do not occur.
  Polynomial restrict(std::size_t count, std::size_t offset = 0) const;
  /// Substitute variable i by the given polynomial (same ring).
  Polynomial substitute(std::size_t var, const Polynomial& value) const;

  /// True when every term has weight `w` under the given weights.
  bool is_homogeneous(std::span<const int> weights, int* w) const;

  /// Exact quotient by `d` when it divides; returns false otherwise.
  bool divide_exact(const Polynomial& d, Polynomial* quotient) const;

  bool operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  bool operator<(const Polynomial& o) const;

  std::string to_string(std::span<const std::string> names) const;
  /// Uses x0, x1, ... when no names are given.
  std::string to_string() const;

  std::size_t hash() const;

 private:
  friend class PolyBuilder;
  void check_nvars() const;
  void require_same(const Polynomial& o) const {
    if (nvars_ != o.nvars_)
      throw VariableMismatch("polynomial variable-list mismatch: " +
                             std::to_string(nvars_) + " vs " +
                             std::to_string(o.nvars_));
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

Polynomial operator*(const Rational& c, const Polynomial& p);

/// Accumulates terms in any order and produces a canonical polynomial.
class PolyBuilder {
 public:
  explicit PolyBuilder(std::size_t nvars) : nvars_(nvars) {}
  void add(const Monomial& m, const Rational& c) {
    if (c != 0) acc_[m] += c;
  }
  void add(const Polynomial& p, const Rational& scale = 1);
  void add_product(const Polynomial& a, const Polynomial& b, const Rational& scale = 1);
  Polynomial build() const;

 private:
  std::size_t nvars_;
  std::map<Monomial, Rational> acc_;
};

/// A derivation of Q[x_1..x_n], stored by its values on the variables.
class PolyDerivation {
 public:
  PolyDerivation() = default;
  explicit PolyDerivation(std::size_t nvars)
      : nvars_(nvars), images_(nvars, Polynomial(nvars)) {}
  explicit PolyDerivation(std::vector<Polynomial> images);

  /// The coordinate field d/dx_i.
  static PolyDerivation partial(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Polynomial>& images() const { return images_; }
  const Polynomial& image(std::size_t i) const { return images_[i]; }
  bool is_zero() const;

  Polynomial operator()(const Polynomial& p) const { return p.apply(*this); }

  PolyDerivation operator+(const PolyDerivation& o) const;
  PolyDerivation operator-(const PolyDerivation& o) const;
  PolyDerivation operator-() const;
  PolyDerivation scaled(const Polynomial& f) const;
  PolyDerivation operator*(const Rational& c) const;

  /// Commutator [this, o] = this o o - o o this.
  PolyDerivation bracket(const PolyDerivation& o) const;

  bool operator==(const PolyDerivation& o) const { return images_ == o.images_; }
  bool operator!=(const PolyDerivation& o) const { return !(*this == o); }

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<Polynomial> images_;
};

/// Integer weight per variable.
using WeightVector = std::vector<int>;

bool weights_positive(const WeightVector& w);

/// Split into weight-homogeneous pieces keyed by weight; zero pieces omitted.
std::map<int, Polynomial> weight_split(const Polynomial& p, const WeightVector& w);

/// All monomials in `nvars` variables of exactly the given weight; weights
/// must be positive on every variable.
std::vector<Monomial> monomials_of_weight(std::size_t nvars, const WeightVector& w, int weight);

/// All monomials of total degree <= max_degree.
std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, int max_degree);

/// Monomials of total degree <= max_degree and weight exactly `weight`
/// (no positivity requirement).
std::vector<Monomial> monomials_of_weight_capped(std::size_t nvars, const WeightVector& w,
                                                int weight, int max_degree);

}  // namespace rinehart

template <>
struct std::hash<rinehart::Monomial> {
  std::size_t operator()(const rinehart::Monomial& m) const noexcept { return m.hash(); }
};
