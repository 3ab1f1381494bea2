// The Poisson algebra Sym_R(L): multivectors, Kahler forms and their
// complexes. Coordinates are y = (x_1..x_n, xi_1..xi_d); legs are bitmasks.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rinehart/lie_rinehart.hpp"
#include "rinehart/linalg.hpp"

namespace rinehart {

using LegSet = std::uint32_t;

inline int leg_count(LegSet s) { return __builtin_popcount(s); }
std::vector<std::size_t> legs_of(LegSet s);

/// sum c_S (leg_S) with legs sorted ascending; Tag separates multivectors
/// from forms.
template <class Tag>
class LegMap {
 public:
  LegMap() = default;
  LegMap(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {}

  std::size_t nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const std::map<LegSet, Polynomial>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  Polynomial coefficient(LegSet s) const {
    auto it = t_.find(s);
    return it == t_.end() ? Polynomial(nvars_) : it->second;
  }
  void add(LegSet s, const Polynomial& c) {
    if (leg_count(s) != degree_) throw std::invalid_argument("leg count does not match degree");
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(s, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  LegMap operator+(const LegMap& o) const {
    LegMap r = *this;
    for (const auto& [s, c] : o.t_) r.add(s, c);
    return r;
  }
  LegMap operator-(const LegMap& o) const { return *this + o * Rational(-1); }
  LegMap operator*(const Rational& k) const {
    LegMap r(nvars_, degree_);
    for (const auto& [s, c] : t_) r.add(s, c * k);
    return r;
  }
  LegMap scaled(const Polynomial& f) const {
    LegMap r(nvars_, degree_);
    for (const auto& [s, c] : t_) r.add(s, f * c);
    return r;
  }
  bool operator==(const LegMap& o) const {
    return nvars_ == o.nvars_ && degree_ == o.degree_ && t_ == o.t_;
  }
  bool operator!=(const LegMap& o) const { return !(*this == o); }

 private:
  std::size_t nvars_ = 0;
  int degree_ = 0;
  std::map<LegSet, Polynomial> t_;
};

using Multivector = LegMap<struct MultivectorTag>;
using KahlerForm = LegMap<struct KahlerFormTag>;

/// Sym_R(L) with its Poisson bracket {xi_i, x_j} = rho(e_i)(x_j),
/// {xi_i, xi_j} = [e_i, e_j].
class PoissonAlgebra {
 public:
  explicit PoissonAlgebra(LieRinehart lr);

  const LieRinehart& lr() const { return lr_; }
  std::size_t nvars() const { return N_; }
  /// {y_u, y_v}.
  const Polynomial& bivector(std::size_t u, std::size_t v) const { return P_[u][v]; }
  Polynomial coordinate(std::size_t u) const { return Polynomial::variable(N_, u); }
  /// Declared weights of (x, xi); nullopt when absent.
  const std::optional<WeightVector>& weights() const { return lr_.weights; }
  /// Weight shift of the bracket, when homogeneous.
  std::optional<int> bracket_weight() const { return beta_; }

  Polynomial bracket(const Polynomial& a, const Polynomial& b) const;
  /// {y_u, f}.
  Polynomial bracket_coordinate(std::size_t u, const Polynomial& f) const;

  /// Embeds an R-polynomial into Sym_R(L).
  Polynomial from_r(const Polynomial& f) const { return f.embed(N_, 0); }
  /// The degree-one element X of Sym_R(L).
  Polynomial from_l(const LElement& X) const;

  std::vector<std::string> coordinate_names() const;

 private:
  LieRinehart lr_;
  std::size_t N_;
  std::vector<std::vector<Polynomial>> P_;
  std::optional<int> beta_;
};

/// D(g_1, ..., g_p) = sum_S c_S det(d g_b / d y_{S_a}).
Polynomial evaluate(const Multivector& D, const std::vector<Polynomial>& args);

/// delta_P; see docs/signs.md for the sign of the second sum.
Multivector delta_P(const PoissonAlgebra& pa, const Multivector& D);

/// The multivector P itself (degree 2).
Multivector poisson_tensor(const PoissonAlgebra& pa);

// ------------------------------------------------------------- nonlinear

/// An L-argument m * e_k with m a monomial in R.
using LArg = std::pair<Monomial, std::size_t>;

/// (phi_0, ..., phi_p): phi_i on (p - i) L-arguments (sorted, distinct) and i
/// R-variables (increasing), valued in Sym_R(L). L-arguments range over
/// m e_k with deg m <= cap.
struct NonlinearTuple {
  int degree = 0;
  int cap = 0;
  std::vector<std::map<std::pair<std::vector<LArg>, std::vector<std::size_t>>, Polynomial>> phi;

  /// phi_i on arbitrary argument order (alternating in each block).
  Polynomial value(const PoissonAlgebra& pa, std::size_t i, std::vector<LArg> largs,
                   std::vector<std::size_t> rargs) const;
};

class NonlinearConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

NonlinearTuple mv_to_nonlinear(const PoissonAlgebra& pa, const Multivector& D, int cap);
/// Checks the R-nonlinearity constraint on every table entry reachable by
/// factoring an L-argument, then reads D off the generator values.
Multivector nonlinear_to_mv(const PoissonAlgebra& pa, const NonlinearTuple& T);

// ------------------------------------------------------------- cohomology

struct TableEntry {
  std::string complex;
  int weight = 0;
  int degree = 0;
  std::size_t dimension = 0;
};

/// Basis of multivectors of a given degree and cell weight
/// wt(m) - sum of leg weights; requires positive weights.
std::vector<std::pair<LegSet, Monomial>> multivector_basis(const PoissonAlgebra& pa, int degree,
                                                           int weight);
/// Basis of forms of a given degree and weight wt(m) + sum of leg weights.
std::vector<std::pair<LegSet, Monomial>> form_basis(const PoissonAlgebra& pa, int degree,
                                                    int weight);

/// Thrown when weights are absent or not positive; names the capped
/// alternatives.
class WeightError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// H^p at cell weight c for p <= max_degree and c <= max_weight.
std::vector<TableEntry> poisson_cohomology(const PoissonAlgebra& pa, int max_weight,
                                           int max_degree);

KahlerForm kahler_d(const KahlerForm& w);
KahlerForm kahler_d(const Polynomial& f);
KahlerForm iota_P(const PoissonAlgebra& pa, const KahlerForm& w);
/// L_P = iota_P d - d iota_P (the graded commutator); see docs/signs.md.
KahlerForm L_P(const PoissonAlgebra& pa, const KahlerForm& w);

/// Homology of (Omega, L_P) at form weight c <= max_weight.
std::vector<TableEntry> poisson_homology(const PoissonAlgebra& pa, int max_weight);

struct CyclicResult {
  std::vector<TableEntry> entries;  // HC_m, m in [0, 2 u_cap - 2], weights <= max_weight
  bool stabilized = false;          // same dimensions with u_cap - 1
};
CyclicResult cyclic_homology(const PoissonAlgebra& pa, int max_weight, int u_cap);

/// Contraction of D into dy_1 ^ ... ^ dy_N.
KahlerForm duality_cap(const Multivector& D);
/// Rank of the cap on each multivector slice equals its dimension.
CheckReport duality_rank_check(const PoissonAlgebra& pa, int max_weight);

// ------------------------------------------------------------- euler

/// s_0 = contraction with d(euler).
Multivector euler_contraction(const Multivector& D, const Polynomial& euler);

struct EulerReport {
  CheckReport report;
  WeightVector grading;  // {euler, y_u} = grading[u] y_u
  std::size_t checked = 0;
};

/// Checks delta_P s_0 + s_0 delta_P = -w on basis multivectors m dy_S with
/// deg m <= max_degree, all leg counts, and declared cell weight <=
/// max_weight (when weights are declared); w is the euler grading.
EulerReport euler_contraction_check(const PoissonAlgebra& pa, const Polynomial& euler,
                                    int max_weight, int max_degree);

/// Kernel of delta_P on polynomials of degree <= max_degree and weight <=
/// max_weight.
std::vector<Polynomial> capped_casimir_search(const PoissonAlgebra& pa, int max_weight,
                                              int max_degree);

std::string to_string(const PoissonAlgebra& pa, const Multivector& D);
std::string to_string(const PoissonAlgebra& pa, const KahlerForm& w);

}  // namespace rinehart
