#include "rinehart/lie_rinehart.hpp"

#include <sstream>
#include <stdexcept>

namespace rinehart {

LElement LElement::basis(std::size_t rank, std::size_t nvars, std::size_t k) {
  LElement e(rank, nvars);
  e.c_.at(k) = Polynomial::constant(nvars, 1);
  return e;
}

bool LElement::is_zero() const {
  for (const auto& p : c_)
    if (!p.is_zero()) return false;
  return true;
}

LElement LElement::operator+(const LElement& o) const {
  if (o.c_.size() != c_.size()) throw VariableMismatch("L element rank mismatch");
  LElement r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
  return r;
}

LElement LElement::operator-() const {
  LElement r = *this;
  for (auto& p : r.c_) p = -p;
  return r;
}

LElement LElement::operator-(const LElement& o) const { return *this + (-o); }

LElement LElement::scaled(const Polynomial& f) const {
  LElement r = *this;
  for (auto& p : r.c_) p = p * f;
  return r;
}

LElement LElement::operator*(const Rational& c) const {
  LElement r = *this;
  for (auto& p : r.c_) p = p * c;
  return r;
}

void LieRinehart::validate_structure() const {
  if (anchor.size() != d())
    throw std::invalid_argument("anchor: expected " + std::to_string(d()) + " derivations");
  for (std::size_t k = 0; k < d(); ++k)
    if (anchor[k].nvars() != n())
      throw std::invalid_argument("anchor of " + basis[k] + ": wrong variable count");
  if (structure.size() != d())
    throw std::invalid_argument("bracket table: wrong number of rows");
  for (std::size_t i = 0; i < d(); ++i) {
    if (structure[i].size() != d())
      throw std::invalid_argument("bracket table: wrong row length");
    for (std::size_t j = 0; j < d(); ++j) {
      const auto& c = structure[i][j];
      if (c.rank() != d())
        throw std::invalid_argument("bracket " + basis[i] + "," + basis[j] + ": wrong length");
      for (std::size_t k = 0; k < d(); ++k)
        if (c[k].nvars() != n())
          throw std::invalid_argument("bracket " + basis[i] + "," + basis[j] +
                                      ": wrong variable count");
      if (i == j && !c.is_zero())
        throw std::invalid_argument("antisymmetry violated: [" + basis[i] + "," + basis[i] +
                                    "] must be zero");
      if (structure[j][i] != -c)
        throw std::invalid_argument("antisymmetry violated: [" + basis[i] + "," + basis[j] +
                                    "] != -[" + basis[j] + "," + basis[i] + "]");
    }
  }
  if (weights && weights->size() != n() + d())
    throw std::invalid_argument("weights must cover every variable and basis element");
}

bool LieRinehart::operator==(const LieRinehart& o) const {
  return vars == o.vars && basis == o.basis && anchor == o.anchor && structure == o.structure &&
         weights == o.weights;
}

PolyDerivation anchor_of(const LieRinehart& lr, const LElement& X) {
  PolyDerivation r(lr.n());
  for (std::size_t k = 0; k < lr.d(); ++k)
    if (!X[k].is_zero()) r = r + lr.anchor[k].scaled(X[k]);
  return r;
}

Polynomial anchor_apply(const LieRinehart& lr, const LElement& X, const Polynomial& f) {
  return f.apply(anchor_of(lr, X));
}

LElement bracket(const LieRinehart& lr, const LElement& X, const LElement& Y) {
  LElement r = lr.zero();
  for (std::size_t i = 0; i < lr.d(); ++i) {
    if (X[i].is_zero()) continue;
    for (std::size_t j = 0; j < lr.d(); ++j) {
      if (Y[j].is_zero() || lr.structure[i][j].is_zero()) continue;
      r += lr.structure[i][j].scaled(X[i] * Y[j]);
    }
  }
  PolyDerivation rx = anchor_of(lr, X), ry = anchor_of(lr, Y);
  for (std::size_t k = 0; k < lr.d(); ++k) r[k] += Y[k].apply(rx) - X[k].apply(ry);
  return r;
}

namespace {

std::string show_weight_issue(const std::string& what, int expect, int got) {
  return what + " has weight " + std::to_string(got) + ", expected " + std::to_string(expect);
}

}  // namespace

std::optional<int> bracket_weight(const LieRinehart& lr, std::string* witness) {
  if (!lr.weights) return std::nullopt;
  const WeightVector& w = *lr.weights;
  std::span<const int> wx(w.data(), lr.n());
  std::optional<int> beta;
  auto visit = [&](const Polynomial& p, int extra, const std::string& what) -> bool {
    // p is the coefficient of a term of weight `extra` (excluding p).
    for (const auto& [m, c] : p.terms()) {
      int got = m.weight(wx) + extra;
      if (!beta) beta = got;
      (void)c;
      if (got != *beta) {
        if (witness) *witness = show_weight_issue(what, *beta, got);
        return false;
      }
    }
    return true;
  };
  for (std::size_t k = 0; k < lr.d(); ++k) {
    for (std::size_t a = 0; a < lr.n(); ++a) {
      // {xi_k, x_a} = rho_k(x_a); beta = wt(rho_k(x_a)) - w_k - w_a
      if (!visit(lr.anchor[k].image(a), -w[lr.n() + k] - w[a],
                 "{" + lr.basis[k] + "," + lr.vars[a] + "}"))
        return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < lr.d(); ++i)
    for (std::size_t j = i + 1; j < lr.d(); ++j)
      for (std::size_t k = 0; k < lr.d(); ++k)
        if (!visit(lr.structure[i][j][k], w[lr.n() + k] - w[lr.n() + i] - w[lr.n() + j],
                   "[" + lr.basis[i] + "," + lr.basis[j] + "] component " + lr.basis[k]))
          return std::nullopt;
  return beta.value_or(0);
}

CheckReport check_axioms(const LieRinehart& lr) {
  CheckReport rep;
  lr.validate_structure();
  rep.checks.push_back("anchor-morphism");
  for (std::size_t i = 0; i < lr.d() && rep.ok; ++i)
    for (std::size_t j = i + 1; j < lr.d() && rep.ok; ++j) {
      PolyDerivation lhs = anchor_of(lr, lr.structure[i][j]);
      PolyDerivation rhs = lr.anchor[i].bracket(lr.anchor[j]);
      if (lhs != rhs) {
        rep.ok = false;
        rep.failure = "anchor is not a Lie morphism on (" + lr.basis[i] + "," + lr.basis[j] +
                      "): rho([.,.]) = " + to_string(lr, lhs) + " but [rho,rho] = " +
                      to_string(lr, rhs);
      }
    }
  if (!rep.ok) return rep;
  rep.checks.push_back("jacobi");
  for (std::size_t i = 0; i < lr.d() && rep.ok; ++i)
    for (std::size_t j = i + 1; j < lr.d() && rep.ok; ++j)
      for (std::size_t k = j + 1; k < lr.d() && rep.ok; ++k) {
        LElement a = lr.e(i), b = lr.e(j), c = lr.e(k);
        LElement jac = bracket(lr, a, bracket(lr, b, c)) + bracket(lr, b, bracket(lr, c, a)) +
                       bracket(lr, c, bracket(lr, a, b));
        if (!jac.is_zero()) {
          rep.ok = false;
          rep.failure = "Jacobi fails on (" + lr.basis[i] + "," + lr.basis[j] + "," +
                        lr.basis[k] + "): " + to_string(lr, jac);
        }
      }
  if (!rep.ok) return rep;
  if (lr.weights) {
    rep.checks.push_back("weight-homogeneity");
    std::string why;
    if (!bracket_weight(lr, &why)) {
      rep.ok = false;
      rep.failure = "bracket is not weight-homogeneous: " + why;
    }
  }
  return rep;
}

Connection Connection::trivial(const LieRinehart& lr) {
  Connection c;
  c.gamma.assign(lr.n(), std::vector<LElement>(lr.d(), lr.zero()));
  return c;
}

bool Connection::is_trivial() const {
  for (const auto& row : gamma)
    for (const auto& g : row)
      if (!g.is_zero()) return false;
  return true;
}

LElement nabla(const LieRinehart& lr, const Connection& c, const PolyDerivation& D,
               const LElement& X) {
  LElement r = lr.zero();
  for (std::size_t j = 0; j < lr.d(); ++j) {
    if (X[j].is_zero()) continue;
    r[j] += X[j].apply(D);
    for (std::size_t i = 0; i < lr.n(); ++i)
      if (!D.image(i).is_zero() && !c.gamma[i][j].is_zero())
        r += c.gamma[i][j].scaled(D.image(i) * X[j]);
  }
  return r;
}

LElement connection_curvature(const LieRinehart& lr, const Connection& c,
                              const PolyDerivation& D1, const PolyDerivation& D2,
                              const LElement& X) {
  return nabla(lr, c, D1, nabla(lr, c, D2, X)) - nabla(lr, c, D2, nabla(lr, c, D1, X)) -
         nabla(lr, c, D1.bracket(D2), X);
}

LElement basic_nabla_L(const LieRinehart& lr, const Connection& c, const LElement& X,
                       const LElement& Y) {
  return nabla(lr, c, anchor_of(lr, Y), X) + bracket(lr, X, Y);
}

PolyDerivation basic_nabla_der(const LieRinehart& lr, const Connection& c, const LElement& X,
                               const PolyDerivation& D) {
  return anchor_of(lr, nabla(lr, c, D, X)) + anchor_of(lr, X).bracket(D);
}

LElement basic_curvature(const LieRinehart& lr, const Connection& c, const LElement& X,
                         const LElement& Y, const PolyDerivation& D) {
  return nabla(lr, c, D, bracket(lr, X, Y)) - bracket(lr, nabla(lr, c, D, X), Y) -
         bracket(lr, X, nabla(lr, c, D, Y)) - nabla(lr, c, basic_nabla_der(lr, c, Y, D), X) +
         nabla(lr, c, basic_nabla_der(lr, c, X, D), Y);
}

LElement basic_curvature_L(const LieRinehart& lr, const Connection& c, const LElement& X,
                           const LElement& Y, const LElement& Z) {
  return basic_nabla_L(lr, c, X, basic_nabla_L(lr, c, Y, Z)) -
         basic_nabla_L(lr, c, Y, basic_nabla_L(lr, c, X, Z)) -
         basic_nabla_L(lr, c, bracket(lr, X, Y), Z);
}

PolyDerivation basic_curvature_der(const LieRinehart& lr, const Connection& c, const LElement& X,
                                   const LElement& Y, const PolyDerivation& D) {
  return basic_nabla_der(lr, c, X, basic_nabla_der(lr, c, Y, D)) -
         basic_nabla_der(lr, c, Y, basic_nabla_der(lr, c, X, D)) -
         basic_nabla_der(lr, c, bracket(lr, X, Y), D);
}

namespace {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

Polynomial determinant(const PolyMatrix& m, std::size_t nvars) {
  std::size_t k = m.size();
  if (k == 0) return Polynomial::constant(nvars, 1);
  if (k == 1) return m[0][0];
  Polynomial det(nvars);
  for (std::size_t col = 0; col < k; ++col) {
    if (m[0][col].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t cc = 0; cc < k; ++cc)
        if (cc != col) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    Polynomial t = m[0][col] * determinant(minor, nvars);
    det = (col % 2 == 0) ? det + t : det - t;
  }
  return det;
}

bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  std::size_t k = s.size();
  for (std::size_t i = k; i-- > 0;) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

LieRinehart from_vector_fields(const std::vector<std::string>& vars,
                               const std::vector<std::string>& basis,
                               const std::vector<PolyDerivation>& fields) {
  std::size_t n = vars.size(), d = fields.size();
  if (basis.size() != d) throw std::invalid_argument("one basis name per field required");
  if (d > n && n > 0) throw std::invalid_argument("more fields than variables: not independent");
  for (const auto& f : fields)
    if (f.nvars() != n) throw VariableMismatch("field over the wrong variable list");

  // A d x d minor of the coefficient matrix with nonzero determinant.
  std::vector<std::size_t> rows(d);
  for (std::size_t i = 0; i < d; ++i) rows[i] = i;
  PolyMatrix minor;
  Polynomial det(n);
  do {
    minor.assign(d, std::vector<Polynomial>(d, Polynomial(n)));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t k = 0; k < d; ++k) minor[a][k] = fields[k].image(rows[a]);
    det = determinant(minor, n);
  } while (det.is_zero() && next_subset(rows, n));
  if (det.is_zero()) throw std::invalid_argument("vector fields are not R-independent");

  LieRinehart lr;
  lr.vars = vars;
  lr.basis = basis;
  lr.anchor = fields;
  lr.structure.assign(d, std::vector<LElement>(d, LElement(d, n)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      PolyDerivation comm = fields[i].bracket(fields[j]);
      LElement c(d, n);
      for (std::size_t k = 0; k < d; ++k) {
        PolyMatrix m = minor;
        for (std::size_t a = 0; a < d; ++a) m[a][k] = comm.image(rows[a]);
        Polynomial q;
        if (!determinant(m, n).divide_exact(det, &q))
          throw std::invalid_argument("commutator [" + basis[i] + "," + basis[j] +
                                      "] is not in the R-span of the fields");
        c[k] = q;
      }
      lr.structure[i][j] = c;
      lr.structure[j][i] = -c;
      if (anchor_of(lr, c) != comm)
        throw std::invalid_argument("commutator [" + basis[i] + "," + basis[j] +
                                    "] is not in the R-span of the fields");
    }
  return lr;
}

LieRinehart from_action(const std::vector<std::string>& vars,
                        const std::vector<std::string>& basis,
                        const std::vector<std::vector<std::vector<Rational>>>& constants,
                        const std::vector<std::vector<std::vector<Rational>>>& action) {
  std::size_t n = vars.size(), d = basis.size();
  if (constants.size() != d || action.size() != d)
    throw std::invalid_argument("need constants and an action matrix per basis element");
  LieRinehart lr;
  lr.vars = vars;
  lr.basis = basis;
  for (std::size_t k = 0; k < d; ++k) {
    if (action[k].size() != n) throw std::invalid_argument("action matrix has wrong size");
    std::vector<Polynomial> img;
    for (std::size_t a = 0; a < n; ++a) {
      if (action[k][a].size() != n) throw std::invalid_argument("action matrix has wrong size");
      Polynomial p(n);
      for (std::size_t b = 0; b < n; ++b) p += Polynomial::variable(n, b) * action[k][a][b];
      img.push_back(p);
    }
    lr.anchor.emplace_back(n);
    lr.anchor.back() = PolyDerivation(img);
    if (n == 0) lr.anchor.back() = PolyDerivation(0);
  }
  lr.structure.assign(d, std::vector<LElement>(d, LElement(d, n)));
  for (std::size_t i = 0; i < d; ++i) {
    if (constants[i].size() != d) throw std::invalid_argument("structure constants: wrong size");
    for (std::size_t j = 0; j < d; ++j) {
      if (constants[i][j].size() != d)
        throw std::invalid_argument("structure constants: wrong size");
      for (std::size_t k = 0; k < d; ++k)
        lr.structure[i][j][k] = Polynomial::constant(n, constants[i][j][k]);
    }
  }
  lr.validate_structure();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (anchor_of(lr, lr.structure[i][j]) != lr.anchor[i].bracket(lr.anchor[j]))
        throw std::invalid_argument("action is not a Lie algebra morphism on (" + basis[i] +
                                    "," + basis[j] + ")");
  return lr;
}

std::string to_string(const LieRinehart& lr, const LElement& X) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < X.rank(); ++k) {
    if (X[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << X[k].to_string(lr.vars) << ")*" << lr.basis[k];
  }
  return first ? "0" : os.str();
}

std::string to_string(const LieRinehart& lr, const PolyDerivation& D) {
  return D.to_string(lr.vars);
}

}  // namespace rinehart
