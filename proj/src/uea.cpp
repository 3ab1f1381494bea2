#include "rinehart/uea.hpp"

#include <algorithm>
#include <stdexcept>

#include "rinehart/linalg.hpp"

namespace rinehart {

// ---------------------------------------------------------------- elements

UEAElement UEAElement::scalar(std::size_t rank, const Polynomial& f) {
  UEAElement u(rank, f.nvars());
  u.add_term(Monomial{}, f);
  return u;
}

UEAElement UEAElement::generator(std::size_t rank, std::size_t nvars, std::size_t k) {
  UEAElement u(rank, nvars);
  u.add_term(Monomial::unit(k), Polynomial::constant(nvars, 1));
  return u;
}

UEAElement UEAElement::term(std::size_t rank, const Monomial& alpha, const Polynomial& f) {
  UEAElement u(rank, f.nvars());
  u.add_term(alpha, f);
  return u;
}

UEAElement UEAElement::from_l(const LElement& X) {
  std::size_t n = X.rank() ? X[0].nvars() : 0;
  UEAElement u(X.rank(), n);
  for (std::size_t k = 0; k < X.rank(); ++k) u.add_term(Monomial::unit(k), X[k]);
  return u;
}

int UEAElement::filtration_degree() const {
  int d = -1;
  for (const auto& [a, f] : t_) d = std::max(d, a.degree());
  return d;
}

Polynomial UEAElement::coefficient(const Monomial& alpha) const {
  auto it = t_.find(alpha);
  return it == t_.end() ? Polynomial(n_) : it->second;
}

void UEAElement::add_term(const Monomial& alpha, const Polynomial& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(alpha, f);
  if (fresh) return;
  it->second += f;
  if (it->second.is_zero()) t_.erase(it);
}

UEAElement UEAElement::operator+(const UEAElement& o) const {
  UEAElement r = *this;
  return r += o;
}

UEAElement UEAElement::operator-(const UEAElement& o) const {
  UEAElement r = *this;
  return r -= o;
}

UEAElement UEAElement::operator-() const { return *this * Rational(-1); }

UEAElement& UEAElement::operator+=(const UEAElement& o) {
  for (const auto& [a, f] : o.t_) add_term(a, f);
  return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& o) {
  for (const auto& [a, f] : o.t_) add_term(a, -f);
  return *this;
}

UEAElement UEAElement::operator*(const Rational& c) const {
  UEAElement r(d_, n_);
  if (c == 0) return r;
  for (const auto& [a, f] : t_) r.t_.emplace(a, f * c);
  return r;
}

UEAElement UEAElement::left_scaled(const Polynomial& p) const {
  UEAElement r(d_, n_);
  for (const auto& [a, f] : t_) r.add_term(a, p * f);
  return r;
}

std::string UEAElement::to_string(const LieRinehart& lr) const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [a, f] = *it;
    std::string word;
    for (std::size_t k = 0; k < d_; ++k) {
      if (a[k] == 0) continue;
      if (!word.empty()) word += "*";
      word += lr.basis[k];
      if (a[k] > 1) word += "^" + std::to_string(a[k]);
    }
    std::string coeff = f.to_string(lr.vars);
    std::string piece;
    if (word.empty()) {
      piece = coeff;
    } else if (coeff == "1") {
      piece = word;
    } else if (coeff == "-1") {
      piece = "-" + word;
    } else if (f.size() == 1) {
      piece = coeff + "*" + word;
    } else {
      piece = "(" + coeff + ")*" + word;
    }
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

// ---------------------------------------------------------------- algebra

Enveloping::Enveloping(LieRinehart lr, Connection c) : lr_(std::move(lr)), conn_(std::move(c)) {
  if (lr_.d() > kMaxVars) throw std::invalid_argument("rank of L exceeds the supported 16");
}

UEAElement Enveloping::gen_times_monomial(std::size_t i, const Monomial& beta) const {
  {
    std::lock_guard lock(mu_);
    auto it = gen_cache_.find({i, beta});
    if (it != gen_cache_.end()) return it->second;
  }
  std::size_t j = 0;
  while (j < lr_.d() && beta[j] == 0) ++j;
  UEAElement r = zero();
  if (j == lr_.d() || i <= j) {
    r.add_term(beta * Monomial::unit(i), lr_.one());
  } else {
    // e_i e_j e^b' = e_j (e_i e^b') + [e_i, e_j] e^b'
    Monomial rest = beta / Monomial::unit(j);
    r = left_mul_gen(j, gen_times_monomial(i, rest));
    const LElement& c = lr_.structure[i][j];
    for (std::size_t k = 0; k < lr_.d(); ++k)
      if (!c[k].is_zero()) r += gen_times_monomial(k, rest).left_scaled(c[k]);
  }
  std::lock_guard lock(mu_);
  gen_cache_.emplace(std::make_pair(i, beta), r);
  return r;
}

UEAElement Enveloping::left_mul_gen(std::size_t i, const UEAElement& u) const {
  UEAElement r = zero();
  for (const auto& [beta, f] : u.terms()) {
    r += gen_times_monomial(i, beta).left_scaled(f);
    r.add_term(beta, lr_.anchor[i](f));
  }
  return r;
}

UEAElement Enveloping::mul(const UEAElement& a, const UEAElement& b) const {
  UEAElement r = zero();
  for (const auto& [alpha, f] : a.terms()) {
    UEAElement acc = b;
    for (std::size_t k = lr_.d(); k-- > 0;)
      for (int p = 0; p < alpha[k]; ++p) acc = left_mul_gen(k, acc);
    r += acc.left_scaled(f);
  }
  return r;
}

UEAElement Enveloping::right_mul_gen(const UEAElement& u, std::size_t j) const {
  UEAElement r = zero();
  for (const auto& [alpha, f] : u.terms()) {
    std::size_t m = lr_.d();
    while (m > 0 && alpha[m - 1] == 0) --m;
    if (m == 0 || j >= m - 1) {
      r.add_term(alpha * Monomial::unit(j), f);
      continue;
    }
    --m;
    // e^a' e_m e_j = (e^a' e_j) e_m + e^a' [e_m, e_j]
    UEAElement head = UEAElement::term(lr_.d(), alpha / Monomial::unit(m), lr_.one());
    UEAElement part = right_mul_gen(right_mul_gen(head, j), m);
    const LElement& c = lr_.structure[m][j];
    for (std::size_t k = 0; k < lr_.d(); ++k) {
      if (c[k].is_zero()) continue;
      UEAElement hc = scalar(c[k]);
      for (std::size_t q = m + 1; q-- > 0;)
        for (int p = 0; p < (q == m ? alpha[q] - 1 : alpha[q]); ++p) hc = left_mul_gen(q, hc);
      part += right_mul_gen(hc, k);
    }
    r += part.left_scaled(f);
  }
  return r;
}

UEAElement Enveloping::mul_right_first(const UEAElement& a, const UEAElement& b) const {
  UEAElement r = zero();
  for (const auto& [beta, g] : b.terms()) {
    UEAElement acc = zero();
    for (const auto& [alpha, f] : a.terms()) {
      UEAElement t = scalar(g);
      for (std::size_t k = lr_.d(); k-- > 0;)
        for (int p = 0; p < alpha[k]; ++p) t = left_mul_gen(k, t);
      acc += t.left_scaled(f);
    }
    for (std::size_t k = 0; k < lr_.d(); ++k)
      for (int p = 0; p < beta[k]; ++p) acc = right_mul_gen(acc, k);
    r += acc;
  }
  return r;
}

UEAElement Enveloping::commutator(const UEAElement& a, const UEAElement& b) const {
  return mul(a, b) - mul(b, a);
}

Polynomial Enveloping::gr_symbol(const UEAElement& a) const {
  std::size_t n = lr_.n(), N = n + lr_.d();
  Polynomial r(N);
  int top = a.filtration_degree();
  for (const auto& [alpha, f] : a.terms()) {
    if (alpha.degree() != top) continue;
    Monomial shifted;
    for (std::size_t k = 0; k < lr_.d(); ++k) shifted[n + k] = alpha[k];
    r += f.embed(N, 0) * Polynomial::term(N, shifted, 1);
  }
  return r;
}

// ---------------------------------------------------------------- pbw

UEAElement Enveloping::pbw_product(const std::vector<LElement>& factors) const {
  struct Piece {
    Monomial m;
    std::size_t k;
    Rational c;
  };
  std::vector<std::vector<Piece>> expanded;
  for (const auto& X : factors) {
    std::vector<Piece> ps;
    for (std::size_t k = 0; k < X.rank(); ++k)
      for (const auto& [m, c] : X[k].terms()) ps.push_back({m, k, c});
    if (ps.empty()) return zero();
    expanded.push_back(std::move(ps));
  }
  UEAElement r = zero();
  std::vector<std::size_t> idx(expanded.size(), 0);
  while (true) {
    Key key;
    Rational c = 1;
    for (std::size_t f = 0; f < expanded.size(); ++f) {
      const Piece& p = expanded[f][idx[f]];
      key.emplace_back(p.m, p.k);
      c *= p.c;
    }
    std::sort(key.begin(), key.end());
    r += pbw_key(key) * c;
    std::size_t f = 0;
    while (f < idx.size() && ++idx[f] == expanded[f].size()) idx[f++] = 0;
    if (f == idx.size()) break;
  }
  return r;
}

UEAElement Enveloping::pbw_key(const Key& key) const {
  if (key.empty()) return one();
  if (key.size() == 1)
    return UEAElement::term(lr_.d(), Monomial::unit(key[0].second),
                            Polynomial::term(lr_.n(), key[0].first, 1));
  {
    std::lock_guard lock(mu_);
    auto it = pbw_cache_.find(key);
    if (it != pbw_cache_.end()) return it->second;
  }
  auto as_l = [&](const std::pair<Monomial, std::size_t>& p) {
    return lr_.e(p.second).scaled(Polynomial::term(lr_.n(), p.first, 1));
  };
  std::size_t k = key.size();
  UEAElement acc = zero();
  for (std::size_t i = 0; i < k; ++i) {
    Key rest = key;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    LElement Xi = as_l(key[i]);
    acc += mul(from_l(Xi), pbw_key(rest));
    std::vector<LElement> factors;
    for (const auto& p : rest) factors.push_back(as_l(p));
    for (std::size_t j = 0; j < factors.size(); ++j) {
      LElement moved = basic_nabla_L(lr_, conn_, Xi, factors[j]);
      if (moved.is_zero()) continue;
      std::vector<LElement> g = factors;
      g[j] = moved;
      acc -= pbw_product(g);
    }
  }
  UEAElement r = acc * Rational(1, static_cast<long>(k));
  std::lock_guard lock(mu_);
  pbw_cache_.emplace(key, r);
  return r;
}

UEAElement Enveloping::pbw(const Polynomial& sym) const {
  std::size_t n = lr_.n(), N = n + lr_.d();
  if (sym.nvars() != N)
    throw VariableMismatch("pbw expects a polynomial over the n + d variables of Sym_R(L)");
  UEAElement r = zero();
  for (const auto& [m, c] : sym.terms()) {
    Monomial xs;
    Key key;
    for (std::size_t i = 0; i < n; ++i) xs[i] = m[i];
    for (std::size_t k = 0; k < lr_.d(); ++k)
      for (int p = 0; p < m[n + k]; ++p) key.emplace_back(Monomial{}, k);
    r += pbw_key(key).left_scaled(Polynomial::term(n, xs, c));
  }
  return r;
}

// ---------------------------------------------------------------- center

CenterResult center_search(const Enveloping& U, int filtration_cap, int weight_cap,
                           std::optional<int> max_degree) {
  const LieRinehart& lr = U.lr();
  std::size_t n = lr.n(), d = lr.d();
  WeightVector wx, we;
  if (lr.weights) {
    wx.assign(lr.weights->begin(), lr.weights->begin() + static_cast<std::ptrdiff_t>(n));
    we.assign(lr.weights->begin() + static_cast<std::ptrdiff_t>(n), lr.weights->end());
  }
  bool use_weights = lr.weights.has_value();
  if (!max_degree && n > 0 && !(use_weights && weights_positive(wx)))
    throw std::invalid_argument(
        "center search needs positive weights on R or an explicit coefficient degree cap");

  struct Unknown {
    Monomial m, alpha;
  };
  // U is graded by wt(x) on R and wt(e_k) + beta on L; the search space is
  // spanned by homogeneous terms, so each degree is solved separately.
  std::optional<int> beta = use_weights ? bracket_weight(lr) : std::nullopt;
  std::map<int, std::vector<Unknown>> groups;
  for (const auto& alpha : monomials_up_to_degree(d, filtration_cap)) {
    int wa = use_weights ? alpha.weight(we) : 0;
    std::vector<Monomial> coeffs;
    if (max_degree) {
      coeffs = monomials_up_to_degree(n, *max_degree);
    } else if (n == 0) {
      coeffs = {Monomial{}};
    } else {
      for (int w = 0; w <= weight_cap - wa; ++w)
        for (const auto& m : monomials_of_weight(n, wx, w)) coeffs.push_back(m);
    }
    for (const auto& m : coeffs) {
      int w = use_weights ? wa + m.weight(wx) : 0;
      if (use_weights && w > weight_cap) continue;
      groups[beta ? w + *beta * alpha.degree() : 0].push_back({m, alpha});
    }
  }
  CenterResult res;
  for (const auto& [w, unknowns] : groups) res.unknowns += unknowns.size();
  if (res.unknowns == 0) throw std::invalid_argument("center search space is empty");

  std::vector<UEAElement> tests;
  for (std::size_t i = 0; i < n; ++i) tests.push_back(U.scalar(lr.x(i)));
  for (std::size_t k = 0; k < d; ++k) tests.push_back(U.gen(k));

  for (const auto& [w, unknowns] : groups) {
    std::map<std::tuple<std::size_t, Monomial, Monomial>, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(unknowns.size());
    std::vector<UEAElement> elems;
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      UEAElement u = UEAElement::term(d, unknowns[j].alpha,
                                      Polynomial::term(n, unknowns[j].m, 1));
      elems.push_back(u);
      for (std::size_t g = 0; g < tests.size(); ++g) {
        UEAElement c = U.commutator(u, tests[g]);
        for (const auto& [beta, f] : c.terms())
          for (const auto& [m, coef] : f.terms()) {
            auto key = std::make_tuple(g, beta, m);
            auto it = row_of.try_emplace(key, row_of.size()).first;
            cols[j].emplace_back(it->second, coef);
          }
      }
    }
    SparseMatrixQ M(row_of.size(), unknowns.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, c] : cols[j]) M.add(r, j, c);
    auto ker = kernel_and_rank(M);
    if (beta) res.by_grading[w] = ker.basis.size();
    for (const auto& v : ker.basis) {
      UEAElement z = U.zero();
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) z += elems[j] * v[j];
      res.basis.push_back(z);
    }
  }
  return res;
}

// ---------------------------------------------------------------- derivations

DerivationExtension::DerivationExtension(const Enveloping& U, std::vector<UEAElement> on_vars,
                                         std::vector<UEAElement> on_basis)
    : U_(U), vars_(std::move(on_vars)), basis_(std::move(on_basis)) {
  const LieRinehart& lr = U.lr();
  if (vars_.size() != lr.n() || basis_.size() != lr.d())
    throw std::invalid_argument("derivation data must give one value per generator");
  report_.checks = {"R-derivation", "bracket", "anchor"};
  auto fail = [&](const std::string& what) {
    if (!report_.ok) return;
    report_.ok = false;
    report_.failure = what;
  };
  for (std::size_t i = 0; i < lr.n(); ++i)
    for (std::size_t j = i + 1; j < lr.n(); ++j)
      if (U.commutator(U.scalar(lr.x(i)), vars_[j]) != U.commutator(U.scalar(lr.x(j)), vars_[i]))
        fail("R-derivation equation fails on (" + lr.vars[i] + "," + lr.vars[j] + ")");
  for (std::size_t i = 0; i < lr.d(); ++i)
    for (std::size_t j = i + 1; j < lr.d(); ++j) {
      UEAElement lhs = U.commutator(U.gen(i), basis_[j]) - U.commutator(U.gen(j), basis_[i]);
      if (lhs != phi1(lr.structure[i][j]))
        fail("bracket equation fails on (" + lr.basis[i] + "," + lr.basis[j] + ")");
    }
  for (std::size_t j = 0; j < lr.d(); ++j)
    for (std::size_t i = 0; i < lr.n(); ++i) {
      UEAElement lhs = U.commutator(U.gen(j), vars_[i]) - phi0(lr.anchor[j].image(i));
      if (lhs != U.commutator(U.scalar(lr.x(i)), basis_[j]))
        fail("anchor equation fails on (" + lr.basis[j] + "," + lr.vars[i] + ")");
    }
}

UEAElement DerivationExtension::phi0(const Polynomial& r) const {
  const LieRinehart& lr = U_.lr();
  UEAElement out = U_.zero();
  for (const auto& [m, c] : r.terms()) {
    std::vector<std::size_t> word;
    for (std::size_t i = 0; i < lr.n(); ++i)
      for (int p = 0; p < m[i]; ++p) word.push_back(i);
    for (std::size_t p = 0; p < word.size(); ++p) {
      Monomial pre, post;
      for (std::size_t q = 0; q < p; ++q) pre = pre * Monomial::unit(word[q]);
      for (std::size_t q = p + 1; q < word.size(); ++q) post = post * Monomial::unit(word[q]);
      UEAElement t = vars_[word[p]].left_scaled(Polynomial::term(lr.n(), pre, c));
      out += U_.mul(t, U_.scalar(Polynomial::term(lr.n(), post, 1)));
    }
  }
  return out;
}

UEAElement DerivationExtension::phi1(const LElement& X) const {
  UEAElement out = U_.zero();
  for (std::size_t k = 0; k < X.rank(); ++k) {
    if (X[k].is_zero()) continue;
    out += basis_[k].left_scaled(X[k]);
    out += U_.mul(phi0(X[k]), U_.gen(k));
  }
  return out;
}

UEAElement DerivationExtension::apply(const UEAElement& u) const {
  const LieRinehart& lr = U_.lr();
  UEAElement out = U_.zero();
  for (const auto& [alpha, f] : u.terms()) {
    UEAElement word = UEAElement::term(lr.d(), alpha, lr.one());
    out += U_.mul(phi0(f), word);
    std::vector<std::size_t> gens;
    for (std::size_t k = 0; k < lr.d(); ++k)
      for (int p = 0; p < alpha[k]; ++p) gens.push_back(k);
    for (std::size_t p = 0; p < gens.size(); ++p) {
      Monomial pre, post;
      for (std::size_t q = 0; q < p; ++q) pre = pre * Monomial::unit(gens[q]);
      for (std::size_t q = p + 1; q < gens.size(); ++q) post = post * Monomial::unit(gens[q]);
      UEAElement t = U_.mul(UEAElement::term(lr.d(), pre, f), basis_[gens[p]]);
      out += U_.mul(t, UEAElement::term(lr.d(), post, lr.one()));
    }
  }
  return out;
}

}  // namespace rinehart
