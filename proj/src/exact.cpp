#include "rinehart/exact.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace rinehart {

std::string to_string(const Rational& q) { return q.get_str(); }

void Polynomial::check_nvars() const {
  if (nvars_ > kMaxVars)
    throw std::invalid_argument("too many variables: " + std::to_string(nvars_) +
                                " (limit " + std::to_string(kMaxVars) + ")");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.emplace_back(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  Polynomial p(nvars);
  p.terms_.emplace_back(Monomial::unit(i), Rational(1));
  return p;
}

Polynomial Polynomial::term(std::size_t nvars, const Monomial& m, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree() == 0);
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return terms_.back().first.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same(o);
  Polynomial r(nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    if (a->first < b->first) {
      r.terms_.push_back(*a++);
    } else if (b->first < a->first) {
      r.terms_.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (c != 0) r.terms_.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  r.terms_.insert(r.terms_.end(), a, terms_.end());
  r.terms_.insert(r.terms_.end(), b, o.terms_.end());
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return Polynomial(nvars_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same(o);
  if (is_zero() || o.is_zero()) return Polynomial(nvars_);
  if (terms_.size() == 1 || o.terms_.size() == 1) {
    // Multiplying by a single term preserves the order.
    const Polynomial& single = terms_.size() == 1 ? *this : o;
    const Polynomial& other = terms_.size() == 1 ? o : *this;
    const auto& [m, c] = single.terms_[0];
    Polynomial r(nvars_);
    r.terms_.reserve(other.terms_.size());
    for (const auto& [om, oc] : other.terms_) r.terms_.emplace_back(m * om, c * oc);
    return r;
  }
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) prod.emplace_back(ma * mb, ca * cb);
  std::sort(prod.begin(), prod.end(),
            [](const Term& x, const Term& y) { return x.first < y.first; });
  Polynomial r(nvars_);
  for (auto& t : prod) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
    } else {
      if (!r.terms_.empty() && r.terms_.back().second == 0) r.terms_.pop_back();
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().second == 0) r.terms_.pop_back();
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(nvars_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable out of range");
  PolyBuilder b(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    b.add(d, c * m[var]);
  }
  return b.build();
}

Polynomial Polynomial::apply(const PolyDerivation& d) const {
  if (d.nvars() != nvars_)
    throw VariableMismatch("derivation and polynomial variable-list mismatch");
  Polynomial r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (d.image(i).is_zero()) continue;
    Polynomial di = derivative(i);
    if (!di.is_zero()) r += di * d.image(i);
  }
  return r;
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::size_t offset) const {
  if (offset + nvars_ > new_nvars) throw std::out_of_range("embed out of range");
  Polynomial r(new_nvars);
  r.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial e;
    for (std::size_t i = 0; i < nvars_; ++i) e[offset + i] = m[i];
    r.terms_.emplace_back(e, c);
  }
  // Relabeling variables can change the order within a degree.
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& x, const Term& y) { return x.first < y.first; });
  return r;
}

Polynomial Polynomial::restrict(std::size_t count, std::size_t offset) const {
  PolyBuilder b(nvars_ - count);
  for (const auto& [m, c] : terms_) {
    Monomial e;
    std::size_t k = 0;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (i >= offset && i < offset + count) {
        if (m[i] != 0) throw std::invalid_argument("restrict: dropped variable occurs");
        continue;
      }
      e[k++] = m[i];
    }
    b.add(e, c);
  }
  return b.build();
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  require_same(value);
  std::vector<Polynomial> powers{constant(nvars_, 1)};
  PolyBuilder b(nvars_);
  for (const auto& [m, c] : terms_) {
    unsigned k = m[var];
    while (powers.size() <= k) powers.push_back(powers.back() * value);
    Monomial rest = m;
    rest[var] = 0;
    b.add_product(term(nvars_, rest, c), powers[k]);
  }
  return b.build();
}

bool Polynomial::is_homogeneous(std::span<const int> weights, int* w) const {
  if (terms_.empty()) return true;
  int first = terms_[0].first.weight(weights);
  for (const auto& t : terms_)
    if (t.first.weight(weights) != first) return false;
  if (w) *w = first;
  return true;
}

bool Polynomial::divide_exact(const Polynomial& d, Polynomial* quotient) const {
  require_same(d);
  if (d.is_zero()) return false;
  // Multivariate division by the leading term in grlex order; exact iff the
  // remainder is zero.
  Polynomial rem = *this;
  PolyBuilder q(nvars_);
  const auto& [lm, lc] = d.terms_.back();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.terms_.back();
    if (!rm.divisible_by(lm)) return false;
    Polynomial t = term(nvars_, rm / lm, rc / lc);
    q.add(t);
    rem -= t * d;
  }
  if (quotient) *quotient = q.build();
  return true;
}

bool Polynomial::operator<(const Polynomial& o) const {
  if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
  std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = terms_[i];
    const auto& b = o.terms_[i];
    if (a.first != b.first) return a.first < b.first;
    if (a.second != b.second) return a.second < b.second;
  }
  return terms_.size() < o.terms_.size();
}

std::size_t Polynomial::hash() const {
  std::size_t h = nvars_;
  for (const auto& [m, c] : terms_) {
    h = h * 31 + m.hash();
    h = h * 31 + std::hash<std::string>{}(c.get_str());
  }
  return h;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest terms first reads naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = m.degree() == 0;
    if (a != 1 || unit) {
      os << a.get_str();
      if (!unit) os << "*";
    }
    bool firstvar = true;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (!firstvar) os << "*";
      firstvar = false;
      os << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

std::string Polynomial::to_string() const { return to_string(std::span<const std::string>{}); }

void PolyBuilder::add(const Polynomial& p, const Rational& scale) {
  if (p.nvars() != nvars_) throw VariableMismatch("PolyBuilder variable-list mismatch");
  if (scale == 0) return;
  for (const auto& [m, c] : p.terms()) acc_[m] += c * scale;
}

void PolyBuilder::add_product(const Polynomial& a, const Polynomial& b, const Rational& scale) {
  if (a.nvars() != nvars_ || b.nvars() != nvars_)
    throw VariableMismatch("PolyBuilder variable-list mismatch");
  if (scale == 0) return;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) acc_[ma * mb] += ca * cb * scale;
}

Polynomial PolyBuilder::build() const {
  Polynomial r(nvars_);
  r.terms_.reserve(acc_.size());
  for (const auto& [m, c] : acc_)
    if (c != 0) r.terms_.emplace_back(m, c);
  return r;
}

PolyDerivation::PolyDerivation(std::vector<Polynomial> images)
    : nvars_(images.size()), images_(std::move(images)) {
  for (const auto& p : images_)
    if (p.nvars() != nvars_)
      throw VariableMismatch("derivation image lives in a different ring");
}

PolyDerivation PolyDerivation::partial(std::size_t nvars, std::size_t i) {
  PolyDerivation d(nvars);
  d.images_[i] = Polynomial::constant(nvars, 1);
  return d;
}

bool PolyDerivation::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const auto& p) { return p.is_zero(); });
}

PolyDerivation PolyDerivation::operator+(const PolyDerivation& o) const {
  if (nvars_ != o.nvars_) throw VariableMismatch("derivation variable-list mismatch");
  PolyDerivation r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) r.images_[i] = images_[i] + o.images_[i];
  return r;
}

PolyDerivation PolyDerivation::operator-() const {
  PolyDerivation r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) r.images_[i] = -images_[i];
  return r;
}

PolyDerivation PolyDerivation::operator-(const PolyDerivation& o) const { return *this + (-o); }

PolyDerivation PolyDerivation::scaled(const Polynomial& f) const {
  PolyDerivation r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) r.images_[i] = images_[i] * f;
  return r;
}

PolyDerivation PolyDerivation::operator*(const Rational& c) const {
  PolyDerivation r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) r.images_[i] = images_[i] * c;
  return r;
}

PolyDerivation PolyDerivation::bracket(const PolyDerivation& o) const {
  if (nvars_ != o.nvars_) throw VariableMismatch("derivation variable-list mismatch");
  PolyDerivation r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i)
    r.images_[i] = o.images_[i].apply(*this) - images_[i].apply(o);
  return r;
}

std::string PolyDerivation::to_string(std::span<const std::string> names) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (images_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << images_[i].to_string(names) << ")*d/d"
       << (i < names.size() ? names[i] : "x" + std::to_string(i));
  }
  return first ? "0" : os.str();
}

bool weights_positive(const WeightVector& w) {
  return std::all_of(w.begin(), w.end(), [](int v) { return v > 0; });
}

std::map<int, Polynomial> weight_split(const Polynomial& p, const WeightVector& w) {
  if (w.size() != p.nvars()) throw VariableMismatch("weight vector length mismatch");
  std::map<int, PolyBuilder> pieces;
  for (const auto& [m, c] : p.terms()) {
    int k = m.weight(w);
    pieces.try_emplace(k, p.nvars()).first->second.add(m, c);
  }
  std::map<int, Polynomial> out;
  for (const auto& [k, b] : pieces) out.emplace(k, b.build());
  return out;
}

namespace {

void enumerate(std::size_t nvars, std::size_t i, Monomial& cur,
               const std::function<bool(std::size_t, const Monomial&)>& can_extend,
               const std::function<void(const Monomial&)>& emit) {
  if (i == nvars) {
    emit(cur);
    return;
  }
  for (std::uint16_t k = 0;; ++k) {
    cur[i] = k;
    if (!can_extend(i, cur)) break;
    enumerate(nvars, i + 1, cur, can_extend, emit);
  }
  cur[i] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_weight(std::size_t nvars, const WeightVector& w, int weight) {
  if (w.size() != nvars) throw VariableMismatch("weight vector length mismatch");
  if (!weights_positive(w))
    throw std::invalid_argument("monomials_of_weight needs positive weights");
  std::vector<Monomial> out;
  if (weight < 0) return out;
  Monomial cur;
  enumerate(
      nvars, 0, cur,
      [&](std::size_t, const Monomial& m) { return m.weight(w) <= weight; },
      [&](const Monomial& m) {
        if (m.weight(w) == weight) out.push_back(m);
      });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, int max_degree) {
  std::vector<Monomial> out;
  if (max_degree < 0) return out;
  Monomial cur;
  enumerate(
      nvars, 0, cur, [&](std::size_t, const Monomial& m) { return m.degree() <= max_degree; },
      [&](const Monomial& m) { out.push_back(m); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> monomials_of_weight_capped(std::size_t nvars, const WeightVector& w,
                                                int weight, int max_degree) {
  std::vector<Monomial> out;
  for (const auto& m : monomials_up_to_degree(nvars, max_degree))
    if (m.weight(w) == weight) out.push_back(m);
  return out;
}

}  // namespace rinehart
