#include "rinehart/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace rinehart {

SparseMatrixQ SparseMatrixQ::identity(std::size_t n) {
  SparseMatrixQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, Rational(1));
  return m;
}

SparseMatrixQ SparseMatrixQ::from_dense(const std::vector<VectorQ>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  SparseMatrixQ m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t j = 0; j < cols; ++j)
      if (rows[i][j] != 0) m.rows_[i].emplace_back(j, rows[i][j]);
  }
  return m;
}

Rational SparseMatrixQ::at(std::size_t i, std::size_t j) const {
  const Row& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, std::size_t c) { return e.first < c; });
  if (it != r.end() && it->first == j) return it->second;
  return 0;
}

std::size_t SparseMatrixQ::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

bool SparseMatrixQ::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
}

void SparseMatrixQ::add(std::size_t i, std::size_t j, const Rational& v) {
  if (i >= rows_.size() || j >= cols_) throw std::out_of_range("matrix index out of range");
  if (v == 0) return;
  Row& r = rows_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, std::size_t c) { return e.first < c; });
  if (it != r.end() && it->first == j) {
    it->second += v;
    if (it->second == 0) r.erase(it);
  } else {
    r.insert(it, Entry(j, v));
  }
}

void SparseMatrixQ::set_row(std::size_t i, Row r) {
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k].first >= cols_ || r[k].second == 0 || (k > 0 && r[k - 1].first >= r[k].first))
      throw std::invalid_argument("set_row: malformed sparse row");
  }
  rows_.at(i) = std::move(r);
}

SparseMatrixQ SparseMatrixQ::operator*(const SparseMatrixQ& o) const {
  if (cols_ != o.rows()) throw std::invalid_argument("matrix product shape mismatch");
  SparseMatrixQ out(rows(), o.cols());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [k, a] : rows_[i])
      for (const auto& [j, b] : o.rows_[k]) acc[j] += a * b;
    for (auto& [j, v] : acc)
      if (v != 0) out.rows_[i].emplace_back(j, v);
  }
  return out;
}

VectorQ SparseMatrixQ::apply(const VectorQ& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  VectorQ out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, a] : rows_[i]) out[i] += a * v[j];
  return out;
}

SparseMatrixQ SparseMatrixQ::transpose() const {
  SparseMatrixQ t(cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, a] : rows_[i]) t.rows_[j].emplace_back(i, a);
  return t;
}

namespace {

using IRow = std::vector<std::pair<std::size_t, Integer>>;

IRow integer_row(const SparseMatrixQ::Row& r) {
  Integer l = 1;
  for (const auto& e : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
  IRow out;
  out.reserve(r.size());
  for (const auto& [j, q] : r) out.emplace_back(j, Integer(q.get_num() * (l / q.get_den())));
  return out;
}

void divide_content(IRow& r) {
  Integer g = 0;
  for (const auto& e : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

const Integer* find(const IRow& r, std::size_t c) {
  auto it = std::lower_bound(r.begin(), r.end(), c,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != r.end() && it->first == c) return &it->second;
  return nullptr;
}

// r <- p*r - a*s
IRow combine(const IRow& r, const Integer& p, const IRow& s, const Integer& a) {
  IRow out;
  out.reserve(r.size() + s.size());
  auto x = r.begin(), y = s.begin();
  while (x != r.end() || y != s.end()) {
    if (y == s.end() || (x != r.end() && x->first < y->first)) {
      out.emplace_back(x->first, p * x->second);
      ++x;
    } else if (x == r.end() || y->first < x->first) {
      out.emplace_back(y->first, -a * y->second);
      ++y;
    } else {
      Integer v = p * x->second - a * y->second;
      if (v != 0) out.emplace_back(x->first, std::move(v));
      ++x;
      ++y;
    }
  }
  divide_content(out);
  return out;
}

struct Echelon {
  std::vector<IRow> rows;               // pivot rows, in pivot order
  std::vector<std::size_t> pivot_cols;  // parallel to rows
  std::vector<IRow> rest;               // rows with no pivot in range
};

// Pivots are only taken in columns < pivot_limit. With `jordan` the pivot
// columns are cleared from every other row, not just the ones below.
Echelon eliminate(const SparseMatrixQ& m, std::size_t pivot_limit, bool jordan) {
  std::vector<IRow> active;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) active.push_back(integer_row(m.row(i)));
  for (auto& r : active) divide_content(r);

  Echelon e;
  for (std::size_t c = 0; c < pivot_limit && !active.empty(); ++c) {
    std::size_t best = active.size();
    for (std::size_t i = 0; i < active.size(); ++i) {
      const Integer* v = find(active[i], c);
      if (!v) continue;
      if (best == active.size() || mpz_cmpabs(v->get_mpz_t(), find(active[best], c)->get_mpz_t()) < 0) best = i;
      if (abs(*v) == 1) break;
    }
    if (best == active.size()) continue;
    IRow piv = std::move(active[best]);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
    Integer p = *find(piv, c);
    for (auto& r : active) {
      const Integer* a = find(r, c);
      if (a) r = combine(r, p, piv, Integer(*a));
    }
    active.erase(std::remove_if(active.begin(), active.end(), [](const IRow& r) { return r.empty(); }),
                 active.end());
    if (jordan) {
      for (auto& r : e.rows) {
        const Integer* a = find(r, c);
        if (a) r = combine(r, p, piv, Integer(*a));
      }
    }
    e.rows.push_back(std::move(piv));
    e.pivot_cols.push_back(c);
  }
  e.rest = std::move(active);
  return e;
}

}  // namespace

KernelResult kernel_and_rank(const SparseMatrixQ& m) {
  Echelon e = eliminate(m, m.cols(), true);
  KernelResult out;
  out.rank = e.rows.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    VectorQ v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
      const Integer* a = find(e.rows[k], f);
      if (!a) continue;
      Rational q(*a, *find(e.rows[k], e.pivot_cols[k]));
      q.canonicalize();
      v[e.pivot_cols[k]] = -q;
    }
    out.basis.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const SparseMatrixQ& m) {
  // Eliminating the transpose is cheaper when there are fewer columns than rows.
  if (m.cols() > m.rows()) {
    SparseMatrixQ t = m.transpose();
    return eliminate(t, t.cols(), false).rows.size();
  }
  return eliminate(m, m.cols(), false).rows.size();
}

bool solve(const SparseMatrixQ& m, const VectorQ& b, VectorQ* x) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length");
  SparseMatrixQ aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    if (b[i] != 0) r.emplace_back(m.cols(), b[i]);
    aug.set_row(i, std::move(r));
  }
  Echelon e = eliminate(aug, m.cols(), true);
  if (!e.rest.empty()) return false;  // a row reduced to 0 = nonzero
  if (x) {
    VectorQ sol(m.cols());
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
      const Integer* rhs = find(e.rows[k], m.cols());
      if (!rhs) continue;
      Rational q(*rhs, *find(e.rows[k], e.pivot_cols[k]));
      q.canonicalize();
      sol[e.pivot_cols[k]] = q;
    }
    *x = std::move(sol);
  }
  return true;
}

void ComplexSlice::validate_shapes() const {
  if (!dims.empty() && maps.size() + 1 != dims.size())
    throw std::invalid_argument("complex slice: need one map between consecutive positions");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (maps[k].cols() != dims[k] || maps[k].rows() != dims[k + 1])
      throw std::invalid_argument("complex slice: map " + std::to_string(k) +
                                  " has shape " + std::to_string(maps[k].rows()) + "x" +
                                  std::to_string(maps[k].cols()) + ", expected " +
                                  std::to_string(dims[k + 1]) + "x" + std::to_string(dims[k]));
  }
}

void ComplexSlice::check_complex() const {
  for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
    if (!(maps[k + 1] * maps[k]).is_zero())
      throw NotAComplex(k, "not a complex: d_" + std::to_string(k + 1) + " * d_" +
                               std::to_string(k) + " is nonzero");
  }
}

std::vector<std::size_t> cohomology_dims(const ComplexSlice& s, bool check) {
  s.validate_shapes();
  if (check) s.check_complex();
  std::vector<std::size_t> ranks(s.maps.size());
  for (std::size_t k = 0; k < s.maps.size(); ++k) ranks[k] = rank(s.maps[k]);
  std::vector<std::size_t> out(s.dims.size());
  for (std::size_t k = 0; k < s.dims.size(); ++k) {
    std::size_t out_rank = k < ranks.size() ? ranks[k] : 0;
    std::size_t in_rank = k > 0 ? ranks[k - 1] : 0;
    out[k] = s.dims[k] - out_rank - in_rank;
  }
  return out;
}

}  // namespace rinehart
