// Chevalley-Eilenberg cohomology of a Lie algebra with coefficients in a
// finite module, one weight piece at a time.
#include <functional>

#include "rinehart/quasimod.hpp"
#include "sampling.hpp"

namespace rinehart {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

void require_lie_algebra(const LieRinehart& lr) {
  if (lr.n() != 0)
    throw std::invalid_argument(
        "ce_cohomology: R has variables, so the cochain spaces are not weight-finite; "
        "use poisson-cohomology instead");
}

Matrix zero_matrix(std::size_t n) { return Matrix(n, std::vector<Rational>(n)); }

Matrix product(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size();
  Matrix r = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

std::vector<std::vector<std::size_t>> increasing(std::size_t d, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < d; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

void check_module(const LieRinehart& lr, const CEModule::Piece& p) {
  std::size_t d = lr.d();
  if (p.action.size() != d) throw std::invalid_argument("module: need one matrix per basis element");
  for (const auto& A : p.action) {
    if (A.size() != p.dim) throw std::invalid_argument("module: matrix of the wrong size");
    for (const auto& row : A)
      if (row.size() != p.dim) throw std::invalid_argument("module: matrix of the wrong size");
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Matrix lhs = product(p.action[i], p.action[j]), ba = product(p.action[j], p.action[i]);
      Matrix rhs = zero_matrix(p.dim);
      for (std::size_t a = 0; a < p.dim; ++a)
        for (std::size_t b = 0; b < p.dim; ++b) {
          lhs[a][b] -= ba[a][b];
          for (std::size_t k = 0; k < d; ++k)
            rhs[a][b] += lr.structure[i][j][k].constant_term() * p.action[k][a][b];
        }
      if (lhs != rhs)
        throw std::invalid_argument("matrices do not define a module: [" + lr.basis[i] + ", " +
                                    lr.basis[j] + "] is not represented");
    }
}

}  // namespace

CEModule ce_trivial_module(const LieRinehart& lr) {
  require_lie_algebra(lr);
  CEModule M;
  M.name = "trivial";
  M.pieces.push_back({0, 1, std::vector<Matrix>(lr.d(), zero_matrix(1))});
  return M;
}

CEModule ce_sym_adjoint_module(const LieRinehart& lr, int max_weight) {
  require_lie_algebra(lr);
  PoissonAlgebra pa(lr);
  std::size_t d = lr.d();
  CEModule M;
  M.name = "sym";
  for (int q = 0; q <= max_weight; ++q) {
    std::vector<Monomial> basis;
    for (const auto& m : monomials_up_to_degree(d, q))
      if (m.degree() == q) basis.push_back(m);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    CEModule::Piece p{q, basis.size(), std::vector<Matrix>(d, zero_matrix(basis.size()))};
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t col = 0; col < basis.size(); ++col) {
        Polynomial img = pa.bracket(pa.coordinate(k), Polynomial::term(d, basis[col], 1));
        for (const auto& [m, v] : img.terms()) p.action[k][index.at(m)][col] = v;
      }
    M.pieces.push_back(std::move(p));
  }
  return M;
}

CEModule ce_custom_module(const LieRinehart& lr, std::vector<Matrix> action) {
  require_lie_algebra(lr);
  CEModule M;
  M.name = "custom";
  std::size_t dim = action.empty() ? 0 : action[0].size();
  M.pieces.push_back({0, dim, std::move(action)});
  check_module(lr, M.pieces[0]);
  return M;
}

std::vector<TableEntry> ce_cohomology(const LieRinehart& lr, const CEModule& M, int max_degree) {
  require_lie_algebra(lr);
  std::size_t d = lr.d();
  int top = std::min<int>(max_degree, static_cast<int>(d));
  std::vector<TableEntry> out;
  for (const auto& piece : M.pieces) {
    check_module(lr, piece);
    std::size_t dim = piece.dim;
    std::vector<std::vector<std::vector<std::size_t>>> tuples;
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> index;
    for (int k = 0; k <= top + 1; ++k) {
      tuples.push_back(increasing(d, static_cast<std::size_t>(k)));
      std::map<std::vector<std::size_t>, std::size_t> ix;
      for (std::size_t i = 0; i < tuples.back().size(); ++i) ix.emplace(tuples.back()[i], i);
      index.push_back(std::move(ix));
    }
    ComplexSlice s;
    for (int k = 0; k <= top + 1; ++k) s.dims.push_back(tuples[k].size() * dim);
    for (int k = 0; k <= top; ++k) {
      SparseMatrixQ A(s.dims[k + 1], s.dims[k]);
      for (std::size_t jr = 0; jr < tuples[k + 1].size(); ++jr) {
        const auto& J = tuples[k + 1][jr];
        for (std::size_t a = 0; a < J.size(); ++a) {
          std::vector<std::size_t> K;
          for (std::size_t t = 0; t < J.size(); ++t)
            if (t != a) K.push_back(J[t]);
          std::size_t kc = index[k].at(K);
          for (std::size_t row = 0; row < dim; ++row)
            for (std::size_t col = 0; col < dim; ++col) {
              const Rational& v = piece.action[J[a]][row][col];
              if (v != 0) A.add(jr * dim + row, kc * dim + col, a % 2 == 0 ? v : Rational(-v));
            }
        }
        for (std::size_t a = 0; a < J.size(); ++a)
          for (std::size_t b = a + 1; b < J.size(); ++b)
            for (std::size_t e = 0; e < d; ++e) {
              Rational c = lr.structure[J[a]][J[b]][e].constant_term();
              if (c == 0) continue;
              std::vector<std::size_t> K{e};
              for (std::size_t t = 0; t < J.size(); ++t)
                if (t != a && t != b) K.push_back(J[t]);
              int sg = sampling::sort_sign(K);
              if (sg == 0) continue;
              std::size_t kc = index[k].at(K);
              Rational v = ((a + b) % 2 == 0 ? c : Rational(-c)) * sg;
              for (std::size_t row = 0; row < dim; ++row) A.add(jr * dim + row, kc * dim + row, v);
            }
      }
      s.maps.push_back(std::move(A));
    }
    auto dims = cohomology_dims(s);
    for (int k = 0; k <= top; ++k) out.push_back({"ce", piece.weight, k, dims[k]});
  }
  return out;
}

}  // namespace rinehart
