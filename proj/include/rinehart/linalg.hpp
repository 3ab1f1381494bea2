// Exact sparse linear algebra over Q.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rinehart/exact.hpp"

namespace rinehart {

using VectorQ = std::vector<Rational>;

class SparseMatrixQ {
 public:
  using Entry = std::pair<std::size_t, Rational>;
  using Row = std::vector<Entry>;  // sorted by column, no zeros

  SparseMatrixQ() = default;
  SparseMatrixQ(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrixQ identity(std::size_t n);
  static SparseMatrixQ from_dense(const std::vector<VectorQ>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Row& row(std::size_t i) const { return rows_[i]; }
  Rational at(std::size_t i, std::size_t j) const;
  std::size_t nonzeros() const;
  bool is_zero() const;

  /// Adds to an entry; building helper, keeps the no-zero invariant.
  void add(std::size_t i, std::size_t j, const Rational& v);
  /// Replaces row i (entries must be sorted, columns in range).
  void set_row(std::size_t i, Row r);

  SparseMatrixQ operator*(const SparseMatrixQ& o) const;
  VectorQ apply(const VectorQ& v) const;
  SparseMatrixQ transpose() const;

  bool operator==(const SparseMatrixQ& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

struct KernelResult {
  std::vector<VectorQ> basis;
  std::size_t rank = 0;
};

/// Fraction-free elimination; the pivot in each column is the remaining entry
/// of smallest magnitude. Kernel vectors are normalized so the free coordinate
/// equals 1.
KernelResult kernel_and_rank(const SparseMatrixQ& m);
std::size_t rank(const SparseMatrixQ& m);

/// Particular solution of m x = b, if one exists.
bool solve(const SparseMatrixQ& m, const VectorQ& b, VectorQ* x);

/// Thrown when consecutive differentials do not compose to zero.
class NotAComplex : public std::runtime_error {
 public:
  NotAComplex(std::size_t position, const std::string& what)
      : std::runtime_error(what), position(position) {}
  std::size_t position;
};

/// A finite cochain complex V_0 -> V_1 -> ... ; maps[k] : V_k -> V_{k+1}
/// stored as a dim(V_{k+1}) x dim(V_k) matrix.
struct ComplexSlice {
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;  // optional, per position
  std::vector<SparseMatrixQ> maps;

  void validate_shapes() const;
  /// Throws NotAComplex naming the first k with maps[k+1] * maps[k] != 0.
  void check_complex() const;
};

/// dim ker d_k - rank d_{k-1} per position.
std::vector<std::size_t> cohomology_dims(const ComplexSlice& s, bool check = true);

}  // namespace rinehart
