#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cfd/rational.hpp"

namespace cfd {

// Small dense matrices over Q. The systems here (Vandermonde, Pade,
// optimal-formula) stay below ~30 unknowns, so plain Gauss-Jordan with exact
// rationals is fast enough.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RationalMatrix reduced;              // reduced row echelon form
  std::vector<std::size_t> pivots;     // pivot column of each nonzero row
};

RowEchelon row_reduce(RationalMatrix m);

/// Unique solution of A x = b, or empty when A is singular.
std::optional<std::vector<Rational>> solve_exact(const RationalMatrix& a, const std::vector<Rational>& b);

/// Basis of {x : A x = 0}.
std::vector<std::vector<Rational>> nullspace_exact(const RationalMatrix& a);

}  // namespace cfd
