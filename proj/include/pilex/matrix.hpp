#ifndef PILEX_MATRIX_HPP
#define PILEX_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "pilex/errors.hpp"
#include "pilex/rational.hpp"

namespace pilex {

// Dense matrix of exact rationals, row-major.
class RatMatrix {
 public:
  RatMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> data_;
};

// Exact determinant via fraction-free (Bareiss) elimination on the
// row-scaled integer matrix. Deterministic pivoting: first nonzero in order.
Rat determinant(const RatMatrix& m);

// Solves m * x = rhs exactly. Throws SingularMatrixError when m is singular.
std::vector<Rat> solve_linear_system(const RatMatrix& m, const std::vector<Rat>& rhs);

}  // namespace pilex

#endif
