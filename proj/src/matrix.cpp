#include "pilex/matrix.hpp"

namespace pilex {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

namespace {

// Row-scaled integer copy: each row is multiplied by the lcm of its
// denominators. `scale[r]` records the multiplier.
struct ScaledMatrix {
  std::vector<std::vector<mpz_class>> rows;
  std::vector<mpz_class> scale;
};

ScaledMatrix scale_rows(const RatMatrix& m, const std::vector<Rat>* rhs) {
  ScaledMatrix out;
  out.rows.resize(m.rows());
  out.scale.resize(m.rows());
  const std::size_t cols = m.cols() + (rhs ? 1 : 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class lcm_den = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), m.at(r, c).get_den().get_mpz_t());
    }
    if (rhs) {
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), (*rhs)[r].get_den().get_mpz_t());
    }
    out.scale[r] = lcm_den;
    out.rows[r].resize(cols);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.rows[r][c] = m.at(r, c).get_num() * (lcm_den / m.at(r, c).get_den());
    }
    if (rhs) {
      out.rows[r][m.cols()] = (*rhs)[r].get_num() * (lcm_den / (*rhs)[r].get_den());
    }
  }
  return out;
}

// Fraction-free forward elimination. Returns the sign of the row swaps and
// leaves the matrix upper-triangular in the Bareiss sense; a zero pivot
// column means the matrix is singular (rank deficit), reported via the
// return flag.
struct BareissResult {
  int sign = 1;
  bool singular = false;
};

BareissResult bareiss_eliminate(std::vector<std::vector<mpz_class>>& a, std::size_t n) {
  BareissResult result;
  mpz_class prev_pivot = 1;
  for (std::size_t k = 0; k + 1 <= n && k < n; ++k) {
    std::size_t pivot_row = k;
    while (pivot_row < n && a[pivot_row][k] == 0) ++pivot_row;
    if (pivot_row == n) {
      result.singular = true;
      return result;
    }
    if (pivot_row != k) {
      std::swap(a[pivot_row], a[k]);
      result.sign = -result.sign;
    }
    const mpz_class pivot = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < a[i].size(); ++j) {
        a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev_pivot;
      }
      a[i][k] = 0;
    }
    prev_pivot = pivot;
  }
  return result;
}

}  // namespace

Rat determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw BoundsError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rat(1);
  ScaledMatrix scaled = scale_rows(m, nullptr);
  BareissResult r = bareiss_eliminate(scaled.rows, n);
  if (r.singular) return Rat(0);
  // After Bareiss, a[n-1][n-1] is det of the scaled integer matrix.
  mpz_class scale_product = 1;
  for (const auto& s : scaled.scale) scale_product *= s;
  Rat det(r.sign * scaled.rows[n - 1][n - 1], scale_product);
  det.canonicalize();
  return det;
}

std::vector<Rat> solve_linear_system(const RatMatrix& m, const std::vector<Rat>& rhs) {
  if (m.rows() != m.cols()) throw BoundsError("solving a non-square system");
  if (rhs.size() != m.rows()) throw BoundsError("right-hand side has wrong size");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  ScaledMatrix scaled = scale_rows(m, &rhs);
  BareissResult r = bareiss_eliminate(scaled.rows, n);
  if (r.singular || scaled.rows[n - 1][n - 1] == 0) {
    throw SingularMatrixError("matrix is singular");
  }
  std::vector<Rat> x(n, Rat(0));
  for (std::size_t i = n; i-- > 0;) {
    Rat sum(scaled.rows[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) sum -= Rat(scaled.rows[i][j]) * x[j];
    if (scaled.rows[i][i] == 0) throw SingularMatrixError("matrix is singular");
    x[i] = sum / Rat(scaled.rows[i][i]);
  }
  return x;
}

}  // namespace pilex
