#ifndef FROBCAT_FP_MATRIX_HPP_
#define FROBCAT_FP_MATRIX_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace frobcat {

/// Dense matrix over the prime field F_p, row-major, entries reduced into
/// [0, p). Everything is exact; dimensions in the oracles stay tiny, so no
/// sparse machinery.
class MatrixFp {
 public:
  MatrixFp() = default;
  MatrixFp(uint32_t p, int rows, int cols);  // zero matrix; p must be prime

  static MatrixFp identity(uint32_t p, int n);
  static MatrixFp from_rows(uint32_t p, const std::vector<std::vector<uint32_t>>& rows);

  uint32_t p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  uint32_t at(int r, int c) const { return entries_[static_cast<size_t>(r) * cols_ + c]; }
  void set(int r, int c, uint32_t v) { entries_[static_cast<size_t>(r) * cols_ + c] = v % p_; }

  MatrixFp operator*(const MatrixFp& other) const;
  MatrixFp operator+(const MatrixFp& other) const;
  MatrixFp operator-(const MatrixFp& other) const;
  bool operator==(const MatrixFp& other) const;

  MatrixFp scaled(uint32_t factor) const;
  MatrixFp transposed() const;
  /// Rows of `below` appended under this matrix.
  MatrixFp stacked(const MatrixFp& below) const;

  bool is_zero() const;
  bool is_invertible() const;  // square and full rank

 private:
  uint32_t p_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<uint32_t> entries_;
};

uint32_t inv_mod(uint32_t a, uint32_t p);

struct Rref {
  MatrixFp matrix;
  int rank = 0;
  std::vector<int> pivot_cols;
};

/// Reduced row-echelon form by Gauss-Jordan elimination, first nonzero
/// entry as pivot; idempotent and deterministic.
Rref rref(const MatrixFp& m);

/// Basis of {x : m x = 0}, one basis vector per column, in the standard
/// free-column parametrization (cols x nullity).
MatrixFp nullspace(const MatrixFp& m);

/// Basis of the column space: the pivot columns of m (rows x rank).
MatrixFp image(const MatrixFp& m);

/// Some x with m x = b, or nullopt when b is outside the column space.
std::optional<std::vector<uint32_t>> solve(const MatrixFp& m, const std::vector<uint32_t>& b);

/// Columnwise solve: x with m x = b for each column of b, or nullopt when
/// any column is inconsistent.
std::optional<MatrixFp> solve_matrix(const MatrixFp& m, const MatrixFp& b);

}  // namespace frobcat

#endif  // FROBCAT_FP_MATRIX_HPP_
