#include "frobcat/fp_matrix.hpp"

#include <stdexcept>
#include <string>

#include "frobcat/decision.hpp"  // is_prime

namespace frobcat {

MatrixFp::MatrixFp(uint32_t p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
  if (!is_prime(p)) throw std::invalid_argument("MatrixFp: modulus " + std::to_string(p) + " is not prime");
  if (rows < 0 || cols < 0) throw std::invalid_argument("MatrixFp: negative dimension");
  entries_.assign(static_cast<size_t>(rows) * cols, 0);
}

MatrixFp MatrixFp::identity(uint32_t p, int n) {
  MatrixFp m(p, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

MatrixFp MatrixFp::from_rows(uint32_t p, const std::vector<std::vector<uint32_t>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  MatrixFp m(p, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("MatrixFp::from_rows: ragged rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

MatrixFp MatrixFp::operator*(const MatrixFp& other) const {
  if (cols_ != other.rows_ || p_ != other.p_) throw std::invalid_argument("MatrixFp: dimension mismatch in *");
  MatrixFp out(p_, rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const uint64_t a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j)
        out.set(i, j, static_cast<uint32_t>((out.at(i, j) + a * other.at(k, j)) % p_));
    }
  return out;
}

MatrixFp MatrixFp::operator+(const MatrixFp& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || p_ != other.p_)
    throw std::invalid_argument("MatrixFp: dimension mismatch in +");
  MatrixFp out(p_, rows_, cols_);
  for (size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = static_cast<uint32_t>((static_cast<uint64_t>(entries_[k]) + other.entries_[k]) % p_);
  return out;
}

MatrixFp MatrixFp::operator-(const MatrixFp& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || p_ != other.p_)
    throw std::invalid_argument("MatrixFp: dimension mismatch in -");
  MatrixFp out(p_, rows_, cols_);
  for (size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = static_cast<uint32_t>((static_cast<uint64_t>(entries_[k]) + p_ - other.entries_[k]) % p_);
  return out;
}

bool MatrixFp::operator==(const MatrixFp& other) const {
  return p_ == other.p_ && rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
}

MatrixFp MatrixFp::scaled(uint32_t factor) const {
  MatrixFp out(p_, rows_, cols_);
  const uint64_t f = factor % p_;
  for (size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = static_cast<uint32_t>(entries_[k] * f % p_);
  return out;
}

MatrixFp MatrixFp::transposed() const {
  MatrixFp out(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

MatrixFp MatrixFp::stacked(const MatrixFp& below) const {
  if (cols_ != below.cols_ || p_ != below.p_) throw std::invalid_argument("MatrixFp: dimension mismatch in stack");
  MatrixFp out(p_, rows_ + below.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
  for (int i = 0; i < below.rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(rows_ + i, j, below.at(i, j));
  return out;
}

bool MatrixFp::is_zero() const {
  for (uint32_t v : entries_)
    if (v != 0) return false;
  return true;
}

bool MatrixFp::is_invertible() const { return rows_ == cols_ && rref(*this).rank == rows_; }

uint32_t inv_mod(uint32_t a, uint32_t p) {
  a %= p;
  if (a == 0) throw std::invalid_argument("inv_mod: zero has no inverse");
  // extended Euclid on (a, p)
  int64_t old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    const int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  return static_cast<uint32_t>(((old_s % p) + p) % p);
}

Rref rref(const MatrixFp& m) {
  Rref out{m, 0, {}};
  MatrixFp& a = out.matrix;
  const uint32_t p = m.p();
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows() && pivot == -1; ++r)
      if (a.at(r, col) != 0) pivot = r;
    if (pivot == -1) continue;
    if (pivot != row)
      for (int c = 0; c < m.cols(); ++c) {
        const uint32_t tmp = a.at(row, c);
        a.set(row, c, a.at(pivot, c));
        a.set(pivot, c, tmp);
      }
    const uint64_t inv = inv_mod(a.at(row, col), p);
    for (int c = 0; c < m.cols(); ++c) a.set(row, c, static_cast<uint32_t>(a.at(row, c) * inv % p));
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const uint64_t factor = a.at(r, col);
      if (factor == 0) continue;
      for (int c = 0; c < m.cols(); ++c)
        a.set(r, c, static_cast<uint32_t>((a.at(r, c) + (p - 1) * factor % p * a.at(row, c)) % p));
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rank = row;
  return out;
}

MatrixFp nullspace(const MatrixFp& m) {
  const Rref red = rref(m);
  std::vector<int> free_cols;
  {
    size_t next = 0;
    for (int c = 0; c < m.cols(); ++c) {
      if (next < red.pivot_cols.size() && red.pivot_cols[next] == c)
        ++next;
      else
        free_cols.push_back(c);
    }
  }
  MatrixFp basis(m.p(), m.cols(), static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    basis.set(fc, static_cast<int>(k), 1);
    for (int r = 0; r < red.rank; ++r) {
      const uint32_t v = red.matrix.at(r, fc);
      if (v != 0) basis.set(red.pivot_cols[r], static_cast<int>(k), m.p() - v);
    }
  }
  return basis;
}

MatrixFp image(const MatrixFp& m) {
  const Rref red = rref(m);
  MatrixFp basis(m.p(), m.rows(), static_cast<int>(red.pivot_cols.size()));
  for (size_t k = 0; k < red.pivot_cols.size(); ++k)
    for (int r = 0; r < m.rows(); ++r) basis.set(r, static_cast<int>(k), m.at(r, red.pivot_cols[k]));
  return basis;
}

std::optional<MatrixFp> solve_matrix(const MatrixFp& m, const MatrixFp& b) {
  if (m.rows() != b.rows() || m.p() != b.p()) throw std::invalid_argument("solve: dimension mismatch");
  MatrixFp augmented(m.p(), m.rows(), m.cols() + b.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) augmented.set(r, c, m.at(r, c));
    for (int c = 0; c < b.cols(); ++c) augmented.set(r, m.cols() + c, b.at(r, c));
  }
  const Rref red = rref(augmented);
  for (int pc : red.pivot_cols)
    if (pc >= m.cols()) return std::nullopt;  // a pivot in the b block: inconsistent
  MatrixFp x(m.p(), m.cols(), b.cols());
  for (size_t r = 0; r < red.pivot_cols.size(); ++r)
    for (int c = 0; c < b.cols(); ++c) x.set(red.pivot_cols[r], c, red.matrix.at(static_cast<int>(r), m.cols() + c));
  return x;
}

std::optional<std::vector<uint32_t>> solve(const MatrixFp& m, const std::vector<uint32_t>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  MatrixFp col(m.p(), m.rows(), 1);
  for (int r = 0; r < m.rows(); ++r) col.set(r, 0, b[r]);
  const auto x = solve_matrix(m, col);
  if (!x) return std::nullopt;
  std::vector<uint32_t> out(m.cols());
  for (int r = 0; r < m.cols(); ++r) out[r] = x->at(r, 0);
  return out;
}

}  // namespace frobcat
