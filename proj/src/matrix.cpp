#include "surfkernel/matrix.hpp"

#include <sstream>

#include "surfkernel/errors.hpp"

namespace surfkernel {

using boost::multiprecision::cpp_int;

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ShapeError("matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix difference shape mismatch");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::power(unsigned exponent) const {
  if (rows_ != cols_) throw ShapeError("power of a non-square matrix");
  IntMatrix result = identity(rows_), base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent) base = base * base;
  }
  return result;
}

std::int64_t IntMatrix::trace() const {
  if (rows_ != cols_) throw ShapeError("trace of a non-square matrix");
  std::int64_t t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

namespace {

// Bareiss elimination in place; returns the rank and the sign of the row
// permutation applied.
std::size_t bareiss(std::vector<std::vector<cpp_int>>& a, std::size_t cols, int& sign) {
  const std::size_t rows = a.size();
  sign = 1;
  cpp_int prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap(a[pivot], a[rank]);
      sign = -sign;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k)
        a[r][k] = (a[r][k] * a[rank][c] - a[r][c] * a[rank][k]) / prev;
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

std::vector<std::vector<cpp_int>> to_big(const IntMatrix& m) {
  std::vector<std::vector<cpp_int>> a(m.rows(), std::vector<cpp_int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

}  // namespace

cpp_int IntMatrix::determinant() const {
  if (rows_ != cols_) throw ShapeError("determinant of a non-square matrix");
  if (rows_ == 0) return 1;
  auto a = to_big(*this);
  int sign = 1;
  if (bareiss(a, cols_, sign) < rows_) return 0;
  return sign * a[rows_ - 1][cols_ - 1];
}

std::size_t IntMatrix::rank() const {
  auto a = to_big(*this);
  int sign = 1;
  return bareiss(a, cols_, sign);
}

std::string IntMatrix::to_text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ' ';
      out << (*this)(i, j);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace surfkernel
