#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bloch {

using cplx = std::complex<double>;

// Dense row-major complex matrix sized for small linear algebra (rank <= 16).
class Matrix {
 public:
  Matrix() = default;

  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(check_size(rows, cols)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& at(int r, int c) { return data_[index(r, c)]; }
  const cplx& at(int r, int c) const { return data_[index(r, c)]; }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        const cplx v = at(i, k);
        if (v == cplx{}) continue;
        for (int j = 0; j < o.cols_; ++j) out.at(i, j) += v * o.at(k, j);
      }
    }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }

  Matrix scaled(cplx s) const {
    Matrix out = *this;
    for (cplx& v : out.data_) v *= s;
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  Matrix conjugate() const {
    Matrix out = *this;
    for (cplx& v : out.data_) v = std::conj(v);
    return out;
  }

  cplx trace() const {
    require_square();
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  // LU with partial pivoting; exact zero for structurally singular pivots.
  cplx det() const {
    require_square();
    Matrix lu = *this;
    cplx d = 1.0;
    for (int k = 0; k < rows_; ++k) {
      int pivot = k;
      double best = std::abs(lu.at(k, k));
      for (int r = k + 1; r < rows_; ++r) {
        const double mag = std::abs(lu.at(r, k));
        if (mag > best) {
          best = mag;
          pivot = r;
        }
      }
      if (best == 0.0) return 0.0;
      if (pivot != k) {
        for (int j = 0; j < cols_; ++j) std::swap(lu.at(k, j), lu.at(pivot, j));
        d = -d;
      }
      d *= lu.at(k, k);
      for (int r = k + 1; r < rows_; ++r) {
        const cplx factor = lu.at(r, k) / lu.at(k, k);
        for (int j = k; j < cols_; ++j) lu.at(r, j) -= factor * lu.at(k, j);
      }
    }
    return d;
  }

  Matrix inverse() const {
    require_square();
    Matrix work = *this;
    Matrix out = identity(rows_);
    for (int k = 0; k < rows_; ++k) {
      int pivot = k;
      double best = std::abs(work.at(k, k));
      for (int r = k + 1; r < rows_; ++r) {
        const double mag = std::abs(work.at(r, k));
        if (mag > best) {
          best = mag;
          pivot = r;
        }
      }
      if (best == 0.0) throw std::domain_error("matrix is singular");
      if (pivot != k) {
        for (int j = 0; j < cols_; ++j) {
          std::swap(work.at(k, j), work.at(pivot, j));
          std::swap(out.at(k, j), out.at(pivot, j));
        }
      }
      const cplx inv_pivot = 1.0 / work.at(k, k);
      for (int j = 0; j < cols_; ++j) {
        work.at(k, j) *= inv_pivot;
        out.at(k, j) *= inv_pivot;
      }
      for (int r = 0; r < rows_; ++r) {
        if (r == k) continue;
        const cplx factor = work.at(r, k);
        if (factor == cplx{}) continue;
        for (int j = 0; j < cols_; ++j) {
          work.at(r, j) -= factor * work.at(k, j);
          out.at(r, j) -= factor * out.at(k, j);
        }
      }
    }
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  bool approx_equal(const Matrix& o, double tol) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
      if (std::abs(data_[i] - o.data_[i]) > tol) return false;
    return true;
  }

 private:
  static size_t check_size(int rows, int cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    return static_cast<size_t>(rows) * static_cast<size_t>(cols);
  }

  size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("matrix index out of range");
    return static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c);
  }

  void require_square() const {
    if (rows_ != cols_) throw std::invalid_argument("operation needs a square matrix");
  }

  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx v = a.at(i, j);
      if (v == cplx{}) continue;
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c)
          out.at(i * b.rows() + r, j * b.cols() + c) = v * b.at(r, c);
    }
  return out;
}

}  // namespace bloch
