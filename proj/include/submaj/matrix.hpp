#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "submaj/constants.hpp"

namespace submaj {

using cplx = std::complex<double>;

// Dense complex matrix, row-major, value semantics.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cplx s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= cplx{-1.0, 0.0}; }
  Matrix operator*(const Matrix& o) const;

  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

// Hilbert-Schmidt inner product Tr(A^* B).
cplx hs_inner(const Matrix& a, const Matrix& b);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix dsum(const Matrix& a, const Matrix& b);

// Hermitian matrix with positivity metadata. Construction validates
// conjugate symmetry within tol and stores the exactly symmetrized part.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(Matrix m, double tol = kTolHermitian);

  static HermitianMatrix identity(std::size_t d);
  static HermitianMatrix zero(std::size_t d);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  static HermitianMatrix scalar(double v) { return diagonal({v}); }

  std::size_t dim() const { return mat_.rows(); }
  const Matrix& mat() const { return mat_; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return mat_(i, j);
  }

  double trace() const { return mat_.trace().real(); }
  double max_abs() const { return mat_.max_abs(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a,
                                   const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a,
                                   const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

  // U A U^* for arbitrary (typically unitary or isometric) U.
  HermitianMatrix conjugate_by(const Matrix& u) const;

 private:
  struct Trusted {};
  HermitianMatrix(Matrix m, Trusted) : mat_(std::move(m)) {}
  Matrix mat_;

  friend HermitianMatrix hermitian_unchecked(Matrix m);
};

// Wraps a matrix that is Hermitian by construction; skips validation but
// still hard-symmetrizes to keep downstream algebra exact.
HermitianMatrix hermitian_unchecked(Matrix m);

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix dsum(const HermitianMatrix& a, const HermitianMatrix& b);

// Partial trace of an operator on H1 (x) H2 over the given factor (1 or 2).
HermitianMatrix partial_trace(const HermitianMatrix& a, std::size_t dim1,
                              std::size_t dim2, int subsystem);
Matrix partial_trace(const Matrix& a, std::size_t dim1, std::size_t dim2,
                     int subsystem);

}  // namespace submaj
