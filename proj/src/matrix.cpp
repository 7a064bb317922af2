#include "submaj/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "submaj/errors.hpp"
#include "submaj/kernels.hpp"

namespace submaj {

Matrix Matrix::identity(std::size_t d) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::conjugate() const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    m.data_[i] = std::conj(data_[i]);
  return m;
}

cplx Matrix::trace() const {
  cplx t{0.0, 0.0};
  const std::size_t d = std::min(rows_, cols_);
  for (std::size_t i = 0; i < d; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  return std::sqrt(kernels::norm2sq(data_.data(), data_.size()));
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (!same_shape(o)) throw DimensionMismatch("matrix add: shape mismatch");
  kernels::axpby(cplx{1.0, 0.0}, o.data_.data(), cplx{1.0, 0.0}, data_.data(),
                 data_.size());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (!same_shape(o)) throw DimensionMismatch("matrix sub: shape mismatch");
  kernels::axpby(cplx{-1.0, 0.0}, o.data_.data(), cplx{1.0, 0.0}, data_.data(),
                 data_.size());
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  kernels::scale(s, data_.data(), data_.size());
  return *this;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_)
    throw DimensionMismatch("matrix mul: " + std::to_string(cols_) + " vs " +
                            std::to_string(o.rows_));
  Matrix c(rows_, o.cols_);
  kernels::gemm(data_.data(), o.data_.data(), c.data(), rows_, cols_,
                o.cols_);
  return c;
}

cplx hs_inner(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw DimensionMismatch("hs_inner: shape mismatch");
  return kernels::dot_conj(a.data(), b.data(), a.size());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

Matrix dsum(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

namespace {

Matrix symmetrized(Matrix m) {
  const std::size_t d = m.rows();
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = cplx{m(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < d; ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

}  // namespace

HermitianMatrix::HermitianMatrix(Matrix m, double tol) {
  if (!m.is_square())
    throw NotHermitian("hermitian matrix must be square, got " +
                       std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()));
  const double scale = std::max(1.0, m.max_abs());
  const std::size_t d = m.rows();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
      if (dev > tol * scale)
        throw NotHermitian("entry (" + std::to_string(i) + "," +
                           std::to_string(j) + ") violates conjugate symmetry by " +
                           std::to_string(dev));
    }
  mat_ = symmetrized(std::move(m));
}

HermitianMatrix hermitian_unchecked(Matrix m) {
  return HermitianMatrix(symmetrized(std::move(m)), HermitianMatrix::Trusted{});
}

HermitianMatrix HermitianMatrix::identity(std::size_t d) {
  return hermitian_unchecked(Matrix::identity(d));
}

HermitianMatrix HermitianMatrix::zero(std::size_t d) {
  return hermitian_unchecked(Matrix(d, d));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return hermitian_unchecked(std::move(m));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return hermitian_unchecked(a.mat_ + b.mat_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return hermitian_unchecked(a.mat_ - b.mat_);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return hermitian_unchecked(cplx{s, 0.0} * a.mat_);
}

HermitianMatrix HermitianMatrix::conjugate_by(const Matrix& u) const {
  return hermitian_unchecked(u * mat_ * u.adjoint());
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return hermitian_unchecked(kron(a.mat(), b.mat()));
}

HermitianMatrix dsum(const HermitianMatrix& a, const HermitianMatrix& b) {
  return hermitian_unchecked(dsum(a.mat(), b.mat()));
}

Matrix partial_trace(const Matrix& a, std::size_t dim1, std::size_t dim2,
                     int subsystem) {
  if (a.rows() != dim1 * dim2 || !a.is_square())
    throw DimensionMismatch("partial_trace: operator is not on the given product space");
  if (subsystem == 2) {
    Matrix r(dim1, dim1);
    for (std::size_t i = 0; i < dim1; ++i)
      for (std::size_t j = 0; j < dim1; ++j) {
        cplx s{0.0, 0.0};
        for (std::size_t k = 0; k < dim2; ++k)
          s += a(i * dim2 + k, j * dim2 + k);
        r(i, j) = s;
      }
    return r;
  }
  if (subsystem == 1) {
    Matrix r(dim2, dim2);
    for (std::size_t k = 0; k < dim2; ++k)
      for (std::size_t l = 0; l < dim2; ++l) {
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < dim1; ++i)
          s += a(i * dim2 + k, i * dim2 + l);
        r(k, l) = s;
      }
    return r;
  }
  throw DomainError("partial_trace: subsystem must be 1 or 2");
}

HermitianMatrix partial_trace(const HermitianMatrix& a, std::size_t dim1,
                              std::size_t dim2, int subsystem) {
  return hermitian_unchecked(partial_trace(a.mat(), dim1, dim2, subsystem));
}

}  // namespace submaj
