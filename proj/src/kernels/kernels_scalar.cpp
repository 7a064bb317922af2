#include "submaj/kernels.hpp"

#include <algorithm>

namespace submaj::kernels::detail {

void gemm_scalar(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                 std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const cplx aik = a[i * k + l];
      if (aik == cplx{0.0, 0.0}) continue;
      const cplx* brow = b + l * n;
      cplx* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void axpby_scalar(cplx alpha, const cplx* x, cplx beta, cplx* y,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

cplx dot_conj_scalar(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm2sq_scalar(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

void scale_scalar(cplx alpha, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

}  // namespace submaj::kernels::detail
