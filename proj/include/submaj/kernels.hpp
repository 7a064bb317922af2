#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel kernels over interleaved complex<double> arrays. Every
// operation has a scalar reference implementation and, on x86-64 with AVX2
// and FMA, a vectorized variant selected at runtime. The two are
// equivalence-tested against each other; results may differ by FMA rounding
// only. SUBMAJ_KERNEL=scalar|avx2 overrides the dispatch.

namespace submaj::kernels {

using cplx = std::complex<double>;

enum class Impl { Scalar, Avx2 };

// Implementation currently selected by the dispatcher.
Impl active();

// Force a specific implementation (throws if unavailable on this CPU).
void force(Impl impl);

// Re-run detection (honors SUBMAJ_KERNEL).
void reset();

const char* impl_name(Impl impl);

// C = A * B with A (m x k), B (k x n), C (m x n), all row-major.
// C must not alias A or B.
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
          std::size_t n);

// y[i] = alpha * x[i] + beta * y[i]
void axpby(cplx alpha, const cplx* x, cplx beta, cplx* y, std::size_t n);

// sum_i conj(x[i]) * y[i]
cplx dot_conj(const cplx* x, const cplx* y, std::size_t n);

// sum_i |x[i]|^2
double norm2sq(const cplx* x, std::size_t n);

// x[i] *= alpha
void scale(cplx alpha, cplx* x, std::size_t n);

namespace detail {
// Scalar reference kernels, always available; exposed for equivalence tests.
void gemm_scalar(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                 std::size_t k, std::size_t n);
void axpby_scalar(cplx alpha, const cplx* x, cplx beta, cplx* y,
                  std::size_t n);
cplx dot_conj_scalar(const cplx* x, const cplx* y, std::size_t n);
double norm2sq_scalar(const cplx* x, std::size_t n);
void scale_scalar(cplx alpha, cplx* x, std::size_t n);

bool avx2_available();
void gemm_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t m,
               std::size_t k, std::size_t n);
void axpby_avx2(cplx alpha, const cplx* x, cplx beta, cplx* y, std::size_t n);
cplx dot_conj_avx2(const cplx* x, const cplx* y, std::size_t n);
double norm2sq_avx2(const cplx* x, std::size_t n);
void scale_avx2(cplx alpha, cplx* x, std::size_t n);
}  // namespace detail

}  // namespace submaj::kernels
