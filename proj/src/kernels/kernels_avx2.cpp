#include "submaj/kernels.hpp"

// Compiled with -mavx2 -mfma on x86-64 (see src/CMakeLists.txt). Dispatch
// only routes here after a cpuid check, so using the intrinsics
// unconditionally inside this translation unit is safe.

#if defined(__x86_64__) || defined(_M_X64)
#define SUBMAJ_X86 1
#include <immintrin.h>
#else
#define SUBMAJ_X86 0
#endif

#include <algorithm>

namespace submaj::kernels::detail {

#if SUBMAJ_X86

bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

// One __m256d holds two interleaved complex<double> values [re0 im0 re1 im1].

// Complex product of two lanes: re = ac - bd, im = ad + bc.
inline __m256d cmul(__m256d x, __m256d y) {
  __m256d xre = _mm256_movedup_pd(x);         // [a0 a0 a1 a1]
  __m256d xim = _mm256_unpackhi_pd(x, x);     // [b0 b0 b1 b1]
  __m256d ysw = _mm256_shuffle_pd(y, y, 0x5); // [d0 c0 d1 c1]
  return _mm256_fmaddsub_pd(xre, y, _mm256_mul_pd(xim, ysw));
}

// conj(x) * y: re = ac + bd, im = ad - bc.
inline __m256d cmul_conj(__m256d x, __m256d y) {
  __m256d xre = _mm256_movedup_pd(x);
  __m256d xim = _mm256_unpackhi_pd(x, x);
  __m256d ysw = _mm256_shuffle_pd(y, y, 0x5);
  return _mm256_fmsubadd_pd(xre, y, _mm256_mul_pd(xim, ysw));
}

inline __m256d broadcast_cplx(cplx v) {
  return _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&v));
}

}  // namespace

void gemm_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t m,
               std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, cplx{0.0, 0.0});
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx aik = a[i * k + l];
      if (aik == cplx{0.0, 0.0}) continue;
      const cplx* brow = b + l * n;
      const __m256d av = broadcast_cplx(aik);
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        __m256d bv = _mm256_loadu_pd(reinterpret_cast<const double*>(brow + j));
        __m256d cv = _mm256_loadu_pd(reinterpret_cast<double*>(crow + j));
        cv = _mm256_add_pd(cv, cmul(av, bv));
        _mm256_storeu_pd(reinterpret_cast<double*>(crow + j), cv);
      }
      for (; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void axpby_avx2(cplx alpha, const cplx* x, cplx beta, cplx* y, std::size_t n) {
  const __m256d av = broadcast_cplx(alpha);
  const __m256d bv = broadcast_cplx(beta);
  const std::size_t n2 = n & ~std::size_t{1};
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d yv = _mm256_loadu_pd(reinterpret_cast<double*>(y + i));
    __m256d r = _mm256_add_pd(cmul(av, xv), cmul(bv, yv));
    _mm256_storeu_pd(reinterpret_cast<double*>(y + i), r);
  }
  for (; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

cplx dot_conj_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n2 = n & ~std::size_t{1};
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d yv = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    acc = _mm256_add_pd(acc, cmul_conj(xv, yv));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cplx result{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  for (; i < n; ++i) result += std::conj(x[i]) * y[i];
  return result;
}

double norm2sq_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const double* p = reinterpret_cast<const double*>(x);
  const std::size_t len = 2 * n;
  const std::size_t len4 = len & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < len4; i += 4) {
    __m256d v = _mm256_loadu_pd(p + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double result = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < len; ++i) result += p[i] * p[i];
  return result;
}

void scale_avx2(cplx alpha, cplx* x, std::size_t n) {
  const __m256d av = broadcast_cplx(alpha);
  const std::size_t n2 = n & ~std::size_t{1};
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    __m256d xv = _mm256_loadu_pd(reinterpret_cast<double*>(x + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(x + i), cmul(av, xv));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

#else  // !SUBMAJ_X86

bool avx2_available() { return false; }

void gemm_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t m,
               std::size_t k, std::size_t n) {
  gemm_scalar(a, b, c, m, k, n);
}
void axpby_avx2(cplx alpha, const cplx* x, cplx beta, cplx* y, std::size_t n) {
  axpby_scalar(alpha, x, beta, y, n);
}
cplx dot_conj_avx2(const cplx* x, const cplx* y, std::size_t n) {
  return dot_conj_scalar(x, y, n);
}
double norm2sq_avx2(const cplx* x, std::size_t n) {
  return norm2sq_scalar(x, n);
}
void scale_avx2(cplx alpha, cplx* x, std::size_t n) {
  scale_scalar(alpha, x, n);
}

#endif

}  // namespace submaj::kernels::detail
