#include "submaj/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace submaj::kernels {

namespace {

struct Table {
  void (*gemm)(const cplx*, const cplx*, cplx*, std::size_t, std::size_t,
               std::size_t);
  void (*axpby)(cplx, const cplx*, cplx, cplx*, std::size_t);
  cplx (*dot_conj)(const cplx*, const cplx*, std::size_t);
  double (*norm2sq)(const cplx*, std::size_t);
  void (*scale)(cplx, cplx*, std::size_t);
};

constexpr Table kScalarTable{detail::gemm_scalar, detail::axpby_scalar,
                             detail::dot_conj_scalar, detail::norm2sq_scalar,
                             detail::scale_scalar};
constexpr Table kAvx2Table{detail::gemm_avx2, detail::axpby_avx2,
                           detail::dot_conj_avx2, detail::norm2sq_avx2,
                           detail::scale_avx2};

std::atomic<const Table*> g_table{nullptr};
std::atomic<Impl> g_impl{Impl::Scalar};

void select(Impl impl) {
  g_impl.store(impl, std::memory_order_relaxed);
  g_table.store(impl == Impl::Avx2 ? &kAvx2Table : &kScalarTable,
                std::memory_order_release);
}

const Table& table() {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (!t) {
    reset();
    t = g_table.load(std::memory_order_acquire);
  }
  return *t;
}

}  // namespace

void reset() {
  Impl impl = detail::avx2_available() ? Impl::Avx2 : Impl::Scalar;
  if (const char* env = std::getenv("SUBMAJ_KERNEL")) {
    if (std::strcmp(env, "scalar") == 0) {
      impl = Impl::Scalar;
    } else if (std::strcmp(env, "avx2") == 0 && detail::avx2_available()) {
      impl = Impl::Avx2;
    }
  }
  select(impl);
}

Impl active() {
  table();
  return g_impl.load(std::memory_order_relaxed);
}

void force(Impl impl) {
  if (impl == Impl::Avx2 && !detail::avx2_available())
    throw std::runtime_error("AVX2 kernels not available on this CPU");
  select(impl);
}

const char* impl_name(Impl impl) {
  return impl == Impl::Avx2 ? "avx2" : "scalar";
}

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
          std::size_t n) {
  table().gemm(a, b, c, m, k, n);
}

void axpby(cplx alpha, const cplx* x, cplx beta, cplx* y, std::size_t n) {
  table().axpby(alpha, x, beta, y, n);
}

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
  return table().dot_conj(x, y, n);
}

double norm2sq(const cplx* x, std::size_t n) {
  return table().norm2sq(x, n);
}

void scale(cplx alpha, cplx* x, std::size_t n) {
  table().scale(alpha, x, n);
}

}  // namespace submaj::kernels
