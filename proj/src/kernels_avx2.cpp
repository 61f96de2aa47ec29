#include "kernels_impl.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define CSLAB_HAVE_AVX2 1
#else
#define CSLAB_HAVE_AVX2 0
#endif

namespace cslab::kernels::avx2 {

#if CSLAB_HAVE_AVX2

namespace {

// Two complex numbers per register, interleaved (re, im, re, im).
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d mul2(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

}  // namespace

bool compiled() { return true; }

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, mul2(load2(a + i), load2(b + i)));
  if (i < n) scalar::cmul(a + i, b + i, out + i, n - i);
}

void abs2(const cplx* a, cplx* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(a + i);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m256d h = _mm256_hadd_pd(sq, sq);
    store2(out + i, _mm256_blend_pd(h, zero, 0b1010));
  }
  if (i < n) scalar::abs2(a + i, out + i, n - i);
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    store2(y + i, _mm256_add_pd(load2(y + i), prod));
  }
  if (i < n) scalar::caxpy(alpha, x + i, y + i, n - i);
}

cplx cdot(const cplx* x, const cplx* y, std::size_t n) {
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), cross);
  }
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(c, cross);
  // same = (xr yr, xi yi, ...), cross = (xr yi, xi yr, ...)
  cplx acc((s[0] + s[2]) + (s[1] + s[3]), (c[1] + c[3]) - (c[0] + c[2]));
  if (i < n) acc += scalar::cdot(x + i, y + i, n - i);
  return acc;
}

void correlate(const cplx* u, std::size_t len, cplx* out) {
  for (std::size_t n = 0; n < len; ++n) out[n] = cdot(u + n, u, len - n);
}

#else

bool compiled() { return false; }
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) { scalar::cmul(a, b, out, n); }
void abs2(const cplx* a, cplx* out, std::size_t n) { scalar::abs2(a, out, n); }
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) { scalar::caxpy(alpha, x, y, n); }
cplx cdot(const cplx* x, const cplx* y, std::size_t n) { return scalar::cdot(x, y, n); }
void correlate(const cplx* u, std::size_t len, cplx* out) { scalar::correlate(u, len, out); }

#endif

}  // namespace cslab::kernels::avx2
