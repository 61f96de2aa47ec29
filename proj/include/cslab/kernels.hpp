#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace cslab::kernels {

using cplx = std::complex<double>;

// Function table for the data-parallel inner loops. Every entry has a scalar
// reference implementation; vector variants must agree with it to rounding.
struct KernelTable {
  std::string_view isa;
  // out[i] = a[i] * b[i]
  void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out[i] = |a[i]|^2 (imaginary part zero)
  void (*abs2)(const cplx* a, cplx* out, std::size_t n);
  // y[i] += alpha * x[i]
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // sum_i x[i] * conj(y[i])
  cplx (*cdot)(const cplx* x, const cplx* y, std::size_t n);
  // out[n] = sum_m u[n+m] * conj(u[m]), n < len
  void (*correlate)(const cplx* u, std::size_t len, cplx* out);
};

const KernelTable& scalar_table();

// Null when the binary or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

// Chosen once per process: AVX2 when supported, unless CSLAB_SIMD=scalar.
const KernelTable& active();

}  // namespace cslab::kernels
