#pragma once

#include "cslab/kernels.hpp"

namespace cslab::kernels {

namespace scalar {
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void abs2(const cplx* a, cplx* out, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
cplx cdot(const cplx* x, const cplx* y, std::size_t n);
void correlate(const cplx* u, std::size_t len, cplx* out);
}  // namespace scalar

namespace avx2 {
// False when this translation unit was built without AVX2 support.
bool compiled();
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void abs2(const cplx* a, cplx* out, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
cplx cdot(const cplx* x, const cplx* y, std::size_t n);
void correlate(const cplx* u, std::size_t len, cplx* out);
}  // namespace avx2

}  // namespace cslab::kernels
