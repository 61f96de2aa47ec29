#include "kernels_impl.hpp"

namespace cslab::kernels::scalar {

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void abs2(const cplx* a, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = a[i].real(), im = a[i].imag();
    out[i] = cplx(r * r + im * im, 0.0);
  }
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cplx(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
  }
}

cplx cdot(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xi * yr - xr * yi;
  }
  return {re, im};
}

void correlate(const cplx* u, std::size_t len, cplx* out) {
  for (std::size_t n = 0; n < len; ++n) out[n] = cdot(u + n, u, len - n);
}

}  // namespace cslab::kernels::scalar
