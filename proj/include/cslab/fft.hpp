#pragma once

#include <complex>
#include <cstddef>

namespace cslab::fft {

// In-place unnormalized transforms.
// forward:  X[k] = sum_m x[m] exp(-2 pi i k m / n)
// backward: x[m] = sum_k X[k] exp(+2 pi i k m / n)
void forward(std::complex<double>* data, std::size_t n);
void backward(std::complex<double>* data, std::size_t n);

// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace cslab::fft
