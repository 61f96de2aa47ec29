#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "cslab/error.hpp"

namespace cslab {

using cplx = std::complex<double>;

enum class Sign { kFocusing, kDefocusing };

// +1 for focusing, -1 for defocusing.
inline double sign_factor(Sign s) { return s == Sign::kFocusing ? 1.0 : -1.0; }
const char* to_string(Sign s);
Sign parse_sign(const std::string& s);

// Coefficients u(n), n = 0..K-1, of a function in the Hardy space.
class HardyCoeffs {
 public:
  HardyCoeffs() = default;
  explicit HardyCoeffs(Eigen::VectorXcd coeffs);
  explicit HardyCoeffs(const std::vector<cplx>& coeffs);
  static HardyCoeffs zeros(int K);
  // Single mode amplitude * e^{i n x}.
  static HardyCoeffs mode(int K, int n, cplx amplitude = 1.0);

  int K() const { return static_cast<int>(c_.size()); }
  cplx operator[](int n) const { return c_[n]; }
  cplx& operator[](int n) { return c_[n]; }
  const Eigen::VectorXcd& vec() const { return c_; }
  Eigen::VectorXcd& vec() { return c_; }
  const cplx* data() const { return c_.data(); }

  double norm2() const { return c_.squaredNorm(); }
  double norm() const { return c_.norm(); }
  // Copy truncated or zero-padded to K.
  HardyCoeffs resized(int K) const;

 private:
  Eigen::VectorXcd c_;
};

// Coefficients on frequencies n in [-(K-1), K-1].
class FullCoeffs {
 public:
  explicit FullCoeffs(int K);
  int K() const { return K_; }
  cplx at(int n) const { return v_[n + K_ - 1]; }
  cplx& at(int n) { return v_[n + K_ - 1]; }

  // u as a symbol (nonnegative frequencies only).
  static FullCoeffs from_hardy(const HardyCoeffs& u);
  // conj(u): frequencies -n carry conj(u(n)).
  static FullCoeffs conjugate_of(const HardyCoeffs& u);

 private:
  int K_;
  std::vector<cplx> v_;
};

// psi(z) = e^{i theta} z^{m0} prod_j (z - conj(p_j)) / (1 - p_j z).
struct BlaschkeProduct {
  double theta = 0.0;
  int m0 = 0;
  std::vector<cplx> poles;  // p_j with multiplicity; zeros sit at conj(p_j)
  int degree() const { return m0 + static_cast<int>(poles.size()); }
  cplx evaluate(cplx z) const;
};

enum class ShiftDirection { kForward, kAdjoint };
enum class GridDirection { kToGrid, kFromGrid };

HardyCoeffs szego_project(const FullCoeffs& f);

HardyCoeffs apply_shift(const HardyCoeffs& h, ShiftDirection direction,
                        Warnings* warnings = nullptr);

// sum_n u(n) conj(v(n)).
cplx inner_product(const HardyCoeffs& u, const HardyCoeffs& v);

// Entry (j, k) = symbol(j - k).
Eigen::MatrixXcd toeplitz_block(const FullCoeffs& symbol, int K);

FullCoeffs hilbert_transform(const FullCoeffs& f);

// Samples at x_m = 2 pi m / M.
std::vector<cplx> to_grid(const HardyCoeffs& h, int M);
// Inverse of to_grid projected on modes 0..K-1.
HardyCoeffs from_grid(const std::vector<cplx>& samples, int K, Warnings* warnings = nullptr);

HardyCoeffs blaschke_to_coeffs(const BlaschkeProduct& psi, int K);

// Pi(|u|^2) by exact zero-padded convolution.
HardyCoeffs projected_modulus_squared(const HardyCoeffs& u);

// First K coefficients of the product of two Hardy functions.
HardyCoeffs hardy_product(const HardyCoeffs& a, const HardyCoeffs& b);

// i n u(n).
HardyCoeffs derivative(const HardyCoeffs& u);

// u(x - a): coefficient n picks up e^{-i n a}.
HardyCoeffs translate(const HardyCoeffs& u, double a);

// Horner evaluation of the truncated series inside the disc.
cplx evaluate(const HardyCoeffs& u, cplx z);

}  // namespace cslab
