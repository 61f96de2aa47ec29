#include "cslab/hardy.hpp"

#include <cmath>
#include <string>

#include "cslab/fft.hpp"
#include "cslab/kernels.hpp"

namespace cslab {

const char* to_string(Sign s) { return s == Sign::kFocusing ? "focusing" : "defocusing"; }

Sign parse_sign(const std::string& s) {
  if (s == "focusing" || s == "+") return Sign::kFocusing;
  if (s == "defocusing" || s == "-") return Sign::kDefocusing;
  throw Error(ErrorCode::kInvalidParameter, "unknown sign '" + s + "'");
}

HardyCoeffs::HardyCoeffs(Eigen::VectorXcd coeffs) : c_(std::move(coeffs)) {
  if (c_.size() == 0) throw Error(ErrorCode::kInvalidParameter, "K must be positive");
  if (!c_.allFinite()) throw Error(ErrorCode::kInvalidParameter, "non-finite coefficient");
}

HardyCoeffs::HardyCoeffs(const std::vector<cplx>& coeffs)
    : HardyCoeffs(Eigen::Map<const Eigen::VectorXcd>(coeffs.data(),
                                                      static_cast<Eigen::Index>(coeffs.size()))) {}

HardyCoeffs HardyCoeffs::zeros(int K) { return HardyCoeffs(Eigen::VectorXcd::Zero(K)); }

HardyCoeffs HardyCoeffs::mode(int K, int n, cplx amplitude) {
  HardyCoeffs h = zeros(K);
  if (n >= 0 && n < K) h[n] = amplitude;
  return h;
}

HardyCoeffs HardyCoeffs::resized(int K) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(K);
  const int n = std::min(K, this->K());
  v.head(n) = c_.head(n);
  return HardyCoeffs(std::move(v));
}

FullCoeffs::FullCoeffs(int K) : K_(K), v_(static_cast<std::size_t>(2 * K - 1), cplx(0.0)) {
  if (K <= 0) throw Error(ErrorCode::kInvalidParameter, "K must be positive");
}

FullCoeffs FullCoeffs::from_hardy(const HardyCoeffs& u) {
  FullCoeffs f(u.K());
  for (int n = 0; n < u.K(); ++n) f.at(n) = u[n];
  return f;
}

FullCoeffs FullCoeffs::conjugate_of(const HardyCoeffs& u) {
  FullCoeffs f(u.K());
  for (int n = 0; n < u.K(); ++n) f.at(-n) = std::conj(u[n]);
  return f;
}

cplx BlaschkeProduct::evaluate(cplx z) const {
  cplx v = std::polar(1.0, theta) * std::pow(z, m0);
  for (const cplx& p : poles) v *= (z - std::conj(p)) / (1.0 - p * z);
  return v;
}

HardyCoeffs szego_project(const FullCoeffs& f) {
  HardyCoeffs h = HardyCoeffs::zeros(f.K());
  for (int n = 0; n < f.K(); ++n) h[n] = f.at(n);
  return h;
}

HardyCoeffs apply_shift(const HardyCoeffs& h, ShiftDirection direction, Warnings* warnings) {
  const int K = h.K();
  HardyCoeffs out = HardyCoeffs::zeros(K);
  if (direction == ShiftDirection::kForward) {
    for (int n = 1; n < K; ++n) out[n] = h[n - 1];
    const double dropped = std::abs(h[K - 1]);
    if (dropped > 1e-10) {
      warn(warnings, WarningCode::kTruncationOverflow, "forward shift dropped top coefficient",
           dropped);
    }
  } else {
    for (int n = 0; n + 1 < K; ++n) out[n] = h[n + 1];
  }
  return out;
}

cplx inner_product(const HardyCoeffs& u, const HardyCoeffs& v) {
  if (u.K() != v.K()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "K=" + std::to_string(u.K()) + " vs K=" + std::to_string(v.K()));
  }
  return kernels::active().cdot(u.data(), v.data(), static_cast<std::size_t>(u.K()));
}

Eigen::MatrixXcd toeplitz_block(const FullCoeffs& symbol, int K) {
  if (K > symbol.K()) {
    throw Error(ErrorCode::kDimensionMismatch, "symbol narrower than requested block");
  }
  Eigen::MatrixXcd T(K, K);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j) T(j, k) = symbol.at(j - k);
  return T;
}

FullCoeffs hilbert_transform(const FullCoeffs& f) {
  FullCoeffs g(f.K());
  const cplx mi(0.0, -1.0);
  for (int n = 1; n < f.K(); ++n) {
    g.at(n) = mi * f.at(n);
    g.at(-n) = -mi * f.at(-n);
  }
  return g;
}

std::vector<cplx> to_grid(const HardyCoeffs& h, int M) {
  if (M < h.K()) throw Error(ErrorCode::kInvalidParameter, "grid smaller than K aliases");
  std::vector<cplx> g(static_cast<std::size_t>(M), cplx(0.0));
  for (int n = 0; n < h.K(); ++n) g[n] = h[n];
  fft::backward(g.data(), g.size());
  return g;
}

HardyCoeffs from_grid(const std::vector<cplx>& samples, int K, Warnings* warnings) {
  const int M = static_cast<int>(samples.size());
  if (M < K) throw Error(ErrorCode::kInvalidParameter, "grid smaller than K");
  std::vector<cplx> c = samples;
  fft::forward(c.data(), c.size());
  double kept = 0.0, dropped = 0.0;
  HardyCoeffs h = HardyCoeffs::zeros(K);
  for (int n = 0; n < M; ++n) {
    c[n] /= static_cast<double>(M);
    if (n < K) {
      h[n] = c[n];
      kept += std::norm(c[n]);
    } else {
      dropped += std::norm(c[n]);
    }
  }
  const double total = kept + dropped;
  if (total > 0.0 && dropped > 1e-8 * total) {
    warn(warnings, WarningCode::kAliasWarning, "energy outside Hardy modes 0..K-1",
         dropped / total);
  }
  return h;
}

HardyCoeffs blaschke_to_coeffs(const BlaschkeProduct& psi, int K) {
  for (const cplx& p : psi.poles) {
    if (std::abs(p) >= 1.0) throw Error(ErrorCode::kPoleOnCircle, "|p| >= 1", std::abs(p));
  }
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(K);
  if (psi.m0 < K) acc[psi.m0] = std::polar(1.0, psi.theta);
  Eigen::VectorXcd factor(K);
  Eigen::VectorXcd next(K);
  for (const cplx& p : psi.poles) {
    // (z - conj p) / (1 - p z) = -conj p + sum_{n>=1} p^{n-1} (1 - |p|^2) z^n
    factor[0] = -std::conj(p);
    cplx pw = 1.0;
    for (int n = 1; n < K; ++n) {
      factor[n] = pw * (1.0 - std::norm(p));
      pw *= p;
    }
    for (int n = 0; n < K; ++n) {
      cplx s = 0.0;
      for (int m = 0; m <= n; ++m) s += factor[m] * acc[n - m];
      next[n] = s;
    }
    acc.swap(next);
  }
  return HardyCoeffs(std::move(acc));
}

namespace {

std::vector<cplx> padded_grid(const HardyCoeffs& u, std::size_t P) {
  std::vector<cplx> g(P, cplx(0.0));
  for (int n = 0; n < u.K(); ++n) g[n] = u[n];
  fft::backward(g.data(), P);
  return g;
}

HardyCoeffs head_from_grid(std::vector<cplx>& g, int K) {
  const std::size_t P = g.size();
  fft::forward(g.data(), P);
  HardyCoeffs h = HardyCoeffs::zeros(K);
  const double inv = 1.0 / static_cast<double>(P);
  for (int n = 0; n < K; ++n) h[n] = g[n] * inv;
  return h;
}

}  // namespace

HardyCoeffs projected_modulus_squared(const HardyCoeffs& u) {
  const int K = u.K();
  const auto& kt = kernels::active();
  if (K < 64) {
    HardyCoeffs w = HardyCoeffs::zeros(K);
    kt.correlate(u.data(), static_cast<std::size_t>(K), w.vec().data());
    return w;
  }
  const std::size_t P = fft::next_pow2(2 * static_cast<std::size_t>(K));
  std::vector<cplx> g = padded_grid(u, P);
  kt.abs2(g.data(), g.data(), P);
  return head_from_grid(g, K);
}

HardyCoeffs hardy_product(const HardyCoeffs& a, const HardyCoeffs& b) {
  if (a.K() != b.K()) throw Error(ErrorCode::kDimensionMismatch, "hardy_product");
  const int K = a.K();
  const std::size_t P = fft::next_pow2(2 * static_cast<std::size_t>(K));
  std::vector<cplx> ga = padded_grid(a, P);
  std::vector<cplx> gb = padded_grid(b, P);
  kernels::active().cmul(ga.data(), gb.data(), ga.data(), P);
  return head_from_grid(ga, K);
}

HardyCoeffs derivative(const HardyCoeffs& u) {
  HardyCoeffs d = u;
  for (int n = 0; n < u.K(); ++n) d[n] = cplx(0.0, n) * u[n];
  return d;
}

HardyCoeffs translate(const HardyCoeffs& u, double a) {
  HardyCoeffs v = u;
  for (int n = 0; n < u.K(); ++n) v[n] = u[n] * std::polar(1.0, -n * a);
  return v;
}

cplx evaluate(const HardyCoeffs& u, cplx z) {
  cplx s = 0.0;
  for (int n = u.K() - 1; n >= 0; --n) s = s * z + u[n];
  return s;
}

}  // namespace cslab
