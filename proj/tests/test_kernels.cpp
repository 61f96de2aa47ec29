#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "cslab/fixtures.hpp"
#include "cslab/kernels.hpp"

using cslab::kernels::cplx;
using cslab::kernels::KernelTable;

namespace {

std::vector<cplx> draw(std::mt19937_64& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(cslab::uniform01(rng) * 2 - 1, cslab::uniform01(rng) * 2 - 1);
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd_ = cslab::kernels::avx2_table();
    if (simd_ == nullptr) GTEST_SKIP() << "AVX2 not available";
  }
  const KernelTable& ref_ = cslab::kernels::scalar_table();
  const KernelTable* simd_ = nullptr;
};

}  // namespace

TEST(Kernels, ActiveTableIsUsable) {
  const KernelTable& t = cslab::kernels::active();
  EXPECT_FALSE(t.isa.empty());
  const cplx a[2] = {cplx(1, 2), cplx(3, -1)};
  EXPECT_EQ(t.cdot(a, a, 2), cplx(15.0, 0.0));
}

TEST(Kernels, ScalarReference) {
  const KernelTable& t = cslab::kernels::scalar_table();
  const cplx a[3] = {cplx(1, 1), cplx(0, 2), cplx(-1, 0)};
  cplx out[3];
  t.cmul(a, a, out, 3);
  EXPECT_EQ(out[0], cplx(0, 2));
  EXPECT_EQ(out[1], cplx(-4, 0));
  t.abs2(a, out, 3);
  EXPECT_EQ(out[0], cplx(2, 0));
  t.correlate(a, 3, out);
  // out[2] = a[2] conj(a[0])
  EXPECT_EQ(out[2], cplx(-1, 1));
}

TEST_F(KernelEquivalence, PropertyAllKernelsMatchScalar) {
  std::mt19937_64 rng(41);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto a = draw(rng, n), b = draw(rng, n);
    std::vector<cplx> r1(n), r2(n);
    ref_.cmul(a.data(), b.data(), r1.data(), n);
    simd_->cmul(a.data(), b.data(), r2.data(), n);
    EXPECT_LT(max_diff(r1, r2), 1e-15) << "cmul n=" << n;
    ref_.abs2(a.data(), r1.data(), n);
    simd_->abs2(a.data(), r2.data(), n);
    EXPECT_LT(max_diff(r1, r2), 1e-15) << "abs2 n=" << n;
    const cplx alpha(0.3, -1.7);
    std::vector<cplx> y1 = b, y2 = b;
    ref_.caxpy(alpha, a.data(), y1.data(), n);
    simd_->caxpy(alpha, a.data(), y2.data(), n);
    EXPECT_LT(max_diff(y1, y2), 1e-15) << "caxpy n=" << n;
    const cplx d1 = ref_.cdot(a.data(), b.data(), n), d2 = simd_->cdot(a.data(), b.data(), n);
    EXPECT_LT(std::abs(d1 - d2), 1e-13 * (1.0 + n)) << "cdot n=" << n;
    ref_.correlate(a.data(), n, r1.data());
    simd_->correlate(a.data(), n, r2.data());
    EXPECT_LT(max_diff(r1, r2), 1e-13 * (1.0 + n)) << "correlate n=" << n;
  }
}
