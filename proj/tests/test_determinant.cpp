#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sos/determinant.hpp"

namespace sos {
namespace {

TEST(Determinant, MatchesLeibnizExpansion) {
  std::uint64_t state = 12345;
  auto next = [&] {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
  };
  for (std::size_t n = 1; n <= 6; ++n) {
    CMatrix m(n);
    for (auto& x : m.data()) x = Complex(next(), next());
    const Complex expected = oracle::leibniz_det(m);
    const DeterminantResult r = determinant(m);
    EXPECT_LT(std::abs(r.det.value() - expected), 1e-13 * std::max(1.0, std::abs(expected)));
    EXPECT_GT(r.min_pivot, 0.0);
  }
}

TEST(Determinant, PivotingHandlesZeroDiagonal) {
  const CMatrix m(2, {0.0, 2.0, 3.0, 0.0});
  EXPECT_LT(std::abs(determinant(m).det.value() - Complex(-6.0)), 1e-15);
}

TEST(Determinant, SingularGivesZero) {
  const CMatrix m(2, {1.0, 2.0, 2.0, 4.0});
  const DeterminantResult r = determinant(m);
  EXPECT_LT(std::abs(r.det.value()), 1e-15);
  EXPECT_LT(r.min_pivot, 1e-15);
}

TEST(ScaledComplex, SurvivesOverflowingProducts) {
  ScaledComplex z(1.0);
  for (int k = 0; k < 1000; ++k) z *= ScaledComplex(Complex(1e10, 1e10));
  EXPECT_TRUE(std::isinf(z.value().real()) || std::isinf(std::abs(z.value())));
  EXPECT_NEAR(z.log_abs(), 1000 * std::log(std::abs(Complex(1e10, 1e10))), 1e-6);
  for (int k = 0; k < 1000; ++k) z /= ScaledComplex(Complex(1e10, 1e10));
  EXPECT_LT(std::abs(z.value() - Complex(1.0)), 1e-12);
}

}  // namespace
}  // namespace sos
