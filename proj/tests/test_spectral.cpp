#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "engel/spectral.hpp"

using namespace engel::spectral;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> sample(std::size_t n, double (*f)(double)) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(static_cast<double>(k) / static_cast<double>(n));
  return v;
}

double f(double s) { return std::sin(kTwoPi * s) + 0.25 * std::cos(3 * kTwoPi * s) + 0.5; }
double fp(double s) { return kTwoPi * std::cos(kTwoPi * s) - 0.75 * kTwoPi * std::sin(3 * kTwoPi * s); }

}  // namespace

TEST(Spectral, DifferentiatesTrigonometricPolynomialsExactly) {
  const auto d = differentiate(sample(64, f));
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_NEAR(d[k], fp(k / 64.0), 1e-12);
}

TEST(Spectral, InterpolantMatchesOffGrid) {
  PeriodicInterpolant p(sample(64, f));
  for (double s : {0.013, 0.37, 0.999, 1.25, -0.3}) {
    EXPECT_NEAR(p(s), f(s), 1e-13);
    EXPECT_NEAR(p.derivative(s), fp(s), 1e-11);
  }
}

TEST(Spectral, ResampleKeepsTheInterpolant) {
  const auto coarse = sample(32, f);
  const auto fine = resample(coarse, 128);
  for (std::size_t k = 0; k < fine.size(); ++k) EXPECT_NEAR(fine[k], f(k / 128.0), 1e-13);
}

TEST(Spectral, CumulativeIntegralIsFourthOrder) {
  // F(s) = ∫ cos(2π·5 s) = sin(2π·5 s) / (2π·5)
  auto g = [](double s) { return std::cos(5 * kTwoPi * s); };
  double previous = 0.0;
  for (std::size_t n : {64u, 128u, 256u}) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = g(static_cast<double>(k) / n);
    const auto c = cumulative_integral(v);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      err = std::max(err, std::abs(c[k] - std::sin(5 * kTwoPi * k / double(n)) / (5 * kTwoPi)));
    }
    if (previous > 0.0) EXPECT_GT(previous / err, 14.0);
    previous = err;
  }
}

TEST(Spectral, PeriodIntegralIsSpectrallyAccurate) {
  EXPECT_NEAR(period_integral(sample(32, f)), 0.5, 1e-15);
}

TEST(Spectral, DriftInterpolantRecoversSlope) {
  std::vector<double> v(64);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(k / 64.0) + 2.0 * k / 64.0;
  DriftInterpolant d(v, 2.0);
  EXPECT_NEAR(d(0.3), f(0.3) + 0.6, 1e-13);
  EXPECT_NEAR(d.derivative(0.3), fp(0.3) + 2.0, 1e-11);
}
