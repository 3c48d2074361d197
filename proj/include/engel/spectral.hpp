#pragma once

#include <complex>
#include <span>
#include <vector>

// Trigonometric interpolation, differentiation and quadrature for samples
// f_k = f(k/N), k = 0..N-1, of a 1-periodic function.

namespace engel::spectral {

/// Real-to-half-complex transform of the samples (unnormalised, k = 0..N/2).
std::vector<std::complex<double>> forward(std::span<const double> samples);

/// Inverse of forward(); `n` is the number of real samples to produce.
std::vector<double> inverse(std::span<const std::complex<double>> coeffs, std::size_t n);

/// Derivative samples of the trigonometric interpolant (Nyquist mode dropped).
std::vector<double> differentiate(std::span<const double> samples);

/// Samples of the interpolant on a uniform grid of m >= n points.
std::vector<double> resample(std::span<const double> samples, std::size_t m);

/// Trapezoid rule for the integral over one period.
double period_integral(std::span<const double> samples);

/// F_k = integral of f from 0 to s_k by the trapezoid rule with the
/// Euler-Maclaurin endpoint correction -h^2/12 (f'(s_k) - f'(0)).
/// F has N entries; the full-period value is period_integral(f).
std::vector<double> cumulative_integral(std::span<const double> samples);

/// Evaluates the trigonometric interpolant (and its derivatives) anywhere.
class PeriodicInterpolant {
 public:
  PeriodicInterpolant() = default;
  explicit PeriodicInterpolant(std::span<const double> samples);

  std::size_t size() const { return n_; }

  double operator()(double s) const { return evaluate(s, 0); }
  double derivative(double s) const { return evaluate(s, 1); }
  double second_derivative(double s) const { return evaluate(s, 2); }

  /// order-th derivative of the interpolant at s (order 0..2).
  double evaluate(double s, int order) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::complex<double>> coeffs_;  // normalised, k = 0..N/2
};

/// A sampled function of the form periodic(s) + slope * s, as produced by
/// integrating a periodic integrand with nonzero mean.
class DriftInterpolant {
 public:
  DriftInterpolant() = default;
  DriftInterpolant(std::span<const double> samples, double slope);

  double slope() const { return slope_; }
  double operator()(double s) const { return periodic_(s) + slope_ * s; }
  double derivative(double s) const { return periodic_.derivative(s) + slope_; }

  /// Derivative samples on the construction grid.
  std::vector<double> derivative_samples() const;

 private:
  PeriodicInterpolant periodic_;
  std::vector<double> periodic_samples_;
  double slope_ = 0.0;
};

bool is_power_of_two(std::size_t n);

}  // namespace engel::spectral
