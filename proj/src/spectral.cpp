#include "engel/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace engel::spectral {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW's planner is not reentrant; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : plan_(p) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<std::complex<double>> forward(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) throw std::invalid_argument("spectral::forward: empty input");
  auto in = fftw_buffer<double>(n);
  auto out = fftw_buffer<fftw_complex>(n / 2 + 1);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  std::copy(samples.begin(), samples.end(), in.get());
  plan->execute();
  std::vector<std::complex<double>> coeffs(n / 2 + 1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] = {out[k][0], out[k][1]};
  return coeffs;
}

std::vector<double> inverse(std::span<const std::complex<double>> coeffs, std::size_t n) {
  if (coeffs.size() != n / 2 + 1) throw std::invalid_argument("spectral::inverse: size mismatch");
  auto in = fftw_buffer<fftw_complex>(coeffs.size());
  auto out = fftw_buffer<double>(n);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(
        fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  // c2r destroys its input, so the copy happens after planning.
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    in[k][0] = coeffs[k].real();
    in[k][1] = coeffs[k].imag();
  }
  plan->execute();
  std::vector<double> result(out.get(), out.get() + n);
  for (double& v : result) v /= static_cast<double>(n);
  return result;
}

std::vector<double> differentiate(std::span<const double> samples) {
  const std::size_t n = samples.size();
  auto coeffs = forward(samples);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::complex<double>(0.0, kTwoPi * static_cast<double>(k));
  }
  if (n % 2 == 0) coeffs.back() = 0.0;
  return inverse(coeffs, n);
}

std::vector<double> resample(std::span<const double> samples, std::size_t m) {
  const std::size_t n = samples.size();
  if (m < n) throw std::invalid_argument("spectral::resample: cannot downsample");
  auto coeffs = forward(samples);
  std::vector<std::complex<double>> padded(m / 2 + 1, 0.0);
  const std::size_t keep = (n % 2 == 0) ? n / 2 : n / 2 + 1;
  for (std::size_t k = 0; k < keep; ++k) padded[k] = coeffs[k];
  // Split the Nyquist mode symmetrically so the interpolant stays real.
  if (n % 2 == 0 && m > n) padded[n / 2] = 0.5 * coeffs[n / 2];
  if (m == n) padded[n / 2] = coeffs[n / 2];
  auto result = inverse(padded, m);
  const double scale = static_cast<double>(m) / static_cast<double>(n);
  for (double& v : result) v *= scale;
  return result;
}

double period_integral(std::span<const double> samples) {
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum / static_cast<double>(samples.size());
}

std::vector<double> cumulative_integral(std::span<const double> samples) {
  const std::size_t n = samples.size();
  const double h = 1.0 / static_cast<double>(n);
  const auto fp = differentiate(samples);
  std::vector<double> result(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    result[k] = acc - h * h / 12.0 * (fp[k] - fp[0]);
    acc += 0.5 * h * (samples[k] + samples[(k + 1) % n]);
  }
  return result;
}

PeriodicInterpolant::PeriodicInterpolant(std::span<const double> samples) : n_(samples.size()) {
  coeffs_ = forward(samples);
  for (auto& c : coeffs_) c /= static_cast<double>(n_);
}

double PeriodicInterpolant::evaluate(double s, int order) const {
  if (n_ == 0) return 0.0;
  const std::size_t half = n_ / 2;
  const bool even = n_ % 2 == 0;
  double result = order == 0 ? coeffs_[0].real() : 0.0;
  const double phase = kTwoPi * (s - std::floor(s));
  const std::complex<double> step = std::polar(1.0, phase);
  std::complex<double> rot = 1.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    // Resynchronise the rotor periodically to bound accumulated drift.
    rot = (k % 64 == 0) ? std::polar(1.0, phase * static_cast<double>(k)) : rot * step;
    const bool nyquist = even && k == half;
    if (nyquist && order > 0) continue;
    std::complex<double> term = coeffs_[k] * rot;
    const double omega = kTwoPi * static_cast<double>(k);
    if (order == 1) term *= std::complex<double>(0.0, omega);
    if (order == 2) term *= -omega * omega;
    result += (nyquist ? 1.0 : 2.0) * term.real();
  }
  return result;
}

DriftInterpolant::DriftInterpolant(std::span<const double> samples, double slope) : slope_(slope) {
  const std::size_t n = samples.size();
  periodic_samples_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    periodic_samples_[k] = samples[k] - slope * static_cast<double>(k) / static_cast<double>(n);
  }
  periodic_ = PeriodicInterpolant(periodic_samples_);
}

std::vector<double> DriftInterpolant::derivative_samples() const {
  auto d = differentiate(periodic_samples_);
  for (double& v : d) v += slope_;
  return d;
}

}  // namespace engel::spectral
