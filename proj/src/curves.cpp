#include "engel/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "engel/error.hpp"
#include "engel/format.hpp"

namespace engel {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxHarmonic = 64;

void check_grid(std::size_t n) {
  if (n < 16 || !spectral::is_power_of_two(n)) {
    throw Error(ErrorCode::BadDescription,
                "sample count " + std::to_string(n) + " is not a power of two >= 16");
  }
}

}  // namespace

double evaluate(const Series& series, double s) {
  double v = 0.0;
  for (const auto& t : series) {
    switch (t.kind) {
      case SeriesTerm::Kind::Constant: v += t.coeff; break;
      case SeriesTerm::Kind::Cos: v += t.coeff * std::cos(kTwoPi * t.harmonic * s); break;
      case SeriesTerm::Kind::Sin: v += t.coeff * std::sin(kTwoPi * t.harmonic * s); break;
    }
  }
  return v;
}

LegendrianGenerator::LegendrianGenerator(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) {
    throw Error(ErrorCode::BadDescription, "x and y sample counts differ");
  }
  check_grid(x_.size());
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (!std::isfinite(x_[k]) || !std::isfinite(y_[k])) {
      throw Error(ErrorCode::BadDescription, "non-finite sample at index " + std::to_string(k));
    }
  }
  xp_ = spectral::differentiate(x_);
  yp_ = spectral::differentiate(y_);
  x_interp_ = spectral::PeriodicInterpolant(x_);
  y_interp_ = spectral::PeriodicInterpolant(y_);

  const double vmax = max_speed();
  std::size_t worst = 0;
  double vmin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < size(); ++k) {
    const double v = std::hypot(xp_[k], yp_[k]);
    if (v < vmin) {
      vmin = v;
      worst = k;
    }
  }
  if (vmax == 0.0 || vmin <= 1e-8 * vmax) {
    throw Error(ErrorCode::NotImmersed, "velocity vanishes at s = " + format_double(parameter(worst)));
  }
}

double LegendrianGenerator::min_speed() const {
  double v = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < size(); ++k) v = std::min(v, std::hypot(xp_[k], yp_[k]));
  return v;
}

double LegendrianGenerator::max_speed() const {
  double v = 0.0;
  for (std::size_t k = 0; k < size(); ++k) v = std::max(v, std::hypot(xp_[k], yp_[k]));
  return v;
}

LegendrianGenerator LegendrianGenerator::with_y(std::vector<double> y) const {
  return LegendrianGenerator(x_, std::move(y));
}

LegendrianLoop::LegendrianLoop(LegendrianGenerator generator, double z0)
    : generator_(std::move(generator)), z0_(z0) {
  const auto xp = generator_.x_prime();
  const auto y = generator_.y();
  std::vector<double> integrand(size());
  for (std::size_t k = 0; k < size(); ++k) integrand[k] = y[k] * xp[k];
  defect_ = spectral::period_integral(integrand);
  z_ = spectral::cumulative_integral(integrand);
  for (double& v : z_) v += z0_;
  z_interp_ = spectral::DriftInterpolant(z_, defect_);
}

HorizontalLoop::HorizontalLoop(LegendrianLoop legendrian, double w0)
    : legendrian_(std::move(legendrian)), w0_(w0) {
  const auto& g = legendrian_.generator();
  const auto xp = g.x_prime();
  const auto x = g.x();
  const auto z = legendrian_.z();
  const std::size_t n = size();
  // z = z_per + d s with z_per periodic, so
  // ∫_0^s z x' = ∫_0^s z_per x' + d (s x(s) - ∫_0^s x).
  const double d = legendrian_.closure_defect_z();
  std::vector<double> integrand(n);
  for (std::size_t k = 0; k < n; ++k) integrand[k] = (z[k] - d * g.parameter(k)) * xp[k];
  const auto periodic_part = spectral::cumulative_integral(integrand);
  const auto x_integral = spectral::cumulative_integral(x);
  defect_ = spectral::period_integral(integrand) + d * (x[0] - spectral::period_integral(x));
  w_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    w_[k] = w0_ + periodic_part[k] + d * (g.parameter(k) * x[k] - x_integral[k]);
  }
  w_interp_ = spectral::DriftInterpolant(w_, defect_);
}

HorizontalLoop::HorizontalLoop(LegendrianLoop legendrian, double w0, std::vector<double> w,
                               double defect)
    : legendrian_(std::move(legendrian)), w_(std::move(w)), w0_(w0), defect_(defect) {
  w_interp_ = spectral::DriftInterpolant(w_, defect_);
}

HorizontalLoop HorizontalLoop::with_w(std::vector<double> w) const {
  if (w.size() != size()) throw Error(ErrorCode::BadDescription, "w sample count mismatch");
  const double w0 = w.front();
  return HorizontalLoop(legendrian_, w0, std::move(w), defect_);
}

LegendrianGenerator sample_generator(const SeriesDescription& description, std::size_t n) {
  check_grid(n);
  const int limit = std::min<int>(kMaxHarmonic, static_cast<int>(n / 2) - 1);
  for (const Series* series : {&description.x, &description.y}) {
    for (const auto& t : *series) {
      if (!std::isfinite(t.coeff)) throw Error(ErrorCode::BadDescription, "non-finite coefficient");
      if (t.kind != SeriesTerm::Kind::Constant && (t.harmonic < 1 || t.harmonic > limit)) {
        throw Error(ErrorCode::BadDescription,
                    "harmonic " + std::to_string(t.harmonic) + " outside [1, " +
                        std::to_string(limit) + "]");
      }
    }
  }
  std::vector<double> x(n), y(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(n);
    x[k] = evaluate(description.x, s);
    y[k] = evaluate(description.y, s);
  }
  return LegendrianGenerator(std::move(x), std::move(y));
}

LegendrianGenerator sample_generator(std::span<const std::pair<double, double>> points) {
  std::vector<double> x, y;
  x.reserve(points.size());
  y.reserve(points.size());
  for (const auto& [px, py] : points) {
    x.push_back(px);
    y.push_back(py);
  }
  return LegendrianGenerator(std::move(x), std::move(y));
}

std::vector<double> x_prime_roots(const LegendrianGenerator& g, double tol_root) {
  const auto xp = g.x_prime();
  const std::size_t n = g.size();
  std::vector<double> roots;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = xp[k];
    const double b = xp[(k + 1) % n];
    if (a == 0.0) {
      if (xp[(k + n - 1) % n] * b < 0.0) roots.push_back(g.parameter(k));
      continue;
    }
    if (a * b >= 0.0) continue;
    double lo = g.parameter(k);
    double hi = lo + 1.0 / static_cast<double>(n);
    double flo = g.x_prime_at(lo);
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      mid = 0.5 * (lo + hi);
      const double fm = g.x_prime_at(mid);
      if (std::abs(fm) <= tol_root || hi - lo < 1e-15) break;
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(mid - std::floor(mid));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Residual horizontality_residual(const HorizontalLoop& loop) {
  const auto& g = loop.generator();
  const auto xp = g.x_prime();
  const auto y = g.y();
  const auto z = loop.legendrian().z();
  const auto zp = loop.legendrian().z_prime();
  const auto wp = loop.w_prime();
  Residual r;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    r.z = std::max(r.z, std::abs(zp[k] - y[k] * xp[k]));
    r.w = std::max(r.w, std::abs(wp[k] - z[k] * xp[k]));
  }
  return r;
}

Residual horizontality_residual(std::span<const double> x, std::span<const double> y,
                                std::span<const double> z, std::span<const double> w) {
  const auto xp = spectral::differentiate(x);
  const auto zp = spectral::differentiate(z);
  const auto wp = spectral::differentiate(w);
  Residual r;
  for (std::size_t k = 0; k < x.size(); ++k) {
    r.z = std::max(r.z, std::abs(zp[k] - y[k] * xp[k]));
    r.w = std::max(r.w, std::abs(wp[k] - z[k] * xp[k]));
  }
  return r;
}

namespace {

void write_rows(std::ostream& out, const LegendrianLoop& loop, const HorizontalLoop* full) {
  const auto& g = loop.generator();
  out << "s,x,y,z,w\n";
  for (std::size_t k = 0; k < loop.size(); ++k) {
    out << format_double(g.parameter(k)) << ',' << format_double(g.x()[k]) << ','
        << format_double(g.y()[k]) << ',' << format_double(loop.z()[k]) << ',';
    if (full) out << format_double(full->w()[k]);
    out << '\n';
  }
}

}  // namespace

void write_csv(std::ostream& out, const LegendrianLoop& loop) { write_rows(out, loop, nullptr); }

void write_csv(std::ostream& out, const HorizontalLoop& loop) {
  write_rows(out, loop.legendrian(), &loop);
}

}  // namespace engel
