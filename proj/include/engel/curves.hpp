#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "engel/spectral.hpp"

// Loops in standard contact R^3, xi = ker(dz - y dx), and in standard Engel
// R^4, D = ker(dz - y dx) ∩ ker(dw - z dx).  The free data of every loop is
// the planar pair (x(s), y(s)), s in [0, 1); z and w are always integrated.

namespace engel {

/// Frame of D: e1 = ∂x + y∂z + z∂w, e2 = ∂y; frame of xi: ∂x + y∂z, ∂y.
/// A horizontal velocity (x', y', y x', z x') equals x' e1 + y' e2.
struct StandardStructures {
  struct Vector4 {
    double x, y, z, w;
  };
  static Vector4 e1(double y, double z) { return {1.0, 0.0, y, z}; }
  static Vector4 e2() { return {0.0, 1.0, 0.0, 0.0}; }
  /// Frame coordinates (a, b) of a velocity v with v = a e1 + b e2 + rest;
  /// `rest` is zero exactly when v is horizontal at (y, z).
  static std::pair<double, double> frame_coordinates(const Vector4& v) { return {v.x, v.y}; }
};

struct Tolerances {
  double closure = 1e-9;
  double root = 1e-10;
  double y_prime_floor = 1e-6;
  double embed = 1e-7;
  /// |Δz| below which an (x, y) self-crossing is a Legendrian double point.
  double tangency = 1e-7;
};

/// One term of a real trigonometric series: coeff, coeff*cos(2πks) or coeff*sin(2πks).
struct SeriesTerm {
  enum class Kind { Constant, Cos, Sin };
  Kind kind = Kind::Constant;
  double coeff = 0.0;
  int harmonic = 0;

  friend bool operator==(const SeriesTerm&, const SeriesTerm&) = default;
};

using Series = std::vector<SeriesTerm>;

double evaluate(const Series& series, double s);

struct SeriesDescription {
  Series x;
  Series y;

  friend bool operator==(const SeriesDescription&, const SeriesDescription&) = default;
};

/// Periodic planar loop (x(s), y(s)) sampled at s_k = k/N.
class LegendrianGenerator {
 public:
  /// Throws NotImmersed when the velocity vanishes, BadDescription when the
  /// sample count is not a power of two >= 16 or the arrays disagree.
  LegendrianGenerator(std::vector<double> x, std::vector<double> y);

  std::size_t size() const { return x_.size(); }
  double parameter(std::size_t k) const { return static_cast<double>(k) / static_cast<double>(size()); }

  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }
  std::span<const double> x_prime() const { return xp_; }
  std::span<const double> y_prime() const { return yp_; }

  double x_at(double s) const { return x_interp_(s); }
  double y_at(double s) const { return y_interp_(s); }
  double x_prime_at(double s) const { return x_interp_.derivative(s); }
  double y_prime_at(double s) const { return y_interp_.derivative(s); }
  double x_second_at(double s) const { return x_interp_.second_derivative(s); }

  /// min over the grid of sqrt(x'^2 + y'^2).
  double min_speed() const;
  double max_speed() const;

  /// Same x with a new y.
  LegendrianGenerator with_y(std::vector<double> y) const;

  friend bool operator==(const LegendrianGenerator& a, const LegendrianGenerator& b) {
    return a.x_ == b.x_ && a.y_ == b.y_;
  }

 private:
  std::vector<double> x_, y_, xp_, yp_;
  spectral::PeriodicInterpolant x_interp_, y_interp_;
};

/// (x, y, z) loop in (R^3, xi) with z(s) = z0 + ∫_0^s y x'.
class LegendrianLoop {
 public:
  LegendrianLoop(LegendrianGenerator generator, double z0);

  const LegendrianGenerator& generator() const { return generator_; }
  std::size_t size() const { return generator_.size(); }
  std::span<const double> z() const { return z_; }
  double z0() const { return z0_; }
  double closure_defect_z() const { return defect_; }
  bool closed(double tol) const { return std::abs(defect_) <= tol; }

  double z_at(double s) const { return z_interp_(s); }
  double z_prime_at(double s) const { return z_interp_.derivative(s); }
  std::vector<double> z_prime() const { return z_interp_.derivative_samples(); }

 private:
  LegendrianGenerator generator_;
  std::vector<double> z_;
  double z0_;
  double defect_;
  spectral::DriftInterpolant z_interp_;
};

/// (x, y, z, w) loop tangent to D with w(s) = w0 + ∫_0^s z x'.
class HorizontalLoop {
 public:
  HorizontalLoop(LegendrianLoop legendrian, double w0);

  const LegendrianLoop& legendrian() const { return legendrian_; }
  const LegendrianGenerator& generator() const { return legendrian_.generator(); }
  std::size_t size() const { return legendrian_.size(); }
  std::span<const double> w() const { return w_; }
  double w0() const { return w0_; }
  double closure_defect_w() const { return defect_; }
  bool closed(double tol) const {
    return legendrian_.closed(tol) && std::abs(defect_) <= tol;
  }

  double w_at(double s) const { return w_interp_(s); }
  double w_prime_at(double s) const { return w_interp_.derivative(s); }
  std::vector<double> w_prime() const { return w_interp_.derivative_samples(); }

  /// Same loop with w replaced by caller-provided samples (used to probe the
  /// residual measurement; the result is generally not horizontal).
  HorizontalLoop with_w(std::vector<double> w) const;

 private:
  HorizontalLoop(LegendrianLoop legendrian, double w0, std::vector<double> w, double defect);

  LegendrianLoop legendrian_;
  std::vector<double> w_;
  double w0_;
  double defect_;
  spectral::DriftInterpolant w_interp_;
};

enum class CuspOrientation { Up, Down };

struct Cusp {
  double s = 0.0;
  double x = 0.0;
  double z = 0.0;
  CuspOrientation orientation = CuspOrientation::Up;
};

struct ParameterPair {
  double s0 = 0.0;
  double s1 = 0.0;
};

struct FrontPoint {
  double s, x, z;
};

/// (x, z) projection of a Legendrian loop.
struct FrontDiagram {
  std::vector<FrontPoint> points;
  std::vector<Cusp> cusps;
  std::vector<ParameterPair> double_points;    // transverse front crossings
  std::vector<ParameterPair> self_tangencies;  // Legendrian double points
};

/// Exact samples of a trigonometric series description.  N must be a power
/// of two >= 16 and every harmonic must lie in [1, min(64, N/2 - 1)].
LegendrianGenerator sample_generator(const SeriesDescription& description, std::size_t n);

/// Point-list variant: the samples are taken as given.
LegendrianGenerator sample_generator(std::span<const std::pair<double, double>> points);

/// Projection to the (x, z) plane with cusps at the sign changes of x'.
/// Throws NotClosed when the z-defect exceeds tol.closure and DegenerateCusp
/// when |y'| < tol.y_prime_floor at a root of x'.
FrontDiagram front_of(const LegendrianLoop& loop, const Tolerances& tol = {});

/// Parameters of the sign changes of x', refined by bisection.
std::vector<double> x_prime_roots(const LegendrianGenerator& g, double tol_root = 1e-10);

struct Residual {
  double z = 0.0;
  double w = 0.0;
};

/// max_k |z'(s_k) - y x'| and max_k |w'(s_k) - z x'| with spectral derivatives.
Residual horizontality_residual(const HorizontalLoop& loop);

/// Same measurement on raw periodic samples of (x, y, z, w).
Residual horizontality_residual(std::span<const double> x, std::span<const double> y,
                                std::span<const double> z, std::span<const double> w);

/// `s,x,y,z,w` CSV with a header row; w left blank when absent.
void write_csv(std::ostream& out, const LegendrianLoop& loop);
void write_csv(std::ostream& out, const HorizontalLoop& loop);

}  // namespace engel
