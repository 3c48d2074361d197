#pragma once

#include <array>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <json.hpp>

#include "engel/curves.hpp"

namespace engel {

/// ∮ y dx = ∫_0^1 y x' ds (trapezoid rule).
double z_closure_defect(const LegendrianGenerator& g);

/// ∮ z dx for the z integrated from y with any base value.
double w_closure_defect(const LegendrianGenerator& g);

/// Horizontal lift with z(0) = z0, w(0) = w0.  Throws ZNotClosed when
/// |∮ y dx| > tol.closure.  A nonzero w-defect is recorded, not rejected.
HorizontalLoop lift(const LegendrianGenerator& g, double z0 = 0.0, double w0 = 0.0,
                    const Tolerances& tol = {});

/// Same integration without the closure precondition; z and w carry a
/// linear drift equal to their closure defects.
HorizontalLoop lift_unchecked(const LegendrianGenerator& g, double z0 = 0.0, double w0 = 0.0);

/// ∫_{s0}^{s1} z x' ds along the loop (s0 <= s1 <= s0 + 1).
double area_integral(const LegendrianLoop& loop, double s0, double s1);
double area_integral(const HorizontalLoop& loop, double s0, double s1);

/// ∫_{s0}^{s1} f ds for a sampled periodic f, via its corrected cumulative
/// integral (s0 <= s1 <= s0 + 1).
double interval_integral(std::span<const double> integrand, double s0, double s1);

/// ∫_{s0}^{s1} z dx for sampled periodic x, z on the uniform grid.
double line_integral(std::span<const double> x, std::span<const double> z, double s0, double s1);

/// Planar periodic curve for the pair scan: position and velocity at s.
struct PlanarCurve {
  std::size_t samples;  // resolution of the underlying grid
  std::function<std::array<double, 2>(double)> position;
  std::function<std::array<double, 2>(double)> velocity;
};

/// Parameter pairs s0 < s1 where the curve crosses itself.  Coarse segment
/// intersection on a decimated polyline, then Newton on P(s0) - P(s1) = 0.
/// Pairs closer than 4/N in parameter are discarded.
std::vector<ParameterPair> pair_scan(const PlanarCurve& curve);

/// Self-crossings of the (x, y) projection.
std::vector<ParameterPair> lagrangian_crossings(const LegendrianGenerator& g);

/// Legendrian double points: (x, y) crossings with |z(s1) - z(s0)| <= tol.tangency.
std::vector<ParameterPair> self_tangencies(const LegendrianLoop& loop, const Tolerances& tol = {});

/// Transverse crossings of the (x, z) front (positions agree, slopes y differ).
std::vector<ParameterPair> front_crossings(const LegendrianLoop& loop, const Tolerances& tol = {});

struct DoublePoint {
  double s0 = 0.0;
  double s1 = 0.0;
  double dw = 0.0;
};

struct EmbeddingReport {
  std::vector<DoublePoint> double_points;
  double margin = std::numeric_limits<double>::infinity();
  bool embedded = true;
};

/// Throws NotClosed unless both closure defects are within tol.closure.
EmbeddingReport embedding_check(const HorizontalLoop& loop, const Tolerances& tol = {});

/// `{"double_points":[{"s0":..,"s1":..,"dw":..}],"margin":..,"embedded":..}`;
/// an infinite margin is written as null.
nlohmann::json to_json(const EmbeddingReport& report);

/// Support of a smooth compactly supported bump in the periodic parameter.
struct BumpSupport {
  double center = 0.0;
  double width = 0.08;
};

/// exp(1 - 1/(1 - t^2)) with t = (s - center) / (width / 2), zero for |t| >= 1.
double bump(double s, const BumpSupport& support);
double bump_derivative(double s, const BumpSupport& support);
std::vector<double> bump_samples(std::size_t n, const BumpSupport& support);

/// Width-0.08 supports centred in the two widest arcs where |x'| >= max|x'|/2.
std::array<BumpSupport, 2> default_bump_supports(const LegendrianGenerator& g);

struct BalanceResult {
  LegendrianGenerator generator;
  double a = 0.0;
  double b = 0.0;
  double condition = 1.0;
  std::array<BumpSupport, 2> supports;
  std::array<double, 2> residual{};  // (∮ y dx, ∮ z dx) after balancing
};

/// Replaces y by y + a φ1 + b φ2 so that ∮ y dx = ∮ z dx = 0.  Throws
/// SingularSystem when cond > 1e8 and ImmersionLost when the corrected loop
/// is no longer immersed or its winding changed.
BalanceResult balance_closure_detailed(const LegendrianGenerator& g,
                                       const std::array<BumpSupport, 2>& supports);
BalanceResult balance_closure_detailed(const LegendrianGenerator& g);

LegendrianGenerator balance_closure(const LegendrianGenerator& g);
LegendrianGenerator balance_closure(const LegendrianGenerator& g,
                                    const std::array<BumpSupport, 2>& supports);

/// (∮ y dx, ∮ z dx) for x' and y samples on the same grid.
std::array<double, 2> closure_defects(std::span<const double> x_prime, std::span<const double> y);

/// Samples reversed in orientation: s -> 1 - s.
LegendrianGenerator reversed(const LegendrianGenerator& g);

}  // namespace engel
