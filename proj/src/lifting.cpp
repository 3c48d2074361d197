#include "engel/lifting.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>

#include "engel/error.hpp"
#include "engel/format.hpp"
#include "engel/invariants.hpp"

namespace engel {
namespace {

double wrap(double s) { return s - std::floor(s); }

double circular_distance(double a, double b) {
  const double d = std::abs(wrap(a) - wrap(b));
  return std::min(d, 1.0 - d);
}

std::vector<double> product(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

std::array<double, 2> segment_intersection(const std::array<double, 2>& p,
                                           const std::array<double, 2>& p2,
                                           const std::array<double, 2>& q,
                                           const std::array<double, 2>& q2, bool& hit) {
  const double rx = p2[0] - p[0], ry = p2[1] - p[1];
  const double tx = q2[0] - q[0], ty = q2[1] - q[1];
  const double den = rx * ty - ry * tx;
  hit = false;
  if (den == 0.0) return {0.0, 0.0};
  const double qx = q[0] - p[0], qy = q[1] - p[1];
  const double u = (qx * ty - qy * tx) / den;
  const double v = (qx * ry - qy * rx) / den;
  constexpr double eps = 1e-9;
  hit = u >= -eps && u <= 1.0 + eps && v >= -eps && v <= 1.0 + eps;
  return {u, v};
}

// z(s1) - z(s0) = ∫_{s0}^{s1} y x'.
double area_between_z(const LegendrianLoop& loop, const ParameterPair& p) {
  const auto& g = loop.generator();
  return interval_integral(product(g.y(), g.x_prime()), p.s0, p.s1);
}

}  // namespace

double interval_integral(std::span<const double> integrand, double s0, double s1) {
  const double total = spectral::period_integral(integrand);
  if (s1 == s0) return 0.0;
  if (s1 - s0 == 1.0) return total;
  const auto cumulative = spectral::cumulative_integral(integrand);
  const spectral::DriftInterpolant antiderivative(cumulative, total);
  // Shift to [0, 1) while keeping the integral's orientation.
  const double shift = std::floor(s0);
  const double a = s0 - shift;
  const double b = s1 - shift;
  const double whole = std::floor(b);
  return antiderivative(b - whole) + whole * total - antiderivative(a);
}

std::array<double, 2> closure_defects(std::span<const double> x_prime, std::span<const double> y) {
  const auto integrand = product(y, x_prime);
  const double dz = spectral::period_integral(integrand);
  const auto z = spectral::cumulative_integral(integrand);
  const double dw = spectral::period_integral(product(z, x_prime));
  return {dz, dw};
}

double z_closure_defect(const LegendrianGenerator& g) {
  return spectral::period_integral(product(g.y(), g.x_prime()));
}

double w_closure_defect(const LegendrianGenerator& g) {
  return closure_defects(g.x_prime(), g.y())[1];
}

HorizontalLoop lift_unchecked(const LegendrianGenerator& g, double z0, double w0) {
  return HorizontalLoop(LegendrianLoop(g, z0), w0);
}

HorizontalLoop lift(const LegendrianGenerator& g, double z0, double w0, const Tolerances& tol) {
  const double defect = z_closure_defect(g);
  if (std::abs(defect) > tol.closure) {
    throw Error(ErrorCode::ZNotClosed, "∮ y dx = " + format_double(defect));
  }
  return lift_unchecked(g, z0, w0);
}

double line_integral(std::span<const double> x, std::span<const double> z, double s0, double s1) {
  const auto xp = spectral::differentiate(x);
  return interval_integral(product(z, xp), s0, s1);
}

double area_integral(const LegendrianLoop& loop, double s0, double s1) {
  return interval_integral(product(loop.z(), loop.generator().x_prime()), s0, s1);
}

double area_integral(const HorizontalLoop& loop, double s0, double s1) {
  return area_integral(loop.legendrian(), s0, s1);
}

std::vector<ParameterPair> pair_scan(const PlanarCurve& curve) {
  const std::size_t n = curve.samples;
  const std::size_t m = std::min(n, std::max<std::size_t>(n / 8, 256));
  std::vector<std::array<double, 2>> poly(m);
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    poly[i] = curve.position(static_cast<double>(i) / static_cast<double>(m));
    scale = std::max({scale, std::abs(poly[i][0]), std::abs(poly[i][1])});
  }
  const double min_separation = 4.0 / static_cast<double>(n);
  const double step = 1.0 / static_cast<double>(m);

  auto residual = [&](double a, double b) {
    const auto pa = curve.position(a);
    const auto pb = curve.position(b);
    return std::hypot(pa[0] - pb[0], pa[1] - pb[1]);
  };

  std::vector<ParameterPair> found;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      bool hit = false;
      const auto uv = segment_intersection(poly[i], poly[(i + 1) % m], poly[j], poly[(j + 1) % m], hit);
      if (!hit) continue;
      double s0 = (static_cast<double>(i) + uv[0]) * step;
      double s1 = (static_cast<double>(j) + uv[1]) * step;
      double best0 = s0, best1 = s1, best_r = residual(s0, s1);
      for (int it = 0; it < 40 && best_r > 1e-14 * (1.0 + scale); ++it) {
        const auto p0 = curve.position(s0), p1 = curve.position(s1);
        const auto v0 = curve.velocity(s0), v1 = curve.velocity(s1);
        const double fx = p0[0] - p1[0], fy = p0[1] - p1[1];
        const double det = -v0[0] * v1[1] + v1[0] * v0[1];
        if (std::abs(det) < 1e-300) break;
        // Solve [v0, -v1] (d0, d1)^T = -(fx, fy).
        const double d0 = (-fx * -v1[1] - -v1[0] * -fy) / det;
        const double d1 = (v0[0] * -fy - v0[1] * -fx) / det;
        s0 += d0;
        s1 += d1;
        if (std::abs(s0 - best0) > 2.0 * step || std::abs(s1 - best1) > 2.0 * step) break;
        const double r = residual(s0, s1);
        if (r < best_r) {
          best_r = r;
          best0 = s0;
          best1 = s1;
        }
      }
      if (best_r > 1e-7 * (1.0 + scale)) continue;
      double a = wrap(best0), b = wrap(best1);
      if (1.0 - a < 1e-9) a = 0.0;
      if (1.0 - b < 1e-9) b = 0.0;
      if (a > b) std::swap(a, b);
      if (circular_distance(a, b) < min_separation) continue;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const ParameterPair& p) {
        const bool same = circular_distance(p.s0, a) < 1e-7 && circular_distance(p.s1, b) < 1e-7;
        const bool swapped = circular_distance(p.s0, b) < 1e-7 && circular_distance(p.s1, a) < 1e-7;
        return same || swapped;
      });
      if (!duplicate) found.push_back({a, b});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const ParameterPair& p, const ParameterPair& q) { return p.s0 < q.s0; });
  return found;
}

std::vector<ParameterPair> lagrangian_crossings(const LegendrianGenerator& g) {
  PlanarCurve curve{
      g.size(),
      [&g](double s) { return std::array<double, 2>{g.x_at(s), g.y_at(s)}; },
      [&g](double s) { return std::array<double, 2>{g.x_prime_at(s), g.y_prime_at(s)}; },
  };
  return pair_scan(curve);
}

std::vector<ParameterPair> self_tangencies(const LegendrianLoop& loop, const Tolerances& tol) {
  std::vector<ParameterPair> out;
  for (const auto& p : lagrangian_crossings(loop.generator())) {
    if (std::abs(area_between_z(loop, p)) <= tol.tangency) out.push_back(p);
  }
  return out;
}

std::vector<ParameterPair> front_crossings(const LegendrianLoop& loop, const Tolerances& tol) {
  const auto& g = loop.generator();
  PlanarCurve curve{
      g.size(),
      [&](double s) { return std::array<double, 2>{g.x_at(s), loop.z_at(s)}; },
      [&](double s) {
        const double xp = g.x_prime_at(s);
        return std::array<double, 2>{xp, g.y_at(s) * xp};
      },
  };
  std::vector<ParameterPair> out;
  for (const auto& p : pair_scan(curve)) {
    if (std::abs(g.y_at(p.s0) - g.y_at(p.s1)) > std::sqrt(tol.tangency)) out.push_back(p);
  }
  return out;
}

EmbeddingReport embedding_check(const HorizontalLoop& loop, const Tolerances& tol) {
  if (!loop.closed(tol.closure)) {
    throw Error(ErrorCode::NotClosed, "closure defects (" +
                                          format_double(loop.legendrian().closure_defect_z()) +
                                          ", " + format_double(loop.closure_defect_w()) + ")");
  }
  EmbeddingReport report;
  for (const auto& p : self_tangencies(loop.legendrian(), tol)) {
    const double dw = area_integral(loop, p.s0, p.s1);
    report.double_points.push_back({p.s0, p.s1, dw});
    report.margin = std::min(report.margin, std::abs(dw));
  }
  report.embedded = report.margin > tol.embed;
  return report;
}

nlohmann::json to_json(const EmbeddingReport& report) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : report.double_points) {
    points.push_back({{"s0", p.s0}, {"s1", p.s1}, {"dw", p.dw}});
  }
  nlohmann::json j;
  j["double_points"] = points;
  j["margin"] = std::isinf(report.margin) ? nlohmann::json(nullptr) : nlohmann::json(report.margin);
  j["embedded"] = report.embedded;
  return j;
}

double bump(double s, const BumpSupport& support) {
  const double d = wrap(s - support.center + 0.5) - 0.5;
  const double t = d / (0.5 * support.width);
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double bump_derivative(double s, const BumpSupport& support) {
  const double d = wrap(s - support.center + 0.5) - 0.5;
  const double half = 0.5 * support.width;
  const double t = d / half;
  if (std::abs(t) >= 1.0) return 0.0;
  const double q = 1.0 - t * t;
  return std::exp(1.0 - 1.0 / q) * (-2.0 * t / (q * q)) / half;
}

std::vector<double> bump_samples(std::size_t n, const BumpSupport& support) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = bump(static_cast<double>(k) / static_cast<double>(n), support);
  return out;
}

std::array<BumpSupport, 2> default_bump_supports(const LegendrianGenerator& g) {
  constexpr double kWidth = 0.08;
  const auto xp = g.x_prime();
  const std::size_t n = g.size();
  double vmax = 0.0;
  for (double v : xp) vmax = std::max(vmax, std::abs(v));
  std::vector<bool> strong(n);
  for (std::size_t k = 0; k < n; ++k) strong[k] = std::abs(xp[k]) >= 0.5 * vmax;

  // Circular runs of strong samples as (start index, length).
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  if (std::all_of(strong.begin(), strong.end(), [](bool b) { return b; })) {
    runs.push_back({0, n});
  } else {
    std::size_t origin = 0;
    while (strong[origin]) ++origin;  // start scanning just after a weak sample
    std::size_t k = 0;
    while (k < n) {
      const std::size_t idx = (origin + k) % n;
      if (!strong[idx]) {
        ++k;
        continue;
      }
      std::size_t len = 0;
      while (k < n && strong[(origin + k) % n]) {
        ++len;
        ++k;
      }
      runs.push_back({idx, len});
    }
  }
  std::stable_sort(runs.begin(), runs.end(), [](auto& a, auto& b) { return a.second > b.second; });

  const double h = 1.0 / static_cast<double>(n);
  // Candidate centres inside a run, starting from its middle; the bump stays
  // inside the run when the run is wide enough.
  auto candidates = [&](const std::pair<std::size_t, std::size_t>& run) {
    const double start = static_cast<double>(run.first) * h;
    const double len = static_cast<double>(run.second) * h;
    std::vector<double> out;
    if (len <= kWidth) {
      out.push_back(wrap(start + 0.5 * (len - h)));
      return out;
    }
    const double lo = start + 0.5 * kWidth;
    const double span = len - kWidth;
    for (double f : {0.5, 0.3, 0.7, 0.1, 0.9, 0.0, 1.0}) out.push_back(wrap(lo + f * span));
    return out;
  };

  std::vector<double> first = candidates(runs[0]);
  std::vector<double> second;
  if (runs.size() >= 2) {
    second = candidates(runs[1]);
  } else {
    second = first;
  }

  std::array<BumpSupport, 2> best{BumpSupport{first.front(), kWidth}, BumpSupport{0.0, kWidth}};
  double best_condition = std::numeric_limits<double>::infinity();
  std::vector<std::array<double, 2>> columns_first, columns_second;
  for (double c : first) columns_first.push_back(closure_defects(xp, bump_samples(n, {c, kWidth})));
  for (double c : second) columns_second.push_back(closure_defects(xp, bump_samples(n, {c, kWidth})));
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = 0; j < second.size(); ++j) {
      if (circular_distance(first[i], second[j]) < kWidth) continue;
      Eigen::Matrix2d m;
      m << columns_first[i][0], columns_second[j][0], columns_first[i][1], columns_second[j][1];
      const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix2d>(m).singularValues();
      const double condition = sv(1) > 0.0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
      // Prefer the most central placement unless conditioning is clearly better.
      if (condition < 0.5 * best_condition) {
        best_condition = condition;
        best = {BumpSupport{first[i], kWidth}, BumpSupport{second[j], kWidth}};
      }
    }
  }
  if (std::isinf(best_condition)) {
    // No disjoint pair inside the strong runs: strongest sample elsewhere.
    double strongest = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double s = g.parameter(k);
      if (circular_distance(s, best[0].center) < kWidth) continue;
      if (std::abs(xp[k]) > strongest) {
        strongest = std::abs(xp[k]);
        best[1].center = s;
      }
    }
  }
  return best;
}

BalanceResult balance_closure_detailed(const LegendrianGenerator& g,
                                       const std::array<BumpSupport, 2>& supports) {
  const auto xp = g.x_prime();
  const auto y = g.y();
  const auto d0 = closure_defects(xp, y);
  if (std::abs(d0[0]) <= 1e-12 && std::abs(d0[1]) <= 1e-12) {
    return {g, 0.0, 0.0, 1.0, supports, d0};
  }
  const std::array<std::vector<double>, 2> phi{bump_samples(g.size(), supports[0]),
                                               bump_samples(g.size(), supports[1])};
  Eigen::Matrix2d matrix;
  for (int i = 0; i < 2; ++i) {
    // Both defects are linear in y (x is fixed), so the columns are the
    // defects of the bumps themselves.
    const auto col = closure_defects(xp, phi[i]);
    matrix(0, i) = col[0];
    matrix(1, i) = col[1];
  }
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(matrix);
  const auto sv = svd.singularValues();
  const double condition = sv(1) > 0.0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
  if (!(condition <= 1e8)) {
    throw Error(ErrorCode::SingularSystem,
                "balancing system condition number " + format_double(condition));
  }
  const Eigen::Vector2d coeffs = matrix.partialPivLu().solve(Eigen::Vector2d(-d0[0], -d0[1]));
  std::vector<double> ynew(y.begin(), y.end());
  for (std::size_t k = 0; k < ynew.size(); ++k) ynew[k] += coeffs(0) * phi[0][k] + coeffs(1) * phi[1][k];

  std::optional<LegendrianGenerator> balanced;
  try {
    balanced.emplace(g.with_y(std::move(ynew)));
  } catch (const Error& e) {
    throw Error(ErrorCode::ImmersionLost, std::string("balancing: ") + e.what());
  }
  int winding_after = 0;
  try {
    winding_after = rot_winding(*balanced);
  } catch (const Error& e) {
    throw Error(ErrorCode::ImmersionLost, std::string("balancing: ") + e.what());
  }
  if (winding_after != rot_winding(g)) {
    throw Error(ErrorCode::ImmersionLost, "balancing changed the winding number");
  }
  const auto residual = closure_defects(balanced->x_prime(), balanced->y());
  return {std::move(*balanced), coeffs(0), coeffs(1), condition, supports, residual};
}

BalanceResult balance_closure_detailed(const LegendrianGenerator& g) {
  return balance_closure_detailed(g, default_bump_supports(g));
}

LegendrianGenerator balance_closure(const LegendrianGenerator& g) {
  return balance_closure_detailed(g).generator;
}

LegendrianGenerator balance_closure(const LegendrianGenerator& g,
                                    const std::array<BumpSupport, 2>& supports) {
  return balance_closure_detailed(g, supports).generator;
}

LegendrianGenerator reversed(const LegendrianGenerator& g) {
  const std::size_t n = g.size();
  std::vector<double> x(n), y(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = g.x()[(n - k) % n];
    y[k] = g.y()[(n - k) % n];
  }
  return LegendrianGenerator(std::move(x), std::move(y));
}

}  // namespace engel
