#include "engel/invariants.hpp"

#include <cmath>
#include <numbers>

#include "engel/error.hpp"
#include "engel/format.hpp"

namespace engel {
namespace {

constexpr double kPi = std::numbers::pi;

struct Turning {
  double total = 0.0;
  double max_step = 0.0;
};

Turning accumulate(std::span<const double> xp, std::span<const double> yp) {
  Turning t;
  const std::size_t n = xp.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (k + 1) % n;
    // Signed angle from v_k to v_j.
    const double cross = xp[k] * yp[j] - yp[k] * xp[j];
    const double dot = xp[k] * xp[j] + yp[k] * yp[j];
    const double step = std::atan2(cross, dot);
    t.total += step;
    t.max_step = std::max(t.max_step, std::abs(step));
  }
  t.total /= 2.0 * kPi;
  return t;
}

}  // namespace

double winding_turns(const LegendrianGenerator& g) {
  Turning t = accumulate(g.x_prime(), g.y_prime());
  std::size_t m = g.size();
  for (int refinement = 0; refinement < 2 && t.max_step >= kPi / 2.0; ++refinement) {
    m *= 2;
    const auto x = spectral::resample(g.x(), m);
    const auto y = spectral::resample(g.y(), m);
    t = accumulate(spectral::differentiate(x), spectral::differentiate(y));
  }
  if (t.max_step >= kPi / 2.0) {
    throw Error(ErrorCode::AmbiguousWinding,
                "velocity turns by " + format_double(t.max_step) + " rad between samples");
  }
  return t.total;
}

int rot_winding(const LegendrianGenerator& g) {
  const double turns = winding_turns(g);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) {
    throw Error(ErrorCode::AmbiguousWinding, "non-integral winding " + format_double(turns));
  }
  return static_cast<int>(rounded);
}

CuspCount classify_cusps(const FrontDiagram& front) {
  CuspCount count;
  for (const auto& c : front.cusps) {
    if (c.orientation == CuspOrientation::Up) {
      ++count.c_plus;
    } else {
      ++count.c_minus;
    }
  }
  return count;
}

int rot_cusp(const FrontDiagram& front) {
  const auto count = classify_cusps(front);
  const int diff = count.c_minus - count.c_plus;
  if (diff % 2 != 0) {
    throw Error(ErrorCode::OddCuspImbalance, "c- - c+ = " + std::to_string(diff));
  }
  return diff / 2;
}

InvariantReport invariant_report(const LegendrianLoop& loop, const Tolerances& tol) {
  const auto front = front_of(loop, tol);
  InvariantReport r;
  r.rot_winding = rot_winding(loop.generator());
  r.cusps = classify_cusps(front);
  r.rot_cusp = rot_cusp(front);
  return r;
}

nlohmann::json to_json(const InvariantReport& report) {
  return {{"rot_winding", report.rot_winding},
          {"rot_cusp", report.rot_cusp},
          {"c_plus", report.cusps.c_plus},
          {"c_minus", report.cusps.c_minus}};
}

}  // namespace engel
