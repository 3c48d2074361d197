#include <cmath>

#include "engel/curves.hpp"
#include "engel/error.hpp"
#include "engel/format.hpp"
#include "engel/lifting.hpp"

namespace engel {

FrontDiagram front_of(const LegendrianLoop& loop, const Tolerances& tol) {
  if (!loop.closed(tol.closure)) {
    throw Error(ErrorCode::NotClosed,
                "front of a loop with ∮ y dx = " + format_double(loop.closure_defect_z()));
  }
  const auto& g = loop.generator();
  FrontDiagram front;
  front.points.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    front.points.push_back({g.parameter(k), g.x()[k], loop.z()[k]});
  }
  for (double s : x_prime_roots(g, tol.root)) {
    const double yp = g.y_prime_at(s);
    if (std::abs(yp) < tol.y_prime_floor) {
      throw Error(ErrorCode::DegenerateCusp,
                  "|y'| = " + format_double(std::abs(yp)) + " at cusp s = " + format_double(s));
    }
    // Relative to the tangent line z = z_c + y_c (x - x_c) the front behaves
    // like y' x'' (s - s_c)^3 / 3, so the sign of y' x'' decides whether the
    // cusp is traversed upwards.
    const double xpp = g.x_second_at(s);
    front.cusps.push_back({s, g.x_at(s), loop.z_at(s),
                           yp * xpp > 0.0 ? CuspOrientation::Up : CuspOrientation::Down});
  }
  front.self_tangencies = self_tangencies(loop, tol);
  front.double_points = front_crossings(loop, tol);
  return front;
}

}  // namespace engel
