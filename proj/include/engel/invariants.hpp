#pragma once

#include <json.hpp>

#include "engel/curves.hpp"

namespace engel {

/// Winding number of s -> (x'(s), y'(s)) about the origin.  Throws
/// AmbiguousWinding if the sampled angle steps stay >= π/2 after two
/// refinements or the accumulated turn is not within 1e-6 of an integer.
int rot_winding(const LegendrianGenerator& g);

/// Unrounded accumulated turning of the velocity, in turns.
double winding_turns(const LegendrianGenerator& g);

struct CuspCount {
  int c_plus = 0;   // oriented upwards
  int c_minus = 0;  // oriented downwards
};

/// Up: the front passes from below its tangent line to above it, i.e.
/// y'(s_c) x''(s_c) > 0.  Down otherwise.
CuspCount classify_cusps(const FrontDiagram& front);

/// (c_minus - c_plus) / 2; throws OddCuspImbalance when the difference is odd.
int rot_cusp(const FrontDiagram& front);

struct InvariantReport {
  int rot_winding = 0;
  int rot_cusp = 0;
  CuspCount cusps;
};

InvariantReport invariant_report(const LegendrianLoop& loop, const Tolerances& tol = {});

/// `{"rot_winding":n,"rot_cusp":n,"c_plus":p,"c_minus":m}`.
nlohmann::json to_json(const InvariantReport& report);

}  // namespace engel
