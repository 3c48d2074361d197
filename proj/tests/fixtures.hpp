#pragma once

#include <cmath>
#include <numbers>

#include "engel/curves.hpp"

namespace fixtures {

using engel::SeriesDescription;
using engel::SeriesTerm;
using Kind = engel::SeriesTerm::Kind;

inline SeriesTerm c(int k, double a) { return {Kind::Cos, a, k}; }
inline SeriesTerm s(int k, double a) { return {Kind::Sin, a, k}; }
inline SeriesTerm constant(double a) { return {Kind::Constant, a, 0}; }

inline SeriesDescription circle(int k = 1) { return {{c(k, 1.0)}, {s(k, 1.0)}}; }

/// x = cos 2πks, y = a sin 4πks: ∮ y dx = 0, ∮ z dx = πka²/2... linear in a
/// for fixed z0 = 0; cusps at s = j/(2k).
inline SeriesDescription eight(int k = 1, double a = 0.02) { return {{c(k, 1.0)}, {s(2 * k, a)}}; }

/// x = sin 2πs + 0.3 sin 4πs with an odd y: closed in z and w, and the
/// (x, y) crossing at s = 0, ½ has Δz = Δw = 0 (solved exactly).
inline SeriesDescription zero_area() {
  return {{s(1, 1.0), s(2, 0.3)},
          {s(1, 0.525226697646426), s(2, 1.0), s(3, -0.7751679710594155),
           s(4, -0.8043378708477702), s(5, -0.47649531064277423)}};
}

/// Same x; y gains cosine terms vanishing at s = 0, ½.  Still closed with
/// Δz = 0 at (0, ½), but Δw = -0.199314285714285...
inline SeriesDescription glued() {
  return {{s(1, 1.0), s(2, 0.3)},
          {s(1, 0.5252266976464263), c(1, -0.3), s(2, 1.0), c(2, 0.5), s(3, -0.7751679710594155),
           c(3, 0.3), s(4, -0.8043378708477702), c(4, -0.5), s(5, -0.4764953106427742)}};
}

}  // namespace fixtures
