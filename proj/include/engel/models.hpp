#pragma once

#include <cstddef>
#include <cstdint>

#include "engel/curves.hpp"

namespace engel {

inline constexpr int kMaxModelRotation = 64;
inline constexpr int kModelRetryCap = 16;
inline constexpr std::uint64_t kFigureSeed = 7;

/// Trigonometric description of the rot = n model for one attempt: base
/// loop, seeded perturbation on harmonics |k| <= 3, and two low modes added
/// to y that cancel both closure defects on the given grid.
SeriesDescription model_description(int n, std::uint64_t seed, std::size_t samples = 4096,
                                    int attempt = 0);

/// Closed embedded horizontal loop with rot_winding = rot_cusp = n, lifted
/// with z0 = w0 = 0.  Retries with fresh perturbations up to kModelRetryCap
/// times, then throws SynthesisFailed with the last diagnostic.
HorizontalLoop model_front(int n, std::uint64_t seed, std::size_t samples = 4096,
                           const Tolerances& tol = {});

/// s -> 1 - s; starts at the same point, so the base values carry over.
HorizontalLoop orientation_reverse(const HorizontalLoop& loop);

/// Invariant-level reproductions of the two pictured fronts (rot 3 and rot 0).
HorizontalLoop figure1(std::size_t samples = 4096);
HorizontalLoop figure2(std::size_t samples = 4096);

}  // namespace engel
