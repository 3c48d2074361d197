#pragma once

#include <filesystem>
#include <string>

#include "engel/curves.hpp"

namespace engel {

/// SVG of the front in the (x, z) plane, z pointing up.  Cusps are
/// triangles (class "cusp up" / "cusp down"), transverse double points
/// circles, self-tangencies squares.  The viewBox pads the data by 5% on
/// each side.  Output depends only on the input.
std::string front_svg(const FrontDiagram& front);

/// Throws std::runtime_error when the file cannot be written.
void render_svg(const FrontDiagram& front, const std::filesystem::path& path);

}  // namespace engel
