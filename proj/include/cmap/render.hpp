#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "cmap/maps.hpp"

namespace cmap {

struct RenderSpec {
  // Disk and annulus: circles x rays. Rectangle: lines Re w = const x lines Im w = const.
  std::size_t radial = 8;
  std::size_t angular = 16;
  double stroke_width = 1.0;
  std::size_t pixels = 120;        // field plot resolution along the longer side
  std::size_t curve_samples = 160;  // points per grid curve
  double width_px = 600.0;
};

/// Preimages of the canonical grid curves plus the boundary, one <path> each.
/// Curves whose inversion fails stop at the last good point and carry
/// data-truncated="true".
std::string render_grid_svg(const ConformalMap& map, const RenderSpec& spec);

/// Pixels of the domain colored by their image in the rectangle: hue runs
/// red to blue with Re w, brightness is scaled by lightness_factor.
std::string render_field_svg(const ConformalMap& map, const RenderSpec& spec);

/// 1 - y^2 with y the imaginary part of w rescaled to (-1, 1); clamped to [0, 1].
double lightness_factor(cplx w, double mu);

/// sRGB color for potential t in [0, 1] (red at 0, blue at 1, blended in
/// OKLab), darkened by the factor.
std::array<int, 3> field_color(double t, double factor);

}  // namespace cmap
