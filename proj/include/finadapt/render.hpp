#pragma once

#include <string>
#include <vector>

#include "finadapt/model.hpp"

namespace finadapt {

// Boundary cycle of a two-dimensional polytope, counterclockwise.
std::vector<Eigen::Vector2d> polygon_cycle(const Polytope& polytope);

// Intersection of a convex polygon with a set of halfplanes
// (normal . p <= offset), counterclockwise; empty when the clip is empty.
std::vector<Eigen::Vector2d> clip_polygon(const std::vector<Eigen::Vector2d>& polygon,
                                          const std::vector<HalfspaceRow>& halfplanes);

// Each recovered piece intersected with Omega as an ordered polygon.
// Requires a two-dimensional Omega.
std::vector<std::vector<Eigen::Vector2d>> cover_piece_polygons(const Instance& inst,
                                                               const Solution& sol);

// Figure-style SVG: Omega outline, translucent piece fills, legend with the
// second-stage values. 600x600 canvas, 5% margin, viewBox in Omega
// coordinates. Byte-deterministic for identical inputs.
std::string render_cover_svg(const Instance& inst, const Solution& sol);

}  // namespace finadapt
