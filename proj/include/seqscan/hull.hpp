#pragma once

#include "seqscan/core.hpp"

#include <vector>

namespace seqscan {

// Minimal convex polygon containing all points, vertices in counter-clockwise
// order with collinear boundary points dropped. Degenerate inputs yield the
// degenerate hull: a single point or the two endpoints of a segment.
std::vector<Vec2> convexHull(std::vector<Vec2> points);

}  // namespace seqscan
