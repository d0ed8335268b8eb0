#pragma once

#include "seqscan/core.hpp"

#include <vector>

namespace helpers {

using seqscan::Trajectory;
using seqscan::TrajectoryPoint;
using seqscan::Vec2;

struct Sample {
  double t, x, y;
};

inline Trajectory makeTrajectory(const std::vector<Sample>& samples) {
  std::vector<TrajectoryPoint> points;
  points.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k)
    points.push_back({static_cast<int>(k) + 1, Vec2(samples[k].x, samples[k].y), samples[k].t});
  return Trajectory(std::move(points));
}

// Unit-spaced timestamps 1..n over the given positions.
inline Trajectory unitSpaced(const std::vector<Vec2>& positions) {
  std::vector<TrajectoryPoint> points;
  for (std::size_t k = 0; k < positions.size(); ++k)
    points.push_back({static_cast<int>(k) + 1, positions[k], static_cast<double>(k) + 1.0});
  return Trajectory(std::move(points));
}

}  // namespace helpers
