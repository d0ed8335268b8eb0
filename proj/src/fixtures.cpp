#include "seqscan/fixtures.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace seqscan {

Fixture generateFixture(const FixtureSpec& spec) {
  if (spec.clusterCount < 1) throw std::invalid_argument("clusterCount must be >= 1");
  if (spec.pointsPerCluster < 2) throw std::invalid_argument("pointsPerCluster must be >= 2");
  if (!(spec.clusterRadius > 0.0)) throw std::invalid_argument("clusterRadius must be > 0");
  if (!(spec.eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (!(spec.dwell > 0.0)) throw std::invalid_argument("dwell must be > 0");
  if (!(spec.samplingInterval > 0.0)) throw std::invalid_argument("samplingInterval must be > 0");
  if (spec.localNoiseRate < 0.0 || spec.localNoiseRate >= 1.0)
    throw std::invalid_argument("localNoiseRate must be in [0, 1)");
  if (spec.transitionPoints < 0) throw std::invalid_argument("transitionPoints must be >= 0");
  if (spec.clusterCount > 1 &&
      spec.interClusterDistance <= 2.0 * spec.clusterRadius + spec.eps)
    throw std::invalid_argument("cluster spacing would let truth clusters overlap");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double kPi = 3.14159265358979323846;

  auto diskPoint = [&](const Vec2& center, double radius) {
    double angle = 2.0 * kPi * unit(rng);
    double r = radius * std::sqrt(unit(rng));
    return Vec2(center.x() + r * std::cos(angle), center.y() + r * std::sin(angle));
  };
  // Noise leaves the dwell mostly perpendicular to the cluster line so it
  // cannot drift toward a neighboring dwell.
  auto noisePoint = [&](const Vec2& center) {
    double band = unit(rng) < 0.5 ? 0.0 : kPi;
    double angle = band + kPi * (0.2 + 0.6 * unit(rng));
    double dist = 2.0 * spec.clusterRadius + spec.eps * (1.25 + 0.75 * unit(rng));
    return Vec2(center.x() + dist * std::cos(angle), center.y() + dist * std::sin(angle));
  };

  std::vector<TrajectoryPoint> points;
  Labeling labels;
  double t = 0.0;
  auto push = [&](const Vec2& pos, const Label& label) {
    points.push_back({static_cast<int>(points.size()) + 1, pos, t});
    labels.perPoint.push_back(label);
  };

  const double inDwellStep = spec.dwell / static_cast<double>(spec.pointsPerCluster - 1);
  for (int c = 0; c < spec.clusterCount; ++c) {
    const Vec2 center(c * spec.interClusterDistance, 0.0);
    for (int j = 0; j < spec.pointsPerCluster; ++j) {
      bool interior = j != 0 && j != spec.pointsPerCluster - 1;
      bool noise = interior && unit(rng) < spec.localNoiseRate;
      if (noise)
        push(noisePoint(center), {Label::Kind::LocalNoise, c + 1});
      else
        push(diskPoint(center, spec.clusterRadius), {Label::Kind::Cluster, c + 1});
      if (j != spec.pointsPerCluster - 1) t += inDwellStep;
    }
    if (c == spec.clusterCount - 1) break;

    // Travel to the next dwell, keeping clear of both cluster fringes.
    const Vec2 next((c + 1) * spec.interClusterDistance, 0.0);
    const double clearance = spec.clusterRadius + 2.0 * spec.eps;
    const Vec2 dir = (next - center).normalized();
    const Vec2 from = center + dir * std::min(clearance, spec.interClusterDistance * 0.4);
    const Vec2 to = next - dir * std::min(clearance, spec.interClusterDistance * 0.4);
    for (int s = 1; s <= spec.transitionPoints; ++s) {
      t += spec.samplingInterval;
      double f = static_cast<double>(s) / static_cast<double>(spec.transitionPoints + 1);
      Vec2 pos = from + (to - from) * f;
      pos.y() += (unit(rng) - 0.5) * spec.clusterRadius * 0.1;
      push(pos, {Label::Kind::Transition, 0});
    }
    t += spec.samplingInterval;
  }

  return Fixture{Trajectory(std::move(points)), std::move(labels)};
}

}  // namespace seqscan
