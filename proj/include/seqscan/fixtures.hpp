#pragma once

#include "seqscan/core.hpp"
#include "seqscan/evaluation.hpp"

#include <cstdint>

namespace seqscan {

// Recipe for a synthetic labeled trajectory: dense dwells laid out on a
// line, interleaved with interpolated transition runs, plus a fraction of
// in-dwell points displaced far enough to be local noise at the given eps.
struct FixtureSpec {
  int clusterCount = 2;
  int pointsPerCluster = 30;
  double clusterRadius = 20.0;      // m
  double interClusterDistance = 0;  // m, must exceed 2*radius + eps
  double dwell = 3600.0;            // s spent inside each cluster
  double samplingInterval = 60.0;   // s between transition samples
  double localNoiseRate = 0.0;      // in [0, 1)
  int transitionPoints = 5;         // samples between consecutive dwells
  double eps = 25.0;                // clustering radius the fixture separates at
  std::uint64_t seed = 1;
};

struct Fixture {
  Trajectory trajectory;
  Labeling labels;
};

// Deterministic for a fixed seed. Truth clusters are temporally separated;
// every local-noise point lies beyond 2*radius + eps from its cluster
// center, hence more than eps from all same-extent cluster points. Throws
// when the spacing would let neighboring truth clusters touch.
Fixture generateFixture(const FixtureSpec& spec);

}  // namespace seqscan
