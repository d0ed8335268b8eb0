#pragma once

#include "seqscan/core.hpp"
#include "seqscan/density.hpp"

#include <optional>
#include <vector>

namespace seqscan {

// A density cluster that met the minimum presence constraint, kept with the
// minimal segment it was created from.
struct StayRegion {
  int id = 0;              // 1-based ordinal in path order
  Segment segment;         // final member indices
  Segment msr;             // minimal stay region recorded at creation
  double presenceValue = 0.0;
  double durationValue = 0.0;
};

// Per-point classification of a segmentation. Member and local-noise points
// carry their region's id; transition points carry the ordinal of the gap
// they fall in (0 before the first region, m after the last).
struct PointClass {
  enum class Kind { Member, LocalNoise, Transition };

  Kind kind = Kind::Transition;
  int id = 0;

  bool operator==(const PointClass& o) const { return kind == o.kind && id == o.id; }
};

struct Segmentation {
  std::vector<StayRegion> regions;
  std::vector<PointClass> classes;  // classes[i-1] is the class of point i
  Params params;

  const PointClass& classOf(int index) const { return classes.at(static_cast<std::size_t>(index) - 1); }
};

// True when the freshly inserted point landed in the context cluster that
// holds the active region. The caller then owns absorbing that cluster's
// membership into the region.
bool canExpand(const ClusterState& context, int pointId, int activeCluster);

struct MsrInfo {
  int cluster = 0;       // pool cluster id at creation time
  Segment segment;       // member indices at the first moment of satisfaction
  double presenceValue = 0.0;
};

// Evaluates the cluster(s) affected by the latest pool insertion; returns
// the member segment of the first cluster that satisfies both the size and
// the minimum presence constraint, or nullopt.
std::optional<MsrInfo> findMsr(const ClusterState& pool, const Trajectory& traj,
                               const Params& params, const InsertEffect& lastInsert);

// Splits the trajectory into the first path: the maximal sequence of
// temporally separated stay regions where each seed cluster is the first in
// time to satisfy the presence constraint after the previous region closed.
// Unclustered points are classified as local noise or transition.
// Deterministic for a fixed input; a trajectory with no stay region yields
// an empty region list and one all-transition gap.
Segmentation scan(const Trajectory& traj, const Params& params,
                     const DistanceMetric& metric = {});

// Labels every index given the final regions: members, then unclustered
// indices inside a region's temporal extent as that region's local noise,
// everything else as transition of the enclosing gap. Throws when region
// extents overlap or regions are not in temporal order.
std::vector<PointClass> classify(const Trajectory& traj, const std::vector<StayRegion>& regions);

}  // namespace seqscan
