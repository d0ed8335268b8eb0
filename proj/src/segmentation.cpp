#include "seqscan/segmentation.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace seqscan {

bool canExpand(const ClusterState& context, int pointId, int activeCluster) {
  auto cluster = context.clusterOf(pointId);
  return cluster && *cluster == context.resolveCluster(activeCluster);
}

namespace {

double presenceOfMembers(const std::set<int>& members, const Trajectory& traj) {
  double sum = 0.0;
  auto it = members.begin();
  while (it != members.end()) {
    int lo = *it;
    int hi = lo;
    ++it;
    while (it != members.end() && *it == hi + 1) {
      hi = *it;
      ++it;
    }
    sum += traj.at(hi).timestamp - traj.at(lo).timestamp;
  }
  return sum;
}

}  // namespace

std::optional<MsrInfo> findMsr(const ClusterState& pool, const Trajectory& traj,
                               const Params& params, const InsertEffect& lastInsert) {
  if (lastInsert.kind == InsertEffect::Kind::RemainedNoise) return std::nullopt;

  std::optional<MsrInfo> best;
  for (int cluster : lastInsert.touched) {
    const std::set<int>& members = pool.clusterMembers(cluster);
    if (static_cast<int>(members.size()) < params.minPts) continue;
    double p = presenceOfMembers(members, traj);
    if (p < params.presence) continue;
    if (!best || *members.begin() < best->segment.first()) {
      MsrInfo info;
      info.cluster = pool.resolveCluster(cluster);
      info.segment = Segment::fromSortedIndices(members);
      info.presenceValue = p;
      best = std::move(info);
    }
  }
  return best;
}

Segmentation scan(const Trajectory& traj, const Params& params, const DistanceMetric& metric) {
  ClusterState context(params.eps, params.minPts, metric);
  ClusterState pool(params.eps, params.minPts, metric);

  struct Active {
    int cluster;  // cluster id in the context
    Segment msr;
  };
  std::optional<Active> active;
  std::vector<StayRegion> regions;

  auto closeActive = [&]() {
    if (!active) return;
    const std::set<int>& members = context.clusterMembers(active->cluster);
    StayRegion region;
    region.id = static_cast<int>(regions.size()) + 1;
    region.segment = Segment::fromSortedIndices(members);
    region.msr = active->msr;
    region.presenceValue = presence(region.segment, traj);
    region.durationValue = duration(region.segment, traj);
    regions.push_back(std::move(region));
    active.reset();
  };

  const int n = traj.size();
  for (int i = 1; i <= n; ++i) {
    const Vec2& pos = traj.at(i).position;

    std::size_t sizeBefore = 0;
    if (active) sizeBefore = context.clusterMembers(active->cluster).size();

    context.insert(i, pos);

    if (active) {
      active->cluster = context.resolveCluster(active->cluster);
      if (canExpand(context, i, active->cluster)) {
        pool = ClusterState(params.eps, params.minPts, metric);
        continue;
      }
      // A merge or promotion can pull points into the active cluster even
      // when i itself lands elsewhere; those points must not stay available
      // as seeds for the next region, so the pool is flushed here too.
      if (context.clusterMembers(active->cluster).size() > sizeBefore)
        pool = ClusterState(params.eps, params.minPts, metric);
    }

    InsertEffect effect = pool.insert(i, pos);
    std::optional<MsrInfo> msr = findMsr(pool, traj, params, effect);
    if (msr) {
      closeActive();
      active = Active{msr->cluster, msr->segment};
      context = std::move(pool);
      pool = ClusterState(params.eps, params.minPts, metric);
    }
  }
  closeActive();

  std::vector<PointClass> classes = classify(traj, regions);
  return Segmentation{std::move(regions), std::move(classes), params};
}

std::vector<PointClass> classify(const Trajectory& traj, const std::vector<StayRegion>& regions) {
  for (std::size_t k = 0; k < regions.size(); ++k) {
    if (regions[k].segment.empty()) throw std::invalid_argument("region with empty segment");
    if (k > 0 && regions[k].segment.first() <= regions[k - 1].segment.last())
      throw std::invalid_argument("region extents overlap or are out of order");
  }

  const int n = traj.size();
  std::vector<PointClass> classes(static_cast<std::size_t>(n));

  int gap = 0;
  std::size_t r = 0;
  for (int i = 1; i <= n; ++i) {
    PointClass& pc = classes[static_cast<std::size_t>(i) - 1];
    while (r < regions.size() && i > regions[r].segment.last()) {
      ++r;
      ++gap;
    }
    if (r < regions.size() && i >= regions[r].segment.first()) {
      const StayRegion& region = regions[r];
      pc = region.segment.contains(i) ? PointClass{PointClass::Kind::Member, region.id}
                                      : PointClass{PointClass::Kind::LocalNoise, region.id};
    } else {
      pc = PointClass{PointClass::Kind::Transition, gap};
    }
  }
  return classes;
}

}  // namespace seqscan
