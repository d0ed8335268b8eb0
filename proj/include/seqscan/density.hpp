#pragma once

#include "seqscan/core.hpp"

#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace seqscan {

// What a single insertion did to the clustering.
struct InsertEffect {
  enum class Kind { RemainedNoise, Joined, Created, Merged };

  Kind kind = Kind::RemainedNoise;
  std::optional<int> cluster;     // resulting cluster id, absent for noise
  std::vector<int> mergedFrom;    // pre-existing cluster ids unified by a merge
  std::vector<int> touched;       // every cluster id whose member set grew
};

// Incremental density clustering over a growing planar point set.
//
// Semantics match a from-scratch density clustering of the same points: a
// point is core when its eps-neighborhood (itself included) holds at least
// minPts members; newly inserted points can promote earlier ones to core,
// and promotions absorb their unlabeled neighbors and unify any clusters
// they now connect. Border points reachable from several clusters go to the
// cluster of the reaching core with the smallest point id, which makes the
// result deterministic. Deletion is not supported.
//
// Single writer; concurrent reads during insert are undefined. Whole states
// may be moved between threads.
class ClusterState {
 public:
  ClusterState(double eps, int minPts, DistanceMetric metric = {});

  double eps() const { return eps_; }
  int minPts() const { return minPts_; }
  int size() const { return static_cast<int>(slots_.size()); }
  bool contains(int pointId) const { return slotOf_.count(pointId) > 0; }

  // Inserts a new point and restores all clustering invariants, applying
  // core promotions and their absorptions transitively.
  InsertEffect insert(int pointId, const Vec2& position);

  // Member points within eps of the given position, boundary inclusive,
  // in ascending id order.
  std::vector<int> neighborhood(const Vec2& position) const;

  // Cluster of a point after all merges, or nullopt for noise.
  std::optional<int> clusterOf(int pointId) const;

  bool isCore(int pointId) const;
  const Vec2& positionOf(int pointId) const;

  // Current representative id of a (possibly merged-away) cluster id.
  int resolveCluster(int clusterId) const;

  // Member point ids of a cluster, ordered ascending.
  const std::set<int>& clusterMembers(int clusterId) const;

  // Live cluster ids, ascending.
  std::vector<int> clusterIds() const;

 private:
  struct Slot {
    int id = 0;
    Vec2 pos{0.0, 0.0};
    int neighborCount = 0;  // includes the point itself
    bool core = false;
    int cluster = -1;       // cluster id, -1 while unlabeled
    int reachingCore = -1;  // id of the smallest core that reaches this border
  };

  double distance(const Vec2& a, const Vec2& b) const;
  std::vector<int> neighborSlots(const Vec2& position, int excludeSlot) const;
  long long cellKey(const Vec2& position) const;
  int find(int clusterId) const;
  int unite(int a, int b);
  int freshCluster();
  void assignBorder(int slot, int coreSlot, std::set<int>* grownTracker);

  double eps_;
  int minPts_;
  DistanceMetric metric_;
  bool linearScan_;

  std::vector<Slot> slots_;
  std::unordered_map<int, int> slotOf_;
  std::unordered_map<long long, std::vector<int>> grid_;

  mutable std::vector<int> parent_;
  std::vector<std::set<int>> members_;
  std::set<int> liveClusters_;
};

}  // namespace seqscan
