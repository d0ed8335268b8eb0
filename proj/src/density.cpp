#include "seqscan/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqscan {

ClusterState::ClusterState(double eps, int minPts, DistanceMetric metric)
    : eps_(eps), minPts_(minPts), metric_(std::move(metric)), linearScan_(bool(metric_)) {
  if (!(eps_ > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (minPts_ < 1) throw std::invalid_argument("minPts must be >= 1");
}

double ClusterState::distance(const Vec2& a, const Vec2& b) const {
  return linearScan_ ? metric_(a, b) : euclideanDistance(a, b);
}

long long ClusterState::cellKey(const Vec2& position) const {
  const auto ix = static_cast<long long>(std::floor(position.x() / eps_));
  const auto iy = static_cast<long long>(std::floor(position.y() / eps_));
  return (ix << 32) ^ (iy & 0xffffffffLL);
}

std::vector<int> ClusterState::neighborSlots(const Vec2& position, int excludeSlot) const {
  std::vector<int> out;
  auto consider = [&](int s) {
    if (s == excludeSlot) return;
    if (distance(position, slots_[s].pos) <= eps_) out.push_back(s);
  };
  if (linearScan_) {
    for (int s = 0; s < static_cast<int>(slots_.size()); ++s) consider(s);
    return out;
  }
  const auto ix = static_cast<long long>(std::floor(position.x() / eps_));
  const auto iy = static_cast<long long>(std::floor(position.y() / eps_));
  for (long long cx = ix - 1; cx <= ix + 1; ++cx) {
    for (long long cy = iy - 1; cy <= iy + 1; ++cy) {
      auto it = grid_.find((cx << 32) ^ (cy & 0xffffffffLL));
      if (it == grid_.end()) continue;
      for (int s : it->second) consider(s);
    }
  }
  return out;
}

std::vector<int> ClusterState::neighborhood(const Vec2& position) const {
  std::vector<int> ids;
  for (int s : neighborSlots(position, -1)) ids.push_back(slots_[s].id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

int ClusterState::find(int clusterId) const {
  int root = clusterId;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[clusterId] != root) {
    int next = parent_[clusterId];
    parent_[clusterId] = root;
    clusterId = next;
  }
  return root;
}

int ClusterState::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return a;
  if (members_[a].size() < members_[b].size()) std::swap(a, b);
  parent_[b] = a;
  members_[a].merge(members_[b]);
  liveClusters_.erase(b);
  return a;
}

int ClusterState::freshCluster() {
  int id = static_cast<int>(parent_.size());
  parent_.push_back(id);
  members_.emplace_back();
  liveClusters_.insert(id);
  return id;
}

// Labels an unlabeled non-core point into coreSlot's cluster. Labels are
// assigned once: a border keeps its cluster afterwards (short of merges), so
// member sets only grow and closed-over snapshots stay valid. The smallest-id
// tie-break is applied among the cores reaching the point at labeling time;
// a point with no reaching core cannot be labeled later without one of its
// neighbors promoting, which routes through here again while still unlabeled.
void ClusterState::assignBorder(int slot, int coreSlot, std::set<int>* grownTracker) {
  Slot& y = slots_[slot];
  const Slot& c = slots_[coreSlot];
  if (y.cluster != -1) {
    if (c.id < y.reachingCore && find(y.cluster) == find(c.cluster)) y.reachingCore = c.id;
    return;
  }
  int root = find(c.cluster);
  y.cluster = root;
  y.reachingCore = c.id;
  members_[root].insert(y.id);
  if (grownTracker) grownTracker->insert(root);
}

InsertEffect ClusterState::insert(int pointId, const Vec2& position) {
  if (contains(pointId)) throw std::invalid_argument("point id already inserted");

  const std::vector<int> nb = neighborSlots(position, -1);
  const int self = static_cast<int>(slots_.size());
  Slot slot;
  slot.id = pointId;
  slot.pos = position;
  slot.neighborCount = static_cast<int>(nb.size()) + 1;
  slot.core = slot.neighborCount >= minPts_;
  slots_.push_back(slot);
  slotOf_[pointId] = self;
  if (!linearScan_) grid_[cellKey(position)].push_back(self);

  std::vector<int> promoted;
  for (int q : nb) {
    Slot& sq = slots_[q];
    ++sq.neighborCount;
    if (!sq.core && sq.neighborCount >= minPts_) {
      sq.core = true;
      promoted.push_back(q);
    }
  }

  std::sort(promoted.begin(), promoted.end(),
            [&](int a, int b) { return slots_[a].id < slots_[b].id; });
  std::vector<int> newCores = promoted;
  if (slots_[self].core) newCores.push_back(self);

  InsertEffect effect;
  std::set<int> grown;

  if (newCores.empty()) {
    int reach = -1;
    for (int q : nb)
      if (slots_[q].core && (reach < 0 || slots_[q].id < slots_[reach].id)) reach = q;
    if (reach < 0) {
      effect.kind = InsertEffect::Kind::RemainedNoise;
      return effect;
    }
    int root = find(slots_[reach].cluster);
    slots_[self].cluster = root;
    slots_[self].reachingCore = slots_[reach].id;
    members_[root].insert(pointId);
    effect.kind = InsertEffect::Kind::Joined;
    effect.cluster = root;
    effect.touched = {root};
    return effect;
  }

  // Neighbor lists of every point that just became core; these are the only
  // places where new density connections can appear.
  std::vector<std::vector<int>> coreNb(newCores.size());
  for (std::size_t k = 0; k < newCores.size(); ++k)
    coreNb[k] = (newCores[k] == self) ? nb : neighborSlots(slots_[newCores[k]].pos, newCores[k]);

  std::set<int> priorRoots;
  for (std::size_t k = 0; k < newCores.size(); ++k) {
    const Slot& c = slots_[newCores[k]];
    if (c.cluster != -1) priorRoots.insert(find(c.cluster));
    for (int r : coreNb[k]) {
      const Slot& sr = slots_[r];
      if (sr.core && sr.cluster != -1) priorRoots.insert(find(sr.cluster));
    }
  }

  for (int c : newCores) {
    Slot& sc = slots_[c];
    if (sc.cluster == -1) {
      sc.cluster = freshCluster();
      members_[sc.cluster].insert(sc.id);
      grown.insert(sc.cluster);
    }
    sc.reachingCore = sc.id;
  }

  for (std::size_t k = 0; k < newCores.size(); ++k) {
    const Slot& c = slots_[newCores[k]];
    for (int r : coreNb[k]) {
      if (!slots_[r].core) continue;
      int ra = find(c.cluster);
      int rb = find(slots_[r].cluster);
      if (ra != rb) grown.insert(unite(ra, rb));  // a merge can tip the constraint too
    }
  }

  // The new point itself, when not core, joins via the smallest reaching
  // core among all of its neighbors (old cores included), so it is kept out
  // of the generic absorption pass below.
  if (!slots_[self].core) {
    int reach = -1;
    for (int q : nb)
      if (slots_[q].core && (reach < 0 || slots_[q].id < slots_[reach].id)) reach = q;
    if (reach >= 0) assignBorder(self, reach, &grown);
  }

  for (std::size_t k = 0; k < newCores.size(); ++k) {
    for (int y : coreNb[k])
      if (!slots_[y].core && y != self) assignBorder(y, newCores[k], &grown);
  }

  int resultRoot = find(slots_[self].cluster != -1 ? slots_[self].cluster
                                                   : slots_[newCores.front()].cluster);
  for (int root : grown) effect.touched.push_back(find(root));
  std::sort(effect.touched.begin(), effect.touched.end());
  effect.touched.erase(std::unique(effect.touched.begin(), effect.touched.end()),
                       effect.touched.end());
  if (effect.touched.empty()) effect.touched = {resultRoot};

  effect.cluster = resultRoot;
  if (priorRoots.empty()) {
    effect.kind = InsertEffect::Kind::Created;
  } else if (priorRoots.size() == 1) {
    effect.kind = InsertEffect::Kind::Joined;
  } else {
    effect.kind = InsertEffect::Kind::Merged;
    effect.mergedFrom.assign(priorRoots.begin(), priorRoots.end());
  }
  return effect;
}

std::optional<int> ClusterState::clusterOf(int pointId) const {
  auto it = slotOf_.find(pointId);
  if (it == slotOf_.end()) throw std::invalid_argument("unknown point id");
  int cluster = slots_[it->second].cluster;
  if (cluster == -1) return std::nullopt;
  return find(cluster);
}

bool ClusterState::isCore(int pointId) const {
  auto it = slotOf_.find(pointId);
  if (it == slotOf_.end()) throw std::invalid_argument("unknown point id");
  return slots_[it->second].core;
}

const Vec2& ClusterState::positionOf(int pointId) const {
  auto it = slotOf_.find(pointId);
  if (it == slotOf_.end()) throw std::invalid_argument("unknown point id");
  return slots_[it->second].pos;
}

int ClusterState::resolveCluster(int clusterId) const {
  if (clusterId < 0 || clusterId >= static_cast<int>(parent_.size()))
    throw std::invalid_argument("unknown cluster id");
  return find(clusterId);
}

const std::set<int>& ClusterState::clusterMembers(int clusterId) const {
  return members_[resolveCluster(clusterId)];
}

std::vector<int> ClusterState::clusterIds() const {
  return {liveClusters_.begin(), liveClusters_.end()};
}

}  // namespace seqscan
