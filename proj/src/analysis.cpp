#include "seqscan/analysis.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace seqscan {

std::vector<int> regionCorePoints(const StayRegion& region, const Trajectory& traj,
                                  const Params& params, const DistanceMetric& metric) {
  ClusterState state(params.eps, params.minPts, metric);
  for (int i : region.segment.indices()) state.insert(i, traj.at(i).position);
  std::vector<int> cores;
  for (int i : region.segment.indices())
    if (state.isCore(i)) cores.push_back(i);
  return cores;
}

namespace {

double pointDistance(const Vec2& a, const Vec2& b, const DistanceMetric& metric) {
  return metric ? metric(a, b) : euclideanDistance(a, b);
}

// Member indices of s plus the unclustered indices inside its extent.
std::vector<int> segmentWithLocalNoise(const StayRegion& s) {
  std::vector<int> out;
  for (int i = s.segment.first(); i <= s.segment.last(); ++i) out.push_back(i);
  return out;
}

}  // namespace

SeparationReport spatiallySeparated(const StayRegion& s2, const StayRegion& s1,
                                    const Trajectory& traj, const Params& params,
                                    const DistanceMetric& metric) {
  SeparationReport report;
  report.pair = {s2.id, s1.id};

  std::vector<int> cores = regionCorePoints(s1, traj, params, metric);
  for (int p : segmentWithLocalNoise(s2)) {
    const Vec2& pos = traj.at(p).position;
    for (int q : cores) {
      if (pointDistance(pos, traj.at(q).position, metric) <= params.eps) {
        report.separated = false;
        report.witness = p;
        return report;
      }
    }
  }
  return report;
}

FTable presenceSweep(const Trajectory& traj, double eps, int minPts, double theta,
                     const DistanceMetric& metric) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
  FTable table;
  double delta = 0.0;
  while (true) {
    Segmentation seg = scan(traj, Params(eps, minPts, delta), metric);
    if (seg.regions.empty()) break;
    double minSeedPresence = std::numeric_limits<double>::infinity();
    for (const StayRegion& r : seg.regions)
      minSeedPresence = std::min(minSeedPresence, presence(r.msr, traj));
    table.rows.push_back({delta, minSeedPresence, static_cast<int>(seg.regions.size())});
    double next = minSeedPresence + theta;
    if (!(next > delta)) throw std::invalid_argument("theta too small to advance the sweep");
    delta = next;
  }
  return table;
}

double sim(const StayRegion& s1, const StayRegion& s2, const Trajectory& traj,
           const Params& params, const DistanceMetric& metric) {
  std::vector<int> cores1 = regionCorePoints(s1, traj, params, metric);
  std::vector<int> cores2 = regionCorePoints(s2, traj, params, metric);
  if (cores1.empty() || cores2.empty()) return 0.0;

  auto reachableShare = [&](const std::vector<int>& from, const std::vector<int>& to) {
    int reached = 0;
    for (int a : from) {
      for (int b : to) {
        if (pointDistance(traj.at(a).position, traj.at(b).position, metric) <= params.eps) {
          ++reached;
          break;
        }
      }
    }
    return static_cast<double>(reached) / static_cast<double>(from.size());
  };

  return std::max(reachableShare(cores1, cores2), reachableShare(cores2, cores1));
}

std::vector<std::vector<int>> similarityClasses(const std::vector<StayRegion>& regions,
                                                double psi, const Trajectory& traj,
                                                const Params& params,
                                                const DistanceMetric& metric) {
  const int m = static_cast<int>(regions.size());
  std::vector<int> parent(static_cast<std::size_t>(m));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      double s = sim(regions[a], regions[b], traj, params, metric);
      bool related = (psi == 0.0) ? (s > 0.0) : (s >= psi);
      if (related) parent[find(a)] = find(b);
    }
  }

  std::map<int, std::vector<int>> byRoot;
  for (int a = 0; a < m; ++a) byRoot[find(a)].push_back(regions[a].id);
  std::vector<std::vector<int>> classes;
  for (auto& [root, ids] : byRoot) {
    std::sort(ids.begin(), ids.end());
    classes.push_back(std::move(ids));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

std::vector<Zone> zones(const std::vector<std::vector<int>>& classes,
                        const std::vector<StayRegion>& regions, const Trajectory& traj) {
  std::map<int, const StayRegion*> byId;
  for (const StayRegion& r : regions) byId[r.id] = &r;

  std::vector<Zone> out;
  for (const auto& cls : classes) {
    Zone zone;
    zone.id = static_cast<int>(out.size()) + 1;
    zone.regionIds = cls;
    for (int rid : cls) {
      auto it = byId.find(rid);
      if (it == byId.end()) throw std::invalid_argument("class references unknown region id");
      for (int i : it->second->segment.indices()) zone.footprint.push_back(traj.at(i).position);
    }
    out.push_back(std::move(zone));
  }
  return out;
}

SymbolicTrajectory symbolicTrajectory(const Segmentation& seg, const std::vector<Zone>& zoneList,
                                      const Trajectory& traj) {
  std::map<int, int> zoneOf;
  for (const Zone& z : zoneList)
    for (int rid : z.regionIds) zoneOf[rid] = z.id;

  // Transition extents, keyed by gap ordinal.
  std::map<int, std::pair<double, double>> gaps;
  for (int i = 1; i <= traj.size(); ++i) {
    const PointClass& pc = seg.classOf(i);
    if (pc.kind != PointClass::Kind::Transition) continue;
    double t = traj.at(i).timestamp;
    auto [it, fresh] = gaps.try_emplace(pc.id, t, t);
    if (!fresh) {
      it->second.first = std::min(it->second.first, t);
      it->second.second = std::max(it->second.second, t);
    }
  }

  SymbolicTrajectory st;
  auto emitGap = [&](int ordinal) {
    auto it = gaps.find(ordinal);
    if (it != gaps.end())
      st.entries.push_back({it->second.first, it->second.second, kTransitionSymbol});
  };

  emitGap(0);
  for (const StayRegion& r : seg.regions) {
    auto it = zoneOf.find(r.id);
    if (it == zoneOf.end()) throw std::invalid_argument("region not covered by any zone");
    double start = traj.at(r.segment.first()).timestamp;
    double end = traj.at(r.segment.last()).timestamp;
    st.entries.push_back({start, end, it->second});
    emitGap(r.id);  // gap ordinal after region k equals k
  }
  return st;
}

}  // namespace seqscan
