#include "seqscan/density.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace seqscan;

namespace {

std::vector<std::pair<int, Vec2>> randomPoints(std::mt19937& rng, int n, double extent) {
  std::uniform_real_distribution<double> u(0.0, extent);
  std::vector<std::pair<int, Vec2>> pts;
  for (int i = 1; i <= n; ++i) pts.push_back({i, Vec2(u(rng), u(rng))});
  return pts;
}

// Mix of blobs and background so clustering structure actually appears.
std::vector<std::pair<int, Vec2>> blobbyPoints(std::mt19937& rng, int n, double extent) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, extent / 40.0);
  std::vector<Vec2> centers;
  for (int c = 0; c < 4; ++c) centers.emplace_back(u(rng) * extent, u(rng) * extent);
  std::vector<std::pair<int, Vec2>> pts;
  for (int i = 1; i <= n; ++i) {
    if (u(rng) < 0.7) {
      const Vec2& c = centers[static_cast<std::size_t>(rng() % centers.size())];
      pts.push_back({i, Vec2(c.x() + g(rng), c.y() + g(rng))});
    } else {
      pts.push_back({i, Vec2(u(rng) * extent, u(rng) * extent)});
    }
  }
  return pts;
}

// core rep map of a ClusterState: core id -> smallest core id in its cluster
std::map<int, int> coreReps(const ClusterState& state, const std::vector<int>& ids) {
  std::map<int, int> minOfCluster;
  for (int id : ids) {
    if (!state.isCore(id)) continue;
    int cluster = *state.clusterOf(id);
    auto [it, fresh] = minOfCluster.try_emplace(cluster, id);
    if (!fresh) it->second = std::min(it->second, id);
  }
  std::map<int, int> reps;
  for (int id : ids)
    if (state.isCore(id)) reps[id] = minOfCluster[*state.clusterOf(id)];
  return reps;
}

}  // namespace

TEST_CASE("neighborhood is boundary inclusive and matches a linear scan") {
  ClusterState state(50.0, 4);
  CHECK(state.neighborhood(Vec2(0, 0)).empty());

  state.insert(1, Vec2(0, 0));
  state.insert(2, Vec2(50, 0));   // exactly eps away
  state.insert(3, Vec2(50.01, 0));
  auto nb = state.neighborhood(Vec2(0, 0));
  CHECK(nb == std::vector<int>{1, 2});

  std::mt19937 rng(11);
  auto pts = randomPoints(rng, 100, 400.0);
  ClusterState s2(50.0, 4);
  for (auto& [id, pos] : pts) s2.insert(id, pos);
  for (int probe = 0; probe < 20; ++probe) {
    Vec2 q = pts[static_cast<std::size_t>(rng() % pts.size())].second + Vec2(1.0, -2.0);
    std::vector<int> expected;
    for (auto& [id, pos] : pts)
      if ((pos - q).norm() <= 50.0) expected.push_back(id);
    std::sort(expected.begin(), expected.end());
    CHECK(s2.neighborhood(q) == expected);
  }
}

TEST_CASE("neighborhood symmetry") {
  std::mt19937 rng(13);
  auto pts = randomPoints(rng, 60, 200.0);
  ClusterState state(40.0, 3);
  for (auto& [id, pos] : pts) state.insert(id, pos);
  for (auto& [id, pos] : pts) {
    for (int other : state.neighborhood(pos)) {
      if (other == id) continue;
      auto back = state.neighborhood(state.positionOf(other));
      CHECK(std::find(back.begin(), back.end(), id) != back.end());
    }
  }
}

TEST_CASE("insert crosses the core threshold at exactly minPts") {
  ClusterState state(10.0, 4);
  for (int i = 1; i <= 3; ++i) {
    auto effect = state.insert(i, Vec2(0, 0));
    CHECK(effect.kind == InsertEffect::Kind::RemainedNoise);
    CHECK(!state.clusterOf(i).has_value());
  }
  auto effect = state.insert(4, Vec2(0, 0));
  CHECK(effect.kind == InsertEffect::Kind::Created);
  for (int i = 1; i <= 4; ++i) {
    CHECK(state.clusterOf(i).has_value());
    CHECK(state.isCore(i));
  }
  CHECK(state.clusterMembers(*effect.cluster).size() == 4);

  auto far = state.insert(5, Vec2(1000, 0));
  CHECK(far.kind == InsertEffect::Kind::RemainedNoise);
}

TEST_CASE("a core bridge point merges two clusters") {
  // two 3-point blobs 16 apart, eps 10, minPts 3; the midpoint reaches both
  ClusterState state(10.0, 3);
  state.insert(1, Vec2(0, 0));
  state.insert(2, Vec2(0, 1));
  state.insert(3, Vec2(0, -1));
  state.insert(4, Vec2(16, 0));
  state.insert(5, Vec2(16, 1));
  state.insert(6, Vec2(16, -1));
  REQUIRE(state.clusterOf(1).has_value());
  REQUIRE(state.clusterOf(4).has_value());
  REQUIRE(*state.clusterOf(1) != *state.clusterOf(4));

  auto effect = state.insert(7, Vec2(8, 0));
  CHECK(effect.kind == InsertEffect::Kind::Merged);
  CHECK(effect.mergedFrom.size() == 2);
  CHECK(*state.clusterOf(1) == *state.clusterOf(4));
  CHECK(*state.clusterOf(7) == *state.clusterOf(1));

  // merge transparency: ids labeled before the merge resolve to the same cluster
  CHECK(*state.clusterOf(2) == *state.clusterOf(5));

  std::vector<std::pair<int, Vec2>> pts = {{1, {0, 0}},  {2, {0, 1}},  {3, {0, -1}}, {4, {16, 0}},
                                           {5, {16, 1}}, {6, {16, -1}}, {7, {8, 0}}};
  auto batch = oracles::batchDbscan(pts, 10.0, 3);
  std::vector<int> ids = {1, 2, 3, 4, 5, 6, 7};
  CHECK(coreReps(state, ids) == batch.coreRep);
}

TEST_CASE("clusterOf errors") {
  ClusterState state(10.0, 3);
  state.insert(1, Vec2(0, 0));
  CHECK(!state.clusterOf(1).has_value());
  CHECK_THROWS_AS(state.clusterOf(99), std::invalid_argument);
  CHECK_THROWS_AS(state.insert(1, Vec2(1, 1)), std::invalid_argument);
}

TEST_CASE("random insertion order reproduces the batch core partition") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = blobbyPoints(rng, 200, 1000.0);
    double eps = 60.0;
    int minPts = 3 + static_cast<int>(rng() % 5);

    auto order = pts;
    std::shuffle(order.begin(), order.end(), rng);
    ClusterState state(eps, minPts);
    for (auto& [id, pos] : order) state.insert(id, pos);

    auto batch = oracles::batchDbscan(pts, eps, minPts);
    std::vector<int> ids;
    for (auto& [id, pos] : pts) ids.push_back(id);

    std::set<int> cores;
    for (int id : ids)
      if (state.isCore(id)) cores.insert(id);
    REQUIRE(cores == batch.cores);
    REQUIRE(coreReps(state, ids) == batch.coreRep);
  }
}

TEST_CASE("final labeling satisfies the cluster model") {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 5; ++trial) {
    auto pts = blobbyPoints(rng, 200, 800.0);
    const double eps = 55.0;
    const int minPts = 4 + trial % 3;
    ClusterState state(eps, minPts);
    for (auto& [id, pos] : pts) state.insert(id, pos);

    for (auto& [id, pos] : pts) {
      // reachability: any point within eps of a core is labeled with a
      // reaching core's cluster
      std::vector<int> reachingCores;
      for (auto& [other, opos] : pts)
        if (other != id && state.isCore(other) && (pos - opos).norm() <= eps)
          reachingCores.push_back(other);
      auto cluster = state.clusterOf(id);
      if (state.isCore(id)) {
        CHECK(cluster.has_value());
      } else if (!reachingCores.empty()) {
        REQUIRE(cluster.has_value());
        bool fromReaching = false;
        for (int c : reachingCores)
          if (*state.clusterOf(c) == *cluster) fromReaching = true;
        CHECK(fromReaching);
      } else {
        CHECK(!cluster.has_value());  // noise: neither core nor border
      }
    }

    // connectivity: cores of one cluster form one component of the core graph
    auto batch = oracles::batchDbscan(pts, eps, minPts);
    std::map<int, std::set<int>> byRep, byCluster;
    for (auto& [core, rep] : batch.coreRep) byRep[rep].insert(core);
    for (auto& [id, pos] : pts)
      if (state.isCore(id)) byCluster[*state.clusterOf(id)].insert(id);
    std::set<std::set<int>> a, b;
    for (auto& [k, v] : byRep) a.insert(v);
    for (auto& [k, v] : byCluster) b.insert(v);
    CHECK(a == b);
  }
}

TEST_CASE("border ties go to the reaching core with the smallest id") {
  // two blobs with outposts facing each other; the late point reaches one
  // core of each cluster yet stays below the core threshold itself
  ClusterState state(10.0, 4);
  for (int i = 1; i <= 3; ++i) state.insert(i, Vec2(0, 0));
  state.insert(4, Vec2(8, 0));    // outpost of the first blob
  for (int i = 5; i <= 7; ++i) state.insert(i, Vec2(27, 0));
  state.insert(8, Vec2(19, 0));   // outpost of the second blob
  REQUIRE(state.isCore(4));
  REQUIRE(state.isCore(8));
  REQUIRE(*state.clusterOf(4) != *state.clusterOf(8));

  state.insert(9, Vec2(13.5, 0));  // within eps of outposts 4 and 8 only
  CHECK(!state.isCore(9));
  CHECK(*state.clusterOf(4) != *state.clusterOf(8));  // still two clusters
  CHECK(*state.clusterOf(9) == *state.clusterOf(4));  // 4 < 8: older core wins
}

TEST_CASE("a custom metric switches neighborhoods to that metric") {
  DistanceMetric chebyshev = [](const Vec2& a, const Vec2& b) {
    return std::max(std::abs(a.x() - b.x()), std::abs(a.y() - b.y()));
  };
  ClusterState state(10.0, 2, chebyshev);
  state.insert(1, Vec2(0, 0));
  state.insert(2, Vec2(9, 9));    // euclidean 12.7, chebyshev 9
  state.insert(3, Vec2(11, 0));   // chebyshev 11
  auto nb = state.neighborhood(Vec2(0, 0));
  CHECK(nb == std::vector<int>{1, 2});
  CHECK(state.clusterOf(1).has_value());  // {1,2} cluster under chebyshev
}
