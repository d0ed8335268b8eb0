#include "seqscan/analysis.hpp"

#include "support/helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace seqscan;
using helpers::makeTrajectory;
using helpers::unitSpaced;

namespace {

StayRegion makeRegion(int id, std::vector<Interval> ivs) {
  StayRegion r;
  r.id = id;
  r.segment = canonicalize(std::move(ivs));
  r.msr = r.segment;
  return r;
}

// two dwells of the given sizes and presence spans, far apart
Trajectory twoDwells(int n1, double span1, int n2, double span2) {
  std::vector<helpers::Sample> samples;
  double t = 0;
  for (int i = 0; i < n1; ++i) samples.push_back({t + span1 * i / (n1 - 1), 0, 0});
  t += span1 + 200;
  samples.push_back({t, 5000, 5000});  // lone hop
  t += 200;
  for (int i = 0; i < n2; ++i) samples.push_back({t + span2 * i / (n2 - 1), 10000, 0});
  return makeTrajectory(samples);
}

}  // namespace

TEST_CASE("spatial separation is checked against core points, asymmetrically") {
  SUBCASE("distant regions separate both ways") {
    std::vector<Vec2> pos;
    for (int i = 0; i < 5; ++i) pos.push_back(Vec2(0, 0));
    pos.push_back(Vec2(500, 0));
    for (int i = 0; i < 5; ++i) pos.push_back(Vec2(1000, 0));
    Trajectory traj = unitSpaced(pos);
    Params params(50.0, 4, 0.0);
    Segmentation seg = scan(traj, params);
    REQUIRE(seg.regions.size() == 2);
    CHECK(spatiallySeparated(seg.regions[1], seg.regions[0], traj, params).separated);
    CHECK(spatiallySeparated(seg.regions[0], seg.regions[1], traj, params).separated);
  }

  SUBCASE("a dwell with absences still separates from the next region") {
    // region 1 = [1,2]u[4,5] with local noise 3, transition 6, region 2 = [7,10]
    std::vector<Vec2> pos = {
        {0, 0}, {0, 1},      // 1, 2
        {0, 300},            // 3: absence
        {1, 0}, {1, 1},      // 4, 5
        {500, 300},          // 6: departure
        {1000, 0}, {1000, 1}, {1001, 0}, {1001, 1},  // 7..10
    };
    Trajectory traj = unitSpaced(pos);
    Params params(10.0, 4, 0.0);
    Segmentation seg = scan(traj, params);
    REQUIRE(seg.regions.size() == 2);
    CHECK(seg.regions[0].segment.toString() == "[1,2]u[4,5]");
    CHECK(seg.regions[1].segment.toString() == "[7,10]");
    CHECK(seg.classOf(3) == PointClass{PointClass::Kind::LocalNoise, 1});
    CHECK(seg.classOf(6) == PointClass{PointClass::Kind::Transition, 1});
    CHECK(spatiallySeparated(seg.regions[1], seg.regions[0], traj, params).separated);
  }

  SUBCASE("local noise of the later region can break separation one way only") {
    // region 2's absence point sits right on region 1's footprint
    std::vector<Vec2> pos = {
        {0, 0}, {0, 0}, {0, 0}, {0, 0},          // 1..4: region 1
        {500, 500},                              // 5: transition
        {1000, 0}, {1000, 0}, {1000, 0},         // 6..8: region 2
        {0, 0},                                  // 9: absence back at region 1
        {1000, 0},                               // 10: region 2 again
    };
    Trajectory traj = unitSpaced(pos);
    Params params(10.0, 3, 0.0);
    Segmentation seg = scan(traj, params);
    REQUIRE(seg.regions.size() == 2);
    CHECK(seg.regions[1].segment.toString() == "[6,8]u[10,10]");
    CHECK(seg.classOf(9) == PointClass{PointClass::Kind::LocalNoise, 2});

    auto backward = spatiallySeparated(seg.regions[1], seg.regions[0], traj, params);
    CHECK(!backward.separated);
    CHECK(*backward.witness == 9);

    // brute-force double loop agrees with the report
    bool any = false;
    for (int p = seg.regions[1].segment.first(); p <= seg.regions[1].segment.last(); ++p)
      for (int q : seg.regions[0].segment.indices())
        if ((traj.at(p).position - traj.at(q).position).norm() <= params.eps) any = true;
    CHECK(any);

    // but region 1 is separated from region 2
    CHECK(spatiallySeparated(seg.regions[0], seg.regions[1], traj, params).separated);
  }
}

TEST_CASE("presence sweep tabulates the step function") {
  SUBCASE("no cluster at zero threshold gives an empty table") {
    Trajectory traj = unitSpaced({{0, 0}, {500, 0}, {1000, 0}, {1500, 0}});
    CHECK(presenceSweep(traj, 10.0, 3, 1.0).rows.empty());
  }

  SUBCASE("a theta too small to move the threshold is rejected") {
    Trajectory traj = twoDwells(10, 900, 10, 1800);
    CHECK_THROWS_AS(presenceSweep(traj, 50.0, 4, 1e-300), std::invalid_argument);
    CHECK_THROWS_AS(presenceSweep(traj, 50.0, 4, 0.0), std::invalid_argument);
  }

  SUBCASE("table matches a dense-grid rerun and the step property") {
    Trajectory traj = twoDwells(12, 600, 12, 2400);
    const double eps = 50.0;
    const int minPts = 4;
    const double theta = 120.0;
    FTable table = presenceSweep(traj, eps, minPts, theta);
    REQUIRE(!table.rows.empty());

    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      CHECK(table.rows[k].deltaLo <= table.rows[k].deltaHi);
      if (k > 0) CHECK(table.rows[k].deltaLo > table.rows[k - 1].deltaHi);
      if (k > 0) CHECK(table.rows[k].regionCount <= table.rows[k - 1].regionCount);
    }

    // dense grid at theta/4: every covered grid point reruns to the row count
    double maxDelta = table.rows.back().deltaHi;
    for (double g = 0.0; g <= maxDelta; g += theta / 4.0) {
      const FTableRow* row = nullptr;
      for (const FTableRow& r : table.rows)
        if (r.deltaLo <= g && g <= r.deltaHi) row = &r;
      if (!row) continue;
      Segmentation seg = scan(traj, Params(eps, minPts, g));
      CHECK(static_cast<int>(seg.regions.size()) == row->regionCount);
    }
  }

  SUBCASE("identical seeds and identical regions coincide across thresholds") {
    Trajectory traj = twoDwells(10, 900, 10, 1800);
    FTable table = presenceSweep(traj, 50.0, 4, 100.0);
    std::mt19937 rng(3);
    for (const FTableRow& row : table.rows) {
      std::uniform_real_distribution<double> pick(row.deltaLo, row.deltaHi);
      Segmentation a = scan(traj, Params(50.0, 4, pick(rng)));
      Segmentation b = scan(traj, Params(50.0, 4, pick(rng)));
      REQUIRE(a.regions.size() == b.regions.size());
      bool sameMsrs = true, sameRegions = true;
      for (std::size_t k = 0; k < a.regions.size(); ++k) {
        sameMsrs = sameMsrs && a.regions[k].msr == b.regions[k].msr;
        sameRegions = sameRegions && a.regions[k].segment == b.regions[k].segment;
      }
      CHECK(sameMsrs == sameRegions);
      CHECK(sameRegions);
    }
  }
}

TEST_CASE("sim measures mutual core reachability") {
  Params params(10.0, 3, 0.0);

  SUBCASE("identical point multisets give 1") {
    std::vector<Vec2> pos;
    for (int rep = 0; rep < 2; ++rep)
      for (int i = 0; i < 4; ++i) pos.push_back(Vec2(i * 3.0, 0));
    Trajectory traj = unitSpaced(pos);
    CHECK(sim(makeRegion(1, {{1, 4}}), makeRegion(2, {{5, 8}}), traj, params) == 1.0);
  }

  SUBCASE("regions beyond eps everywhere give 0") {
    std::vector<Vec2> pos;
    for (int i = 0; i < 4; ++i) pos.push_back(Vec2(0, i * 3.0));
    for (int i = 0; i < 4; ++i) pos.push_back(Vec2(500, i * 3.0));
    Trajectory traj = unitSpaced(pos);
    CHECK(sim(makeRegion(1, {{1, 4}}), makeRegion(2, {{5, 8}}), traj, params) == 0.0);
  }

  SUBCASE("a small region inside a large one scores 1 despite the size gap") {
    std::vector<Vec2> pos;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int i = 0; i < 50; ++i) pos.push_back(Vec2(u(rng), u(rng)));
    for (int i = 0; i < 4; ++i) pos.push_back(Vec2(0.1 * i, 0));
    Trajectory traj = unitSpaced(pos);
    double s = sim(makeRegion(1, {{1, 50}}), makeRegion(2, {{51, 54}}), traj, params);
    CHECK(s == 1.0);
  }

  SUBCASE("self similarity is 1 even when the region has border points") {
    // line of four cores spaced 3 apart plus one border hanging off the end
    std::vector<Vec2> pos = {{0, 0}, {3, 0}, {6, 0}, {9, 0}, {18, 0}};
    Trajectory traj = unitSpaced(pos);
    Params p(10.0, 4, 0.0);
    StayRegion r = makeRegion(1, {{1, 5}});
    auto cores = regionCorePoints(r, traj, p);
    CHECK(cores == std::vector<int>{1, 2, 3, 4});  // point 5 is border only
    CHECK(sim(r, r, traj, p) == 1.0);
  }

  SUBCASE("sim is symmetric") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 60.0);
    std::vector<Vec2> pos;
    for (int i = 0; i < 20; ++i) pos.push_back(Vec2(u(rng), u(rng)));
    Trajectory traj = unitSpaced(pos);
    StayRegion a = makeRegion(1, {{1, 10}});
    StayRegion b = makeRegion(2, {{11, 20}});
    CHECK(sim(a, b, traj, params) == sim(b, a, traj, params));
  }
}

TEST_CASE("similarity classes are the transitive closure under the threshold") {
  Params params(10.0, 3, 0.0);

  SUBCASE("pairwise dissimilar regions stay singletons") {
    std::vector<Vec2> pos;
    for (int r = 0; r < 3; ++r)
      for (int i = 0; i < 3; ++i) pos.push_back(Vec2(r * 500.0, i * 2.0));
    Trajectory traj = unitSpaced(pos);
    std::vector<StayRegion> regions = {makeRegion(1, {{1, 3}}), makeRegion(2, {{4, 6}}),
                                       makeRegion(3, {{7, 9}})};
    auto classes = similarityClasses(regions, 0.0, traj, params);
    REQUIRE(classes.size() == 3);
    for (auto& c : classes) CHECK(c.size() == 1);
  }

  SUBCASE("chained similarity collapses into one class") {
    // blobs at x = 0, 9, 18: adjacent pairs touch within eps, the ends do not
    std::vector<Vec2> pos;
    for (int r = 0; r < 3; ++r)
      for (int i = 0; i < 3; ++i) pos.push_back(Vec2(r * 9.0, i * 0.5));
    Trajectory traj = unitSpaced(pos);
    std::vector<StayRegion> regions = {makeRegion(1, {{1, 3}}), makeRegion(2, {{4, 6}}),
                                       makeRegion(3, {{7, 9}})};
    CHECK(sim(regions[0], regions[2], traj, params) == 0.0);
    auto classes = similarityClasses(regions, 0.0, traj, params);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0] == std::vector<int>{1, 2, 3});
  }
}

TEST_CASE("zones project their classes and keep multiplicity") {
  std::vector<Vec2> pos;
  for (int i = 0; i < 3; ++i) pos.push_back(Vec2(i * 2.0, 0));
  for (int i = 0; i < 5; ++i) pos.push_back(Vec2(500 + i * 2.0, 0));
  for (int i = 0; i < 4; ++i) pos.push_back(Vec2(i * 2.0, 1));
  Trajectory traj = unitSpaced(pos);
  std::vector<StayRegion> regions = {makeRegion(1, {{1, 3}}), makeRegion(2, {{4, 8}}),
                                     makeRegion(3, {{9, 12}})};
  auto zs = zones({{1, 3}, {2}}, regions, traj);
  REQUIRE(zs.size() == 2);
  CHECK(zs[0].regionIds == std::vector<int>{1, 3});
  CHECK(zs[0].footprint.size() == 7);  // 3 + 4 points, duplicates kept
  CHECK(zs[1].footprint.size() == 5);

  SUBCASE("singleton class footprint equals the region footprint") {
    CHECK(zs[1].footprint[0] == traj.at(4).position);
  }

  SUBCASE("unknown region id is rejected") {
    CHECK_THROWS_AS(zones({{9}}, regions, traj), std::invalid_argument);
  }
}

TEST_CASE("symbolic trajectory alternates zones and non-empty transitions") {
  // two places visited twice each: A B A B
  std::vector<Vec2> pos;
  auto dwell = [&](double x, int n) {
    for (int i = 0; i < n; ++i) pos.push_back(Vec2(x, 0));
  };
  dwell(0, 4);
  pos.push_back(Vec2(500, 0));
  dwell(1000, 4);
  pos.push_back(Vec2(500, 10));
  dwell(0, 4);
  pos.push_back(Vec2(500, 20));
  dwell(1000, 4);
  Trajectory traj = unitSpaced(pos);
  Params params(10.0, 4, 0.0);
  Segmentation seg = scan(traj, params);
  REQUIRE(seg.regions.size() == 4);

  auto classes = similarityClasses(seg.regions, 0.0, traj, params);
  REQUIRE(classes.size() == 2);
  auto zs = zones(classes, seg.regions, traj);
  SymbolicTrajectory st = symbolicTrajectory(seg, zs, traj);

  std::vector<int> zoneSequence;
  for (const SymbolicEntry& e : st.entries)
    if (e.symbol != kTransitionSymbol) zoneSequence.push_back(e.symbol);
  CHECK(zoneSequence == std::vector<int>{1, 2, 1, 2});

  // entries are ordered and non-overlapping, transitions interleaved
  for (std::size_t k = 1; k < st.entries.size(); ++k)
    CHECK(st.entries[k].start > st.entries[k - 1].end);
  REQUIRE(st.entries.size() == 7);
  CHECK(st.entries[1].symbol == kTransitionSymbol);

  SUBCASE("a region without a zone is an error") {
    CHECK_THROWS_AS(symbolicTrajectory(seg, {zs[0]}, traj), std::invalid_argument);
  }

  SUBCASE("single region gives a single entry") {
    Trajectory one = unitSpaced(std::vector<Vec2>(5, Vec2(0, 0)));
    Segmentation seg1 = scan(one, params);
    REQUIRE(seg1.regions.size() == 1);
    auto zs1 = zones(similarityClasses(seg1.regions, 0.0, one, params), seg1.regions, one);
    SymbolicTrajectory st1 = symbolicTrajectory(seg1, zs1, one);
    REQUIRE(st1.entries.size() == 1);
    CHECK(st1.entries[0].symbol == 1);
  }
}

TEST_CASE("twelve regions over four places group into four classes of three") {
  std::vector<Vec2> sites = {{0, 0}, {30000, 0}, {30000, 30000}, {0, 30000}};
  std::vector<Vec2> pos;
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> jitter(-8.0, 8.0);
  for (int cycle = 0; cycle < 3; ++cycle) {
    for (int z = 0; z < 4; ++z) {
      for (int i = 0; i < 6; ++i)
        pos.push_back(sites[static_cast<std::size_t>(z)] + Vec2(jitter(rng), jitter(rng)));
      pos.push_back(Vec2(15000, 15000) + Vec2(jitter(rng) * 20, jitter(rng) * 20));
    }
  }
  pos.pop_back();  // end on a dwell
  Trajectory traj = unitSpaced(pos);
  Params params(30.0, 5, 0.0);
  Segmentation seg = scan(traj, params);
  REQUIRE(seg.regions.size() == 12);

  auto classes = similarityClasses(seg.regions, 0.0, traj, params);
  REQUIRE(classes.size() == 4);
  CHECK(classes[0] == std::vector<int>{1, 5, 9});
  CHECK(classes[1] == std::vector<int>{2, 6, 10});
  CHECK(classes[2] == std::vector<int>{3, 7, 11});
  CHECK(classes[3] == std::vector<int>{4, 8, 12});
}
