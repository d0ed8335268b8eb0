#pragma once

#include "seqscan/core.hpp"
#include "seqscan/segmentation.hpp"

#include <optional>
#include <vector>

namespace seqscan {

// Outcome of the directed separation check "s2 is separated from s1".
struct SeparationReport {
  std::pair<int, int> pair{0, 0};     // (s2.id, s1.id)
  bool separated = true;
  std::optional<int> witness;         // violating point, smallest index first
};

// Step table of the presence sweep: for every delta in [deltaLo, deltaHi]
// the scan yields regionCount stay regions.
struct FTableRow {
  double deltaLo = 0.0;
  double deltaHi = 0.0;
  int regionCount = 0;
};

struct FTable {
  std::vector<FTableRow> rows;
};

// A maximal class of mutually similar stay regions together with the spatial
// projection of their member points (multiplicity preserved).
struct Zone {
  int id = 0;  // 1-based, ordered by smallest member region
  std::vector<int> regionIds;
  std::vector<Vec2> footprint;
};

constexpr int kTransitionSymbol = 0;

// One temporally annotated entry: a zone visit or a transition.
struct SymbolicEntry {
  double start = 0.0;
  double end = 0.0;
  int symbol = kTransitionSymbol;  // zone id, or kTransitionSymbol

  bool operator==(const SymbolicEntry& o) const {
    return start == o.start && end == o.end && symbol == o.symbol;
  }
};

struct SymbolicTrajectory {
  std::vector<SymbolicEntry> entries;
};

// Core points of a closed region, recomputed by batch-clustering its member
// positions alone under (eps, minPts).
std::vector<int> regionCorePoints(const StayRegion& region, const Trajectory& traj,
                                  const Params& params, const DistanceMetric& metric = {});

// Directed check: true iff no point of s2 or of the noise local to s2 falls
// within eps of any core point of s1. Asymmetric by construction.
SeparationReport spatiallySeparated(const StayRegion& s2, const StayRegion& s1,
                                    const Trajectory& traj, const Params& params,
                                    const DistanceMetric& metric = {});

// Sweeps the presence threshold: starting from 0, runs the scan, records
// ([delta, smallest seed presence], region count), advances delta past the
// recorded bound by theta, and stops once no region is found.
FTable presenceSweep(const Trajectory& traj, double eps, int minPts, double theta,
                     const DistanceMetric& metric = {});

// Spatial similarity of two regions: the larger, over both directions, of
// the fraction of one region's core points lying within eps of some core
// point of the other. Commutative; in [0, 1].
double sim(const StayRegion& s1, const StayRegion& s2, const Trajectory& traj,
           const Params& params, const DistanceMetric& metric = {});

// Partition of the regions under the transitive closure of similarity.
// Relatedness is sim > psi when psi == 0 and sim >= psi otherwise, so a zero
// threshold still requires an actual core-point contact.
std::vector<std::vector<int>> similarityClasses(const std::vector<StayRegion>& regions,
                                                double psi, const Trajectory& traj,
                                                const Params& params,
                                                const DistanceMetric& metric = {});

// One zone per similarity class; the footprint is the concatenation of the
// member regions' point positions.
std::vector<Zone> zones(const std::vector<std::vector<int>>& classes,
                        const std::vector<StayRegion>& regions, const Trajectory& traj);

// Rewrites the segmentation as temporally annotated zone visits with
// non-empty transitions in between; local noise is dropped. Throws when a
// region is not covered by any zone.
SymbolicTrajectory symbolicTrajectory(const Segmentation& seg, const std::vector<Zone>& zones,
                                      const Trajectory& traj);

}  // namespace seqscan
