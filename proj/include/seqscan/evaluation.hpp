#pragma once

#include "seqscan/core.hpp"
#include "seqscan/segmentation.hpp"

#include <vector>

namespace seqscan {

// Ground-truth style class of a single point.
struct Label {
  enum class Kind { Cluster, LocalNoise, Transition };

  Kind kind = Kind::Transition;
  int id = 0;  // cluster id for Cluster/LocalNoise

  bool operator==(const Label& o) const { return kind == o.kind && id == o.id; }
};

// Per-point labeling covering every index of the associated trajectory.
struct Labeling {
  std::vector<Label> perPoint;

  int size() const { return static_cast<int>(perPoint.size()); }
  const Label& at(int index) const { return perPoint.at(static_cast<std::size_t>(index) - 1); }
};

// The segmentation output seen as a labeling.
Labeling toLabeling(const Segmentation& seg);

enum class NoiseMode { WithLocalNoise, NoLocalNoise };

struct PurityResult {
  double purity = 0.0;
  double invPurity = 0.0;
  double hPurity = 0.0;
};

struct PairwiseResult {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

// Set-matching quality: purity sums, over result clusters, the best overlap
// with a truth cluster (normalized by the result's clustered points);
// inverse purity swaps the roles; hPurity is their harmonic mean.
// Intersections count clustered points only. Throws std::domain_error when
// either side has no clustered point.
PurityResult hPurity(const Labeling& truth, const Labeling& result);
PurityResult hPurity(const Labeling& truth, const Segmentation& result);

// Counting-pairs quality over unordered point pairs; a point unclustered on
// either side pairs with nothing on that side. NoLocalNoise first reassigns
// every local-noise point, on both sides, to its enclosing cluster.
PairwiseResult pairwiseF(const Labeling& truth, const Labeling& result, NoiseMode mode);
PairwiseResult pairwiseF(const Labeling& truth, const Segmentation& result, NoiseMode mode);

// Absolute difference of the cluster counts.
int diff(const Labeling& truth, const Labeling& result);
int diff(const Labeling& truth, const Segmentation& result);

// Keeps, for each grid instant k*targetInterval from the first timestamp,
// the nearest not-yet-retained point; renumbers indices 1..m. Throws when
// the target interval undercuts the native median interval or fewer than
// two points survive.
Trajectory resample(const Trajectory& traj, double targetInterval);

// Same decimation, returning the retained original indices (ascending).
std::vector<int> resampleIndices(const Trajectory& traj, double targetInterval);

}  // namespace seqscan
