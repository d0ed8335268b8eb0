#pragma once

#include <Eigen/Core>

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace seqscan {

using Vec2 = Eigen::Vector2d;

// Pluggable point-to-point distance. Euclidean by default; any symmetric
// metric can be supplied where a DistanceMetric parameter is accepted.
// Grid-accelerated neighborhood queries are only valid for the Euclidean
// metric, so a custom metric switches the engine to linear scans.
using DistanceMetric = std::function<double(const Vec2&, const Vec2&)>;

double euclideanDistance(const Vec2& a, const Vec2& b);

// One sample of a trajectory: 1-based ordinal, planar position in meters,
// timestamp in seconds on a monotone clock.
struct TrajectoryPoint {
  int index = 0;
  Vec2 position{0.0, 0.0};
  double timestamp = 0.0;
};

// Ordered sequence of samples. Indices are exactly 1..n and timestamps
// strictly increase; construction rejects anything else. Immutable after
// construction and safe to share across threads.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<TrajectoryPoint> points);

  int size() const { return static_cast<int>(points_.size()); }
  bool empty() const { return points_.empty(); }

  const TrajectoryPoint& at(int index) const;  // 1-based
  const std::vector<TrajectoryPoint>& points() const { return points_; }

  double temporalDistance(int i, int j) const;
  double spatialDistance(int i, int j, const DistanceMetric& metric = {}) const;

  // Temporal extent of the whole sequence; 0 for n <= 1.
  double totalDuration() const;

 private:
  std::vector<TrajectoryPoint> points_;
};

// Closed run of consecutive indices [lo, hi].
struct Interval {
  int lo = 0;
  int hi = 0;

  Interval() = default;
  Interval(int lo_, int hi_);

  int length() const { return hi - lo + 1; }
  bool contains(int i) const { return lo <= i && i <= hi; }
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

// Union of disjoint index intervals in canonical form: sorted by lo, pairwise
// disjoint, and adjacent runs merged (consecutive intervals [a,b],[c,d]
// satisfy c >= b+2). Build through canonicalize() or the factory helpers.
class Segment {
 public:
  Segment() = default;

  static Segment fromSortedIndices(const std::set<int>& indices);
  static Segment single(int index) { return fromInterval(Interval(index, index)); }
  static Segment fromInterval(const Interval& iv);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  int intervalCount() const { return static_cast<int>(intervals_.size()); }
  int pointCount() const;
  int first() const;  // smallest index; throws on empty segment
  int last() const;   // largest index; throws on empty segment
  Interval extent() const { return Interval(first(), last()); }
  bool contains(int index) const;
  std::vector<int> indices() const;

  bool operator==(const Segment& o) const { return intervals_ == o.intervals_; }
  std::string toString() const;  // e.g. "[1,4]u[7,7]"

 private:
  friend Segment canonicalize(std::vector<Interval> intervals);
  std::vector<Interval> intervals_;
};

// Sorts, merges overlapping and index-adjacent runs, returns the canonical
// segment. Idempotent; preserves the index set.
Segment canonicalize(std::vector<Interval> intervals);

// Clustering parameters: spatial radius, minimum neighborhood population
// (the queried point counts itself), and the minimum presence threshold in
// seconds. Validated at construction.
struct Params {
  double eps = 0.0;
  int minPts = 0;
  double presence = 0.0;

  Params(double eps_, int minPts_, double presence_);
};

// Temporal distance between the first and last point of the segment, holes
// included. 0 for a single-point segment.
double duration(const Segment& seg, const Trajectory& traj);

// Cumulative duration of the segment's connected intervals: the estimated
// residence time excluding absences. Always in [0, duration(seg)].
double presence(const Segment& seg, const Trajectory& traj);

}  // namespace seqscan
