#include "seqscan/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace seqscan {

double euclideanDistance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

Trajectory::Trajectory(std::vector<TrajectoryPoint> points) : points_(std::move(points)) {
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (points_[k].index != static_cast<int>(k) + 1)
      throw std::invalid_argument("trajectory indices must be exactly 1..n");
    if (k > 0 && points_[k].timestamp <= points_[k - 1].timestamp)
      throw std::invalid_argument("trajectory timestamps must strictly increase");
  }
}

const TrajectoryPoint& Trajectory::at(int index) const {
  if (index < 1 || index > size()) throw std::invalid_argument("trajectory index out of range");
  return points_[static_cast<std::size_t>(index) - 1];
}

double Trajectory::temporalDistance(int i, int j) const {
  return std::abs(at(j).timestamp - at(i).timestamp);
}

double Trajectory::spatialDistance(int i, int j, const DistanceMetric& metric) const {
  const Vec2& a = at(i).position;
  const Vec2& b = at(j).position;
  return metric ? metric(a, b) : euclideanDistance(a, b);
}

double Trajectory::totalDuration() const {
  if (size() < 2) return 0.0;
  return points_.back().timestamp - points_.front().timestamp;
}

Interval::Interval(int lo_, int hi_) : lo(lo_), hi(hi_) {
  if (lo > hi) throw std::invalid_argument("interval lo must not exceed hi");
}

Segment canonicalize(std::vector<Interval> intervals) {
  Segment seg;
  if (intervals.empty()) return seg;
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  seg.intervals_.push_back(intervals.front());
  for (std::size_t k = 1; k < intervals.size(); ++k) {
    Interval& tail = seg.intervals_.back();
    const Interval& next = intervals[k];
    if (next.lo <= tail.hi + 1)
      tail.hi = std::max(tail.hi, next.hi);
    else
      seg.intervals_.push_back(next);
  }
  return seg;
}

Segment Segment::fromSortedIndices(const std::set<int>& indices) {
  std::vector<Interval> runs;
  auto it = indices.begin();
  while (it != indices.end()) {
    int lo = *it;
    int hi = lo;
    ++it;
    while (it != indices.end() && *it == hi + 1) {
      hi = *it;
      ++it;
    }
    runs.emplace_back(lo, hi);
  }
  return canonicalize(std::move(runs));
}

Segment Segment::fromInterval(const Interval& iv) { return canonicalize({iv}); }

int Segment::pointCount() const {
  int n = 0;
  for (const Interval& iv : intervals_) n += iv.length();
  return n;
}

int Segment::first() const {
  if (empty()) throw std::invalid_argument("empty segment has no first index");
  return intervals_.front().lo;
}

int Segment::last() const {
  if (empty()) throw std::invalid_argument("empty segment has no last index");
  return intervals_.back().hi;
}

bool Segment::contains(int index) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), index,
                             [](int v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  return std::prev(it)->contains(index);
}

std::vector<int> Segment::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(pointCount()));
  for (const Interval& iv : intervals_)
    for (int i = iv.lo; i <= iv.hi; ++i) out.push_back(i);
  return out;
}

std::string Segment::toString() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    if (k > 0) os << "u";
    os << "[" << intervals_[k].lo << "," << intervals_[k].hi << "]";
  }
  if (intervals_.empty()) os << "[]";
  return os.str();
}

Params::Params(double eps_, int minPts_, double presence_)
    : eps(eps_), minPts(minPts_), presence(presence_) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (minPts < 1) throw std::invalid_argument("minPts must be >= 1");
  if (!(presence >= 0.0)) throw std::invalid_argument("presence must be >= 0");
}

namespace {

void checkSegment(const Segment& seg, const Trajectory& traj) {
  if (seg.empty()) throw std::invalid_argument("segment is empty");
  if (seg.first() < 1 || seg.last() > traj.size())
    throw std::invalid_argument("segment indices out of trajectory range");
}

}  // namespace

double duration(const Segment& seg, const Trajectory& traj) {
  checkSegment(seg, traj);
  return traj.at(seg.last()).timestamp - traj.at(seg.first()).timestamp;
}

double presence(const Segment& seg, const Trajectory& traj) {
  checkSegment(seg, traj);
  double sum = 0.0;
  for (const Interval& iv : seg.intervals())
    sum += traj.at(iv.hi).timestamp - traj.at(iv.lo).timestamp;
  return sum;
}

}  // namespace seqscan
