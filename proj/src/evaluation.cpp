#include "seqscan/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace seqscan {

Labeling toLabeling(const Segmentation& seg) {
  Labeling out;
  out.perPoint.reserve(seg.classes.size());
  for (const PointClass& pc : seg.classes) {
    switch (pc.kind) {
      case PointClass::Kind::Member:
        out.perPoint.push_back({Label::Kind::Cluster, pc.id});
        break;
      case PointClass::Kind::LocalNoise:
        out.perPoint.push_back({Label::Kind::LocalNoise, pc.id});
        break;
      case PointClass::Kind::Transition:
        out.perPoint.push_back({Label::Kind::Transition, 0});
        break;
    }
  }
  return out;
}

namespace {

void checkSameLength(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("labelings cover different trajectories");
}

Labeling absorbLocalNoise(const Labeling& in) {
  Labeling out = in;
  for (Label& l : out.perPoint)
    if (l.kind == Label::Kind::LocalNoise) l.kind = Label::Kind::Cluster;
  return out;
}

// cluster id -> set of clustered point indices
std::map<int, std::set<int>> clustersOf(const Labeling& l) {
  std::map<int, std::set<int>> out;
  for (int i = 1; i <= l.size(); ++i)
    if (l.at(i).kind == Label::Kind::Cluster) out[l.at(i).id].insert(i);
  return out;
}

long long pairs(long long k) { return k * (k - 1) / 2; }

double ratioOrVacuous(long long num, long long den) {
  // No positive pair on the denominator side means nothing was claimed, so
  // the score is vacuously perfect.
  if (den == 0) return 1.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double a, double b) {
  if (a + b == 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

}  // namespace

PurityResult hPurity(const Labeling& truth, const Labeling& result) {
  checkSameLength(truth, result);
  auto truthClusters = clustersOf(truth);
  auto resultClusters = clustersOf(result);

  long long ns = 0, nr = 0;
  for (const auto& [id, pts] : resultClusters) ns += static_cast<long long>(pts.size());
  for (const auto& [id, pts] : truthClusters) nr += static_cast<long long>(pts.size());
  if (ns == 0 || nr == 0) throw std::domain_error("purity undefined: a side has no clustered point");

  auto overlap = [](const std::set<int>& a, const std::set<int>& b) {
    long long n = 0;
    for (int x : a)
      if (b.count(x)) ++n;
    return n;
  };

  long long purityNum = 0;
  for (const auto& [sid, spts] : resultClusters) {
    long long best = 0;
    for (const auto& [rid, rpts] : truthClusters) best = std::max(best, overlap(spts, rpts));
    purityNum += best;
  }
  long long invNum = 0;
  for (const auto& [rid, rpts] : truthClusters) {
    long long best = 0;
    for (const auto& [sid, spts] : resultClusters) best = std::max(best, overlap(rpts, spts));
    invNum += best;
  }

  PurityResult res;
  res.purity = static_cast<double>(purityNum) / static_cast<double>(ns);
  res.invPurity = static_cast<double>(invNum) / static_cast<double>(nr);
  res.hPurity = harmonic(res.purity, res.invPurity);
  return res;
}

PurityResult hPurity(const Labeling& truth, const Segmentation& result) {
  return hPurity(truth, toLabeling(result));
}

PairwiseResult pairwiseF(const Labeling& truthIn, const Labeling& resultIn, NoiseMode mode) {
  checkSameLength(truthIn, resultIn);
  const Labeling truth = mode == NoiseMode::NoLocalNoise ? absorbLocalNoise(truthIn) : truthIn;
  const Labeling result = mode == NoiseMode::NoLocalNoise ? absorbLocalNoise(resultIn) : resultIn;

  // Pairs are counted over points clustered on both sides via the
  // contingency table: same-in-both, same-in-result-only, same-in-truth-only.
  std::map<std::pair<int, int>, long long> cell;  // (truth id, result id) -> count
  std::map<int, long long> truthSide, resultSide;
  for (int i = 1; i <= truth.size(); ++i) {
    if (truth.at(i).kind != Label::Kind::Cluster || result.at(i).kind != Label::Kind::Cluster)
      continue;
    ++cell[{truth.at(i).id, result.at(i).id}];
    ++truthSide[truth.at(i).id];
    ++resultSide[result.at(i).id];
  }

  PairwiseResult res;
  long long sameBoth = 0, sameResult = 0, sameTruth = 0;
  for (const auto& [key, n] : cell) sameBoth += pairs(n);
  for (const auto& [id, n] : resultSide) sameResult += pairs(n);
  for (const auto& [id, n] : truthSide) sameTruth += pairs(n);

  res.tp = sameBoth;
  res.fp = sameResult - sameBoth;
  res.fn = sameTruth - sameBoth;
  res.precision = ratioOrVacuous(res.tp, res.tp + res.fp);
  res.recall = ratioOrVacuous(res.tp, res.tp + res.fn);
  res.f = harmonic(res.precision, res.recall);
  return res;
}

PairwiseResult pairwiseF(const Labeling& truth, const Segmentation& result, NoiseMode mode) {
  return pairwiseF(truth, toLabeling(result), mode);
}

int diff(const Labeling& truth, const Labeling& result) {
  checkSameLength(truth, result);
  return std::abs(static_cast<int>(clustersOf(result).size()) -
                  static_cast<int>(clustersOf(truth).size()));
}

int diff(const Labeling& truth, const Segmentation& result) {
  return diff(truth, toLabeling(result));
}

std::vector<int> resampleIndices(const Trajectory& traj, double targetInterval) {
  if (!(targetInterval > 0.0)) throw std::invalid_argument("target interval must be > 0");
  const int n = traj.size();
  if (n < 2) throw std::invalid_argument("trajectory too short to resample");

  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(n) - 1);
  for (int i = 2; i <= n; ++i) gaps.push_back(traj.at(i).timestamp - traj.at(i - 1).timestamp);
  std::sort(gaps.begin(), gaps.end());
  double median = gaps[gaps.size() / 2];
  if (targetInterval < median)
    throw std::invalid_argument("target interval undercuts the native sampling interval");

  const double t0 = traj.at(1).timestamp;
  const double span = traj.at(n).timestamp - t0;
  const int gridCount = static_cast<int>(std::floor(span / targetInterval)) + 1;

  std::vector<bool> retained(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> kept;
  for (int k = 0; k < gridCount; ++k) {
    const double g = t0 + k * targetInterval;
    int lo = 1, hi = n;  // first point with timestamp >= g
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (traj.at(mid).timestamp < g)
        lo = mid + 1;
      else
        hi = mid;
    }
    // Scan outward from the insertion position for the nearest free point;
    // ties go to the earlier one.
    int best = -1;
    double bestDist = 0.0;
    int left = lo - 1, right = lo;
    while (left >= 1 || right <= n) {
      double dl = left >= 1 ? g - traj.at(left).timestamp : std::numeric_limits<double>::infinity();
      double dr = right <= n ? traj.at(right).timestamp - g : std::numeric_limits<double>::infinity();
      int cand = dl <= dr ? left : right;
      double dist = std::min(dl, dr);
      if (best >= 0 && dist > bestDist) break;
      if (!retained[static_cast<std::size_t>(cand)] && (best < 0 || dist < bestDist ||
                                                        (dist == bestDist && cand < best))) {
        best = cand;
        bestDist = dist;
      }
      if (cand == left)
        --left;
      else
        ++right;
    }
    if (best >= 1) {
      retained[static_cast<std::size_t>(best)] = true;
      kept.push_back(best);
    }
  }

  std::sort(kept.begin(), kept.end());
  if (kept.size() < 2) throw std::invalid_argument("resampling left fewer than 2 points");
  return kept;
}

Trajectory resample(const Trajectory& traj, double targetInterval) {
  std::vector<int> kept = resampleIndices(traj, targetInterval);
  std::vector<TrajectoryPoint> points;
  points.reserve(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k)
    points.push_back({static_cast<int>(k) + 1, traj.at(kept[k]).position, traj.at(kept[k]).timestamp});
  return Trajectory(std::move(points));
}

}  // namespace seqscan
