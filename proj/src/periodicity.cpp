#include "seqscan/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace seqscan {

namespace {

struct Span {
  double start = 0.0;
  double end = 0.0;
};

int slotCount(const Span& span, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be > 0");
  double length = span.end - span.start;
  if (resolution > length)
    throw std::invalid_argument("resolution exceeds the span of the symbolic trajectory");
  int n = static_cast<int>(std::ceil(length / resolution));
  if (n < 2) throw std::invalid_argument("resolution too coarse: series needs at least 2 slots");
  return n;
}

// Overlap between a closed entry [e0, e1] and slot s of the span; the last
// slot is right-closed so the final instant belongs to a slot.
double slotOverlap(const SymbolicEntry& e, const Span& span, double resolution, int s, int n) {
  double lo = span.start + s * resolution;
  double hi = span.start + (s + 1) * resolution;
  bool lastSlot = (s == n - 1);
  if (e.end < lo || e.start > hi || (!lastSlot && e.start >= hi)) return -1.0;
  return std::min(e.end, hi) - std::max(e.start, lo);  // may be 0 for a touch
}

}  // namespace

SymbolSeries buildZoneSeries(const SymbolicTrajectory& st, int zoneId, double resolution) {
  Span span;
  bool seen = false;
  for (const SymbolicEntry& e : st.entries) {
    if (e.symbol != zoneId) continue;
    if (!seen) {
      span = {e.start, e.end};
      seen = true;
    } else {
      span.start = std::min(span.start, e.start);
      span.end = std::max(span.end, e.end);
    }
  }
  if (!seen) throw std::invalid_argument("zone has no visits in the symbolic trajectory");

  const int n = slotCount(span, resolution);
  SymbolSeries series{std::vector<int>(static_cast<std::size_t>(n), 0), resolution};
  for (const SymbolicEntry& e : st.entries) {
    if (e.symbol != zoneId) continue;
    for (int s = 0; s < n; ++s)
      if (slotOverlap(e, span, resolution, s, n) >= 0.0) series.symbols[static_cast<std::size_t>(s)] = 1;
  }
  return series;
}

SymbolSeries buildFullSeries(const SymbolicTrajectory& st, double resolution) {
  if (st.entries.empty()) throw std::invalid_argument("empty symbolic trajectory");
  Span span{st.entries.front().start, st.entries.back().end};
  const int n = slotCount(span, resolution);
  SymbolSeries series{std::vector<int>(static_cast<std::size_t>(n), kTransitionSymbol), resolution};

  for (int s = 0; s < n; ++s) {
    double bestCover = -1.0;
    int symbol = kTransitionSymbol;
    for (const SymbolicEntry& e : st.entries) {
      if (e.symbol == kTransitionSymbol) continue;
      double cover = slotOverlap(e, span, resolution, s, n);
      if (cover >= 0.0 && cover > bestCover) {
        bestCover = cover;
        symbol = e.symbol;
      }
    }
    series.symbols[static_cast<std::size_t>(s)] = symbol;
  }
  return series;
}

double dtw(const SymbolSeries& a, const SymbolSeries& b) {
  if (a.symbols.empty() || b.symbols.empty()) throw std::invalid_argument("dtw input is empty");
  if (a.resolution != b.resolution)
    throw std::invalid_argument("dtw inputs have different resolutions");

  const std::size_t n = a.symbols.size();
  const std::size_t m = b.symbols.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m + 1, kInf), cur(m + 1, kInf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = kInf;
    for (std::size_t j = 1; j <= m; ++j) {
      double d = a.symbols[i - 1] == b.symbols[j - 1] ? 0.0 : 1.0;
      cur[j] = d + std::min({prev[j], cur[j - 1], prev[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

PeriodReport warp(const SymbolSeries& series) {
  const int n = static_cast<int>(series.symbols.size());
  if (n < 4) throw std::invalid_argument("series too short for period analysis");

  PeriodReport report;
  for (int p = 1; p <= n / 2; ++p) {
    SymbolSeries prefix{{series.symbols.begin(), series.symbols.end() - p}, series.resolution};
    SymbolSeries shifted{{series.symbols.begin() + p, series.symbols.end()}, series.resolution};
    double cost = dtw(prefix, shifted);
    double confidence = 1.0 - cost / static_cast<double>(n - p);
    confidence = std::clamp(confidence, 0.0, 1.0);
    report.rows.push_back({p, confidence});
  }
  return report;
}

std::optional<PeriodRow> bestPeriod(const PeriodReport& report, double minConfidence) {
  std::optional<PeriodRow> best;
  for (const PeriodRow& row : report.rows) {
    if (row.confidence < minConfidence) continue;
    if (!best || row.confidence > best->confidence) best = row;  // ties keep the smaller period
  }
  return best;
}

}  // namespace seqscan
