#pragma once

#include "seqscan/analysis.hpp"

#include <optional>
#include <vector>

namespace seqscan {

// Fixed-resolution discrete series derived from a symbolic trajectory.
struct SymbolSeries {
  std::vector<int> symbols;
  double resolution = 0.0;  // seconds per slot
};

struct PeriodRow {
  int period = 0;           // slots
  double confidence = 0.0;  // in [0, 1]
};

struct PeriodReport {
  std::vector<PeriodRow> rows;  // one row per period in [1, n/2]
};

// Binary series for one zone over the span from its first to its last visit:
// 1 for every slot the object is inside the zone at any instant, 0 otherwise.
// Slots are aligned to the span start; the trailing slot is right-closed.
SymbolSeries buildZoneSeries(const SymbolicTrajectory& st, int zoneId, double resolution);

// One symbol per slot over the whole symbolic extent: the zone occupying the
// slot (a zone wins over a transition sharing the slot; among zones the one
// covering more of it, earliest first on ties) or the transition symbol.
SymbolSeries buildFullSeries(const SymbolicTrajectory& st, double resolution);

// Dynamic time warping cost with the 0/1 symbol mismatch local cost. For
// equal-length inputs of length m the cost lies in [0, m].
double dtw(const SymbolSeries& a, const SymbolSeries& b);

// Shift-and-compare period scoring: for each candidate period p the prefix
// of length n-p is compared with the p-shifted suffix, and the confidence is
// 1 - cost/(n-p), clamped into [0, 1].
PeriodReport warp(const SymbolSeries& series);

// Among rows whose confidence reaches minConfidence, the row of maximum
// confidence with the smallest period; nullopt when none qualifies.
std::optional<PeriodRow> bestPeriod(const PeriodReport& report, double minConfidence);

}  // namespace seqscan
