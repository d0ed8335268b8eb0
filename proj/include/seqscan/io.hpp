#pragma once

#include "seqscan/core.hpp"
#include "seqscan/evaluation.hpp"
#include "seqscan/segmentation.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace seqscan {

// CSV/label failure with the 1-based line it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

struct ParsedTrajectory {
  Trajectory trajectory;
  std::optional<Labeling> labels;
};

// Reads a header-bearing CSV with required columns t,x,y and optional
// id (or index) and label (or class/region). Timestamps are epoch seconds
// or ISO-8601, auto-detected. Rows are sorted by time; duplicate timestamps,
// non-numeric fields and unknown label tokens raise ParseError. Labels use
// C<k> for cluster members, N<k> for local noise and T for transitions.
ParsedTrajectory parseTrajectory(std::istream& in);
ParsedTrajectory parseTrajectoryFile(const std::string& path);

// "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z]" to epoch seconds.
std::optional<double> parseIso8601(const std::string& text);

// Duration literals like "3600", "45s", "30min", "12h", "20d" to seconds.
double parseDurationSeconds(const std::string& text);

// Per-point CSV: index,t,x,y,class,region with class in {C,N,T}. The file
// re-parses through parseTrajectory with classes intact.
void writePointsCsv(std::ostream& out, const Segmentation& seg, const Trajectory& traj);

// Region summary: id, index extent, point count, presence and duration in
// the requested display unit, seed extent.
void writeRegionsCsv(std::ostream& out, const Segmentation& seg,
                     const std::string& unitSuffix, double unitSeconds);

// RFC 7946 FeatureCollection with one convex-hull geometry per region,
// numbered in path order through the region_id property. Degenerate regions
// emit Point or LineString geometries.
void writeGeoJson(std::ostream& out, const Segmentation& seg, const Trajectory& traj);

}  // namespace seqscan
