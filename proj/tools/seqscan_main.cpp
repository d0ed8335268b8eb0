// Command-line frontend for the trajectory segmentation library.
//
// Coordinates are taken as pre-projected planar meters; no CRS handling is
// performed here or anywhere below.

#include "seqscan/analysis.hpp"
#include "seqscan/evaluation.hpp"
#include "seqscan/fixtures.hpp"
#include "seqscan/io.hpp"
#include "seqscan/periodicity.hpp"
#include "seqscan/segmentation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

namespace {

using namespace seqscan;

struct DurationOpt {
  std::string text;

  double seconds() const { return parseDurationSeconds(text); }
  bool set() const { return !text.empty(); }

  // Display unit implied by the literal's suffix.
  std::pair<std::string, double> displayUnit() const {
    if (text.find('d') != std::string::npos) return {"d", 86400.0};
    if (text.find('h') != std::string::npos) return {"h", 3600.0};
    if (text.find("min") != std::string::npos) return {"min", 60.0};
    return {"s", 1.0};
  }
};

std::string formatNum(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Writes either to the given path or to stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct CommonOpts {
  std::string input;
  double eps = 0.0;
  int minPts = 0;
  DurationOpt presence;
};

void addCommon(CLI::App* cmd, CommonOpts& opts, bool withPresence) {
  cmd->add_option("-i,--input", opts.input, "input CSV (header id,t,x,y[,label]); - for stdin")->required();
  cmd->add_option("--eps", opts.eps, "neighborhood radius in meters")->required();
  cmd->add_option("--min-pts", opts.minPts, "minimum neighborhood population")->required();
  if (withPresence)
    cmd->add_option("--presence", opts.presence.text,
                    "minimum presence, e.g. 3600, 30min, 12h, 20d")
        ->required();
}

Params paramsOf(const CommonOpts& opts) {
  return Params(opts.eps, opts.minPts, opts.presence.set() ? opts.presence.seconds() : 0.0);
}

int runSegment(const CommonOpts& opts, const std::string& outPrefix) {
  ParsedTrajectory data = parseTrajectoryFile(opts.input);
  Segmentation seg = scan(data.trajectory, paramsOf(opts));

  auto [unit, unitSeconds] = opts.presence.displayUnit();
  writeRegionsCsv(std::cout, seg, unit, unitSeconds);
  if (!outPrefix.empty()) {
    std::ofstream points(outPrefix + "_points.csv");
    std::ofstream regions(outPrefix + "_regions.csv");
    std::ofstream geo(outPrefix + "_regions.geojson");
    if (!points || !regions || !geo)
      throw std::runtime_error("cannot write outputs with prefix " + outPrefix);
    writePointsCsv(points, seg, data.trajectory);
    writeRegionsCsv(regions, seg, unit, unitSeconds);
    writeGeoJson(geo, seg, data.trajectory);
  }
  return 0;
}

int runSweep(const CommonOpts& opts, const DurationOpt& theta, const std::string& outPath) {
  ParsedTrajectory data = parseTrajectoryFile(opts.input);
  double thetaSeconds =
      theta.set() ? theta.seconds() : data.trajectory.totalDuration() / 1000.0;
  FTable table = presenceSweep(data.trajectory, opts.eps, opts.minPts, thetaSeconds);

  OutputTarget out(outPath);
  out.stream() << "delta_lo,delta_hi,regions\n";
  for (const FTableRow& row : table.rows)
    out.stream() << row.deltaLo << ',' << row.deltaHi << ',' << row.regionCount << '\n';
  return 0;
}

struct ZoneArtifacts {
  Segmentation seg;
  std::vector<std::vector<int>> classes;
  std::vector<Zone> zoneList;
  SymbolicTrajectory symbolic;
};

ZoneArtifacts buildZones(const ParsedTrajectory& data, const CommonOpts& opts, double psi) {
  ZoneArtifacts art{scan(data.trajectory, paramsOf(opts)), {}, {}, {}};
  art.classes = similarityClasses(art.seg.regions, psi, data.trajectory, paramsOf(opts));
  art.zoneList = zones(art.classes, art.seg.regions, data.trajectory);
  art.symbolic = symbolicTrajectory(art.seg, art.zoneList, data.trajectory);
  return art;
}

int runZones(const CommonOpts& opts, double psi, const std::string& outPrefix) {
  ParsedTrajectory data = parseTrajectoryFile(opts.input);
  ZoneArtifacts art = buildZones(data, opts, psi);
  const Params params = paramsOf(opts);

  std::cout << "zone,regions\n";
  for (const Zone& z : art.zoneList) {
    std::cout << z.id << ',';
    for (std::size_t k = 0; k < z.regionIds.size(); ++k)
      std::cout << (k ? " " : "") << z.regionIds[k];
    std::cout << '\n';
  }

  if (!outPrefix.empty()) {
    std::ofstream simOut(outPrefix + "_similarity.csv");
    std::ofstream zoneOut(outPrefix + "_zones.csv");
    std::ofstream symOut(outPrefix + "_symbolic.csv");
    if (!simOut || !zoneOut || !symOut)
      throw std::runtime_error("cannot write outputs with prefix " + outPrefix);

    simOut << "s1,s2,sim\n";
    for (const StayRegion& a : art.seg.regions)
      for (const StayRegion& b : art.seg.regions)
        if (a.id < b.id)
          simOut << a.id << ',' << b.id << ','
                 << formatNum(sim(a, b, data.trajectory, params)) << '\n';

    zoneOut << "region,zone\n";
    for (const Zone& z : art.zoneList)
      for (int rid : z.regionIds) zoneOut << rid << ',' << z.id << '\n';

    symOut << "start,end,symbol\n";
    for (const SymbolicEntry& e : art.symbolic.entries)
      symOut << e.start << ',' << e.end << ','
             << (e.symbol == kTransitionSymbol ? std::string("T") : std::to_string(e.symbol))
             << '\n';
  }
  return 0;
}

int runPeriod(const CommonOpts& opts, double psi, const DurationOpt& resolution,
              const std::string& mode, int zoneId, double minConfidence,
              const std::string& outPath) {
  ParsedTrajectory data = parseTrajectoryFile(opts.input);
  ZoneArtifacts art = buildZones(data, opts, psi);

  SymbolSeries series = mode == "zone"
                            ? buildZoneSeries(art.symbolic, zoneId, resolution.seconds())
                            : buildFullSeries(art.symbolic, resolution.seconds());
  PeriodReport report = warp(series);

  OutputTarget out(outPath);
  out.stream() << "period_slots,confidence\n";
  for (const PeriodRow& row : report.rows)
    out.stream() << row.period << ',' << formatNum(row.confidence) << '\n';

  auto best = bestPeriod(report, minConfidence);
  if (best) {
    auto [unit, unitSeconds] = resolution.displayUnit();
    std::cout << "best period: " << best->period << " slots ("
              << formatNum(best->period * series.resolution / unitSeconds) << unit
              << "), confidence " << formatNum(best->confidence) << '\n';
  } else {
    std::cout << "best period: none at confidence >= " << formatNum(minConfidence) << '\n';
  }
  return 0;
}

int runEval(const CommonOpts& opts) {
  ParsedTrajectory data = parseTrajectoryFile(opts.input);
  if (!data.labels) throw std::invalid_argument("eval requires a labeled input file");
  Segmentation seg = scan(data.trajectory, paramsOf(opts));

  PurityResult purity = hPurity(*data.labels, seg);
  PairwiseResult with = pairwiseF(*data.labels, seg, NoiseMode::WithLocalNoise);
  PairwiseResult without = pairwiseF(*data.labels, seg, NoiseMode::NoLocalNoise);

  std::cout << "metric,value\n";
  std::cout << "purity," << formatNum(purity.purity) << '\n';
  std::cout << "inv_purity," << formatNum(purity.invPurity) << '\n';
  std::cout << "h_purity," << formatNum(purity.hPurity) << '\n';
  std::cout << "pairwise_precision_with_noise," << formatNum(with.precision) << '\n';
  std::cout << "pairwise_recall_with_noise," << formatNum(with.recall) << '\n';
  std::cout << "pairwise_f_with_noise," << formatNum(with.f) << '\n';
  std::cout << "pairwise_precision_no_noise," << formatNum(without.precision) << '\n';
  std::cout << "pairwise_recall_no_noise," << formatNum(without.recall) << '\n';
  std::cout << "pairwise_f_no_noise," << formatNum(without.f) << '\n';
  std::cout << "diff," << diff(*data.labels, seg) << '\n';
  return 0;
}

void writeLabeledCsv(std::ostream& out, const Trajectory& traj, const Labeling* labels) {
  out << (labels ? "id,t,x,y,label\n" : "id,t,x,y\n");
  for (int i = 1; i <= traj.size(); ++i) {
    const TrajectoryPoint& p = traj.at(i);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g", i, p.timestamp, p.position.x(),
                  p.position.y());
    out << buf;
    if (labels) {
      const Label& l = labels->at(i);
      switch (l.kind) {
        case Label::Kind::Cluster: out << ",C" << l.id; break;
        case Label::Kind::LocalNoise: out << ",N" << l.id; break;
        case Label::Kind::Transition: out << ",T"; break;
      }
    }
    out << '\n';
  }
}

int runResample(const std::string& input, const DurationOpt& interval, const std::string& outPath) {
  ParsedTrajectory data = parseTrajectoryFile(input);
  std::vector<int> kept = resampleIndices(data.trajectory, interval.seconds());

  std::vector<TrajectoryPoint> points;
  Labeling labels;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    points.push_back({static_cast<int>(k) + 1, data.trajectory.at(kept[k]).position,
                      data.trajectory.at(kept[k]).timestamp});
    if (data.labels) labels.perPoint.push_back(data.labels->at(kept[k]));
  }
  Trajectory decimated(std::move(points));

  OutputTarget out(outPath);
  writeLabeledCsv(out.stream(), decimated, data.labels ? &labels : nullptr);
  return 0;
}

int runSynth(const FixtureSpec& spec, const std::string& outPath) {
  Fixture fixture = generateFixture(spec);
  OutputTarget out(outPath);
  writeLabeledCsv(out.stream(), fixture.trajectory, &fixture.labels);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster-based trajectory segmentation with a presence-aware noise model"};
  app.require_subcommand(1);

  CommonOpts segmentOpts, sweepOpts, zonesOpts, periodOpts, evalOpts;
  std::string segmentPrefix, zonesPrefix;
  std::string sweepOut, periodOut, resampleOut, synthOut;
  DurationOpt theta, resolution, resampleInterval;
  double zonesPsi = 0.0, periodPsi = 0.0, minConfidence = 0.0;
  std::string periodMode = "full";
  int periodZone = 1;
  std::string resampleInput;
  FixtureSpec synthSpec;
  std::string synthDwell = "3600", synthInterval = "60";

  CLI::App* segment = app.add_subcommand("segment", "split a trajectory into stay regions");
  addCommon(segment, segmentOpts, true);
  segment->add_option("--out-prefix", segmentPrefix, "write <prefix>_points.csv, _regions.csv, _regions.geojson");

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate region count against the presence threshold");
  addCommon(sweep, sweepOpts, false);
  sweep->add_option("--theta", theta.text, "sweep advance step (default: trajectory duration / 1000)");
  sweep->add_option("--out", sweepOut, "output CSV path (default stdout)");

  CLI::App* zonesCmd = app.add_subcommand("zones", "group similar stay regions into zones");
  addCommon(zonesCmd, zonesOpts, true);
  zonesCmd->add_option("--psi", zonesPsi, "similarity threshold in [0,1]")->default_val(0.0);
  zonesCmd->add_option("--out-prefix", zonesPrefix, "write <prefix>_similarity.csv, _zones.csv, _symbolic.csv");

  CLI::App* period = app.add_subcommand("period", "detect periodic zone visits");
  addCommon(period, periodOpts, true);
  period->add_option("--psi", periodPsi, "similarity threshold in [0,1]")->default_val(0.0);
  period->add_option("--resolution", resolution.text, "slot width, e.g. 1d, 7d")->required();
  period->add_option("--mode", periodMode, "series mode: full | zone")
      ->check(CLI::IsMember({"full", "zone"}));
  period->add_option("--zone", periodZone, "zone id for --mode zone");
  period->add_option("--min-confidence", minConfidence, "minimum confidence for the best period");
  period->add_option("--out", periodOut, "report CSV path (default stdout)");

  CLI::App* eval = app.add_subcommand("eval", "score a segmentation against labeled ground truth");
  addCommon(eval, evalOpts, true);

  CLI::App* resampleCmd = app.add_subcommand("resample", "decimate to a coarser sampling interval");
  resampleCmd->add_option("-i,--input", resampleInput, "input CSV")->required();
  resampleCmd->add_option("--interval", resampleInterval.text, "target interval, e.g. 4h")->required();
  resampleCmd->add_option("--out", resampleOut, "output CSV path (default stdout)");

  CLI::App* synth = app.add_subcommand("synth", "generate a labeled synthetic trajectory");
  synth->add_option("--clusters", synthSpec.clusterCount, "number of dwells")->default_val(2);
  synth->add_option("--points-per-cluster", synthSpec.pointsPerCluster)->default_val(30);
  synth->add_option("--radius", synthSpec.clusterRadius, "dwell scatter radius (m)")->default_val(20.0);
  synth->add_option("--spacing", synthSpec.interClusterDistance, "distance between dwell centers (m)")
      ->required();
  synth->add_option("--dwell", synthDwell, "time spent in each dwell, e.g. 2h");
  synth->add_option("--interval", synthInterval, "transition sampling interval, e.g. 60");
  synth->add_option("--noise-rate", synthSpec.localNoiseRate, "local-noise fraction in [0,1)")
      ->default_val(0.0);
  synth->add_option("--transition-points", synthSpec.transitionPoints)->default_val(5);
  synth->add_option("--eps", synthSpec.eps, "clustering radius the fixture separates at")->required();
  synth->add_option("--seed", synthSpec.seed)->default_val(1);
  synth->add_option("--out", synthOut, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);

    if (segment->parsed()) return runSegment(segmentOpts, segmentPrefix);
    if (sweep->parsed()) return runSweep(sweepOpts, theta, sweepOut);
    if (zonesCmd->parsed()) return runZones(zonesOpts, zonesPsi, zonesPrefix);
    if (period->parsed())
      return runPeriod(periodOpts, periodPsi, resolution, periodMode, periodZone, minConfidence,
                       periodOut);
    if (eval->parsed()) return runEval(evalOpts);
    if (resampleCmd->parsed()) return runResample(resampleInput, resampleInterval, resampleOut);
    if (synth->parsed()) {
      synthSpec.dwell = parseDurationSeconds(synthDwell);
      synthSpec.samplingInterval = parseDurationSeconds(synthInterval);
      return runSynth(synthSpec, synthOut);
    }
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const seqscan::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
