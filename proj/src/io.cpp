#include "seqscan/io.hpp"

#include "seqscan/hull.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace seqscan {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> splitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

// days since 1970-01-01 for a civil date (proleptic Gregorian)
long long daysFromCivil(int y, int m, int d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097LL + static_cast<long long>(doe) - 719468LL;
}

std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::optional<double> parseIso8601(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0;
  double sec = 0.0;
  char sep = 0;
  int n = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%lf", &y, &mo, &d, &sep, &h, &mi, &sec);
  if (n < 7 || (sep != 'T' && sep != ' ')) return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec >= 61.0)
    return std::nullopt;
  return static_cast<double>(daysFromCivil(y, mo, d)) * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
}

double parseDurationSeconds(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) throw std::invalid_argument("empty duration");
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad duration: " + raw);
  }
  std::string unit = lower(trim(s.substr(pos)));
  double factor = 1.0;
  if (unit.empty() || unit == "s")
    factor = 1.0;
  else if (unit == "min")
    factor = 60.0;
  else if (unit == "h")
    factor = 3600.0;
  else if (unit == "d")
    factor = 86400.0;
  else
    throw std::invalid_argument("unknown duration unit: " + unit);
  return value * factor;
}

namespace {

std::optional<Label> parseLabelToken(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  if (s == "T") return Label{Label::Kind::Transition, 0};
  if ((s[0] == 'C' || s[0] == 'N') && s.size() > 1) {
    for (std::size_t k = 1; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
    int id = std::stoi(s.substr(1));
    return Label{s[0] == 'C' ? Label::Kind::Cluster : Label::Kind::LocalNoise, id};
  }
  return std::nullopt;
}

}  // namespace

ParsedTrajectory parseTrajectory(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input", 1);

  std::map<std::string, int> columns;
  {
    auto headers = splitCsvLine(line);
    for (std::size_t k = 0; k < headers.size(); ++k) columns[lower(trim(headers[k]))] = static_cast<int>(k);
  }
  auto column = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) {
      auto it = columns.find(n);
      if (it != columns.end()) return it->second;
    }
    return -1;
  };
  const int colT = column({"t", "time", "timestamp"});
  const int colX = column({"x"});
  const int colY = column({"y"});
  const int colLabel = column({"label"});
  const int colClass = column({"class"});
  const int colRegion = column({"region"});
  if (colT < 0 || colX < 0 || colY < 0)
    throw ParseError("header must contain columns t,x,y", 1);

  struct Row {
    double t, x, y;
    std::optional<Label> label;
    int line;
  };
  std::vector<Row> rows;
  bool anyLabel = false;

  int lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (trim(line).empty()) continue;
    auto fields = splitCsvLine(line);
    auto field = [&](int col) -> std::string {
      if (col < 0 || col >= static_cast<int>(fields.size())) return "";
      return trim(fields[static_cast<std::size_t>(col)]);
    };

    Row row{};
    row.line = lineNo;
    const std::string tRaw = field(colT);
    if (auto iso = parseIso8601(tRaw)) {
      row.t = *iso;
    } else {
      std::size_t pos = 0;
      try {
        row.t = std::stod(tRaw, &pos);
      } catch (const std::exception&) {
        throw ParseError("bad timestamp '" + tRaw + "'", lineNo);
      }
      if (pos != tRaw.size()) throw ParseError("bad timestamp '" + tRaw + "'", lineNo);
    }
    try {
      std::size_t px = 0, py = 0;
      const std::string xs = field(colX), ys = field(colY);
      row.x = std::stod(xs, &px);
      row.y = std::stod(ys, &py);
      if (px != xs.size() || py != ys.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw ParseError("bad coordinate", lineNo);
    }

    std::string labelToken = field(colLabel);
    if (labelToken.empty() && colClass >= 0) {
      // Reassemble a label from the class/region pair of the per-point output.
      std::string cls = field(colClass);
      std::string region = field(colRegion);
      if (cls == "T")
        labelToken = "T";
      else if (!cls.empty())
        labelToken = cls + region;
    }
    if (!labelToken.empty()) {
      auto label = parseLabelToken(labelToken);
      if (!label) throw ParseError("unknown label token '" + labelToken + "'", lineNo);
      row.label = label;
      anyLabel = true;
    }
    rows.push_back(row);
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].t == rows[k - 1].t)
      throw ParseError("duplicate timestamp", rows[k].line);

  std::vector<TrajectoryPoint> points;
  points.reserve(rows.size());
  Labeling labels;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    points.push_back({static_cast<int>(k) + 1, Vec2(rows[k].x, rows[k].y), rows[k].t});
    if (anyLabel) {
      if (!rows[k].label) throw ParseError("missing label", rows[k].line);
      labels.perPoint.push_back(*rows[k].label);
    }
  }

  ParsedTrajectory out{Trajectory(std::move(points)), std::nullopt};
  if (anyLabel) out.labels = std::move(labels);
  return out;
}

ParsedTrajectory parseTrajectoryFile(const std::string& path) {
  if (path == "-") return parseTrajectory(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parseTrajectory(in);
}

void writePointsCsv(std::ostream& out, const Segmentation& seg, const Trajectory& traj) {
  out << "index,t,x,y,class,region\n";
  for (int i = 1; i <= traj.size(); ++i) {
    const TrajectoryPoint& p = traj.at(i);
    const PointClass& pc = seg.classOf(i);
    char cls = pc.kind == PointClass::Kind::Member ? 'C'
               : pc.kind == PointClass::Kind::LocalNoise ? 'N'
                                                         : 'T';
    out << i << ',' << formatDouble(p.timestamp) << ',' << formatDouble(p.position.x()) << ','
        << formatDouble(p.position.y()) << ',' << cls << ',' << pc.id << '\n';
  }
}

void writeRegionsCsv(std::ostream& out, const Segmentation& seg,
                     const std::string& unitSuffix, double unitSeconds) {
  out << "region,first,last,points,presence_" << unitSuffix << ",duration_" << unitSuffix
      << ",msr_first,msr_last\n";
  for (const StayRegion& r : seg.regions) {
    out << r.id << ',' << r.segment.first() << ',' << r.segment.last() << ','
        << r.segment.pointCount() << ',' << formatDouble(r.presenceValue / unitSeconds) << ','
        << formatDouble(r.durationValue / unitSeconds) << ',' << r.msr.first() << ','
        << r.msr.last() << '\n';
  }
}

void writeGeoJson(std::ostream& out, const Segmentation& seg, const Trajectory& traj) {
  nlohmann::json features = nlohmann::json::array();
  for (const StayRegion& r : seg.regions) {
    std::vector<Vec2> pts;
    for (int i : r.segment.indices()) pts.push_back(traj.at(i).position);
    std::vector<Vec2> hull = convexHull(pts);

    nlohmann::json geometry;
    if (hull.size() >= 3) {
      nlohmann::json ring = nlohmann::json::array();
      for (const Vec2& v : hull) ring.push_back({v.x(), v.y()});
      ring.push_back({hull.front().x(), hull.front().y()});
      geometry = {{"type", "Polygon"}, {"coordinates", nlohmann::json::array({ring})}};
    } else if (hull.size() == 2) {
      geometry = {{"type", "LineString"},
                  {"coordinates", {{hull[0].x(), hull[0].y()}, {hull[1].x(), hull[1].y()}}}};
    } else {
      geometry = {{"type", "Point"}, {"coordinates", {hull[0].x(), hull[0].y()}}};
    }

    features.push_back({{"type", "Feature"},
                        {"properties", {{"region_id", r.id}}},
                        {"geometry", geometry}});
  }
  nlohmann::json fc = {{"type", "FeatureCollection"}, {"features", features}};
  out << fc.dump(2) << '\n';
}

}  // namespace seqscan
