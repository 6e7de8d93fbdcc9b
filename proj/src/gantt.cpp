#include "athn/gantt.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include "athn/types.hpp"

namespace athn {

using nlohmann::json;

namespace {

constexpr double kRowHeight = 22.0;
constexpr double kBarHeight = 14.0;
constexpr double kLeftMargin = 120.0;
constexpr double kTopMargin = 30.0;
constexpr double kPlotWidth = 960.0;

struct Bar {
  std::int64_t start = 0;
  std::int64_t end = 0;
  bool loaded = true;
  std::string title;
};

struct Row {
  std::string label;
  std::vector<Bar> bars;
};

double fmt_x(std::int64_t t, std::int64_t tmax) {
  if (tmax <= 0) return kLeftMargin;
  return kLeftMargin + kPlotWidth * static_cast<double>(t) / static_cast<double>(tmax);
}

}  // namespace

std::string emit_gantt(const json& schedule) {
  if (!schedule.contains("schema_version") || !schedule.contains("subproblems"))
    throw SchemaError("schedule document missing schema_version or subproblems");

  std::vector<Row> rows;
  std::int64_t tmax = 0;
  try {
    for (const auto& sp : schedule.at("subproblems")) {
      const auto kind = sp.at("kind").get<std::string>();
      const std::string prefix =
          kind == "autonomous" ? "auto" : "hub " + sp.value("hub", std::string("?"));
      for (const auto& truck : sp.at("trucks")) {
        Row row;
        row.label = prefix + " #" + std::to_string(truck.at("index").get<int>());
        for (const auto& t : truck.at("tasks")) {
          Bar b;
          b.start = t.at("start").get<std::int64_t>();
          b.end = t.at("end").get<std::int64_t>();
          b.loaded = true;
          b.title = t.at("task_id").get<std::string>() + " " + t.at("origin").get<std::string>() +
                    "->" + t.at("destination").get<std::string>();
          tmax = std::max(tmax, b.end);
          row.bars.push_back(std::move(b));
        }
        for (const auto& r : truck.at("relocations")) {
          Bar b;
          b.start = r.at("start").get<std::int64_t>();
          b.end = r.at("end").get<std::int64_t>();
          b.loaded = false;
          b.title = "empty " + r.at("from").get<std::string>() + "->" + r.at("to").get<std::string>();
          tmax = std::max(tmax, b.end);
          row.bars.push_back(std::move(b));
        }
        std::sort(row.bars.begin(), row.bars.end(),
                  [](const Bar& a, const Bar& b) { return a.start < b.start; });
        rows.push_back(std::move(row));
      }
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("schedule schema: ") + e.what());
  }

  const double height = kTopMargin + kRowHeight * static_cast<double>(rows.size()) + 40.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kLeftMargin + kPlotWidth + 20
     << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  os << "<line x1=\"" << kLeftMargin << "\" y1=\"" << kTopMargin - 8 << "\" x2=\"" << kLeftMargin
     << "\" y2=\"" << height - 30 << "\" stroke=\"#333\"/>\n";
  os << "<line x1=\"" << kLeftMargin << "\" y1=\"" << height - 30 << "\" x2=\""
     << kLeftMargin + kPlotWidth << "\" y2=\"" << height - 30 << "\" stroke=\"#333\"/>\n";

  // Day ticks.
  for (std::int64_t t = 0; t <= tmax; t += 1440) {
    const double x = fmt_x(t, std::max<std::int64_t>(tmax, 1));
    os << "<line x1=\"" << x << "\" y1=\"" << kTopMargin - 8 << "\" x2=\"" << x << "\" y2=\""
       << height - 30 << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\">d"
       << t / 1440 << "</text>\n";
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double y = kTopMargin + kRowHeight * static_cast<double>(i);
    os << "<text x=\"" << kLeftMargin - 6 << "\" y=\"" << y + kBarHeight - 3
       << "\" text-anchor=\"end\">" << rows[i].label << "</text>\n";
    for (const auto& b : rows[i].bars) {
      const double x0 = fmt_x(b.start, std::max<std::int64_t>(tmax, 1));
      const double x1 = fmt_x(b.end, std::max<std::int64_t>(tmax, 1));
      os << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"" << std::max(1.0, x1 - x0)
         << "\" height=\"" << kBarHeight << "\" fill=\"" << (b.loaded ? "#3b6fb5" : "#c0392b")
         << "\"><title>" << b.title << "</title></rect>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string emit_gantt_file(const std::string& schedule_path, const std::string& out_path) {
  std::ifstream in(schedule_path, std::ios::binary);
  if (!in) throw Error("cannot read " + schedule_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(schedule_path + ": " + e.what());
  }
  auto svg = emit_gantt(j);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write " + out_path);
  out << svg;
  return svg;
}

}  // namespace athn
