#pragma once

#include <string>

#include <json.hpp>

namespace athn {

// Renders a schedule document as an SVG Gantt chart: one row per truck, time
// on the horizontal axis, loaded task bars blue, empty relocation bars red.
// Output is deterministic for identical input.
std::string emit_gantt(const nlohmann::json& schedule);

std::string emit_gantt_file(const std::string& schedule_path, const std::string& out_path);

}  // namespace athn
