#pragma once

#include <string>

#include <json.hpp>

#include "comsat/sweep.hpp"

namespace comsat {

/// Locale-independent fixed 12-significant-digit rendering ('.' decimal
/// separator, no grouping).
std::string format_number(double v);

/// Writes content to path via a temp file + rename in the same directory.
void atomic_write_file(const std::string& path, const std::string& content);

/// CSV rendering: '#'-prefixed metadata lines (one per resolved config key)
/// followed by a header row and one row per grid point. Fields needing it
/// are quoted RFC-4180 style; numbers never do.
std::string curve_to_csv(const CurveSet& curve, const nlohmann::json& metadata);

/// JSON rendering: {"config": metadata, "rows": [ {column: value, ...} ]}.
std::string curve_to_json(const CurveSet& curve, const nlohmann::json& metadata);

void write_curve(const std::string& path, const std::string& format, const CurveSet& curve,
                 const nlohmann::json& metadata);

}  // namespace comsat
