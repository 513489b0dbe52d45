#pragma once

#include <string>

#include "ssb/json_util.hpp"

namespace ssb {

enum class ReportFormat { Json, Text };

ReportFormat parse_format(const std::string& name);

/// Deterministic JSON: keys sorted, two-space indentation, floating-point
/// numbers as %.12e (non-finite values become null), trailing newline.
std::string emit_json(const json& doc);

/// Human-readable rendering. Objects become indented sections; arrays of
/// flat objects sharing the same keys become aligned tables.
std::string emit_text(const json& doc);

std::string emit_report(const json& doc, ReportFormat format);

std::string format_double(double x);

}  // namespace ssb
