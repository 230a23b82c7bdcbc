#pragma once

// JSON form of a SolveReport:
//   {"roots": [{"location", "error_bound", "kind"}], "evaluations",
//    "derivative_evaluations", "abandoned_subintervals", "terminated_by",
//    "trace": [{"x", "fx", "ht"}]   (only when traced)}

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "amrroot/core.hpp"

namespace amrroot {

void to_json(nlohmann::json& j, const Root& r);
void from_json(const nlohmann::json& j, Root& r);
void to_json(nlohmann::json& j, const SolveReport& r);
void from_json(const nlohmann::json& j, SolveReport& r);

std::string report_to_json_string(const SolveReport& report, int indent = 2);
SolveReport report_from_json_string(const std::string& text);

/// CSV with header `idx,x,fx,ht`; ht is left empty when absent.
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double v);

}  // namespace amrroot
