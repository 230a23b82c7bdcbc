#include "amrroot/report_json.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

namespace amrroot {

void to_json(nlohmann::json& j, const Root& r) {
  j = nlohmann::json{{"location", r.location}, {"error_bound", r.error_bound}, {"kind", to_string(r.kind)}};
}

void from_json(const nlohmann::json& j, Root& r) {
  j.at("location").get_to(r.location);
  j.at("error_bound").get_to(r.error_bound);
  const auto kind = root_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw InvalidArgument("unknown root kind in report");
  r.kind = *kind;
}

void to_json(nlohmann::json& j, const SolveReport& r) {
  j = nlohmann::json{{"roots", r.roots},
                     {"evaluations", r.evaluations},
                     {"derivative_evaluations", r.derivative_evaluations},
                     {"abandoned_subintervals", r.abandoned_subintervals},
                     {"terminated_by", to_string(r.terminated_by)}};
  if (r.trace) {
    auto points = nlohmann::json::array();
    for (const auto& p : *r.trace) {
      nlohmann::json jp{{"x", p.x}, {"fx", std::isnan(p.fx) ? nlohmann::json(nullptr) : nlohmann::json(p.fx)}};
      jp["ht"] = p.ht ? nlohmann::json(*p.ht) : nlohmann::json(nullptr);
      points.push_back(std::move(jp));
    }
    j["trace"] = std::move(points);
  }
}

void from_json(const nlohmann::json& j, SolveReport& r) {
  j.at("roots").get_to(r.roots);
  j.at("evaluations").get_to(r.evaluations);
  j.at("derivative_evaluations").get_to(r.derivative_evaluations);
  r.abandoned_subintervals = j.value("abandoned_subintervals", std::size_t{0});
  const auto t = termination_from_string(j.at("terminated_by").get<std::string>());
  if (!t) throw InvalidArgument("unknown termination in report");
  r.terminated_by = *t;
  r.trace.reset();
  if (j.contains("trace")) {
    std::vector<TracePoint> trace;
    for (const auto& jp : j.at("trace")) {
      TracePoint p;
      p.x = jp.at("x").get<double>();
      p.fx = jp.at("fx").is_null() ? std::nan("") : jp.at("fx").get<double>();
      if (!jp.at("ht").is_null()) p.ht = jp.at("ht").get<double>();
      trace.push_back(p);
    }
    r.trace = std::move(trace);
  }
}

std::string report_to_json_string(const SolveReport& report, int indent) {
  return nlohmann::json(report).dump(indent);
}

SolveReport report_from_json_string(const std::string& text) {
  return nlohmann::json::parse(text).get<SolveReport>();
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << "idx,x,fx,ht\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& p = trace[i];
    out << i << ',' << format_double(p.x) << ',' << format_double(p.fx) << ',';
    if (p.ht) out << format_double(*p.ht);
    out << '\n';
  }
}

}  // namespace amrroot
