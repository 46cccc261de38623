#include "nsbundle/trace.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nsbundle {

namespace {

std::string real17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::none: return "none";
    case StopReason::ftol: return "ftol";
    case StopReason::gnorm: return "gnorm";
    case StopReason::max_outer: return "max_outer";
    case StopReason::probe: return "probe";
    case StopReason::error: return "error";
  }
  return "?";
}

std::string trace_csv(const RunTrace& trace) {
  std::string out = "k,f_y,f_best,eps_k,fg_cum,vartheta,stop\n";
  for (const TraceRow& row : trace.rows) {
    out += std::to_string(row.k);
    out += ',';
    out += real17(row.f_y);
    out += ',';
    out += real17(row.f_best);
    out += ',';
    out += real17(row.eps_k);
    out += ',';
    out += std::to_string(row.fg_cum);
    out += ',';
    out += real17(row.vartheta);
    out += ',';
    if (row.stop != StopReason::none) out += to_string(row.stop);
    out += '\n';
  }
  return out;
}

std::string trace_json(const RunTrace& trace) {
  std::string out = "{";
  out += "\"problem\":\"" + json_escape(trace.problem) + "\",";
  out += "\"algo\":\"" + to_string(trace.variant) + "\",";
  out += "\"eps\":\"" + json_escape(trace.eps_label) + "\",";
  out += "\"mu0\":" + real17(trace.mu0) + ",";
  out += "\"summary\":{";
  out += "\"steps\":" + std::to_string(trace.steps) + ",";
  out += "\"fg\":" + std::to_string(trace.fg) + ",";
  out += "\"f_best\":" + real17(trace.f_best) + ",";
  out += "\"f_gap\":" + (trace.f_gap ? real17(*trace.f_gap) : std::string("null")) + ",";
  out += "\"stop_reason\":\"" + to_string(trace.reason) + "\",";
  out += "\"wall_ms\":" + real17(trace.wall_ms) + ",";
  out += "\"error\":\"" + json_escape(trace.error) + "\"},";
  out += "\"rows\":[";
  bool first = true;
  for (const TraceRow& row : trace.rows) {
    if (!first) out += ',';
    first = false;
    out += "{\"k\":" + std::to_string(row.k) + ",";
    out += "\"f_y\":" + real17(row.f_y) + ",";
    out += "\"f_best\":" + real17(row.f_best) + ",";
    out += "\"eps_k\":" + real17(row.eps_k) + ",";
    out += "\"fg_cum\":" + std::to_string(row.fg_cum) + ",";
    out += "\"vartheta\":" + real17(row.vartheta) + ",";
    out += "\"bound\":" + (row.bound ? real17(*row.bound) : std::string("null")) + ",";
    out += "\"stop\":\"" +
           (row.stop != StopReason::none ? to_string(row.stop) : std::string()) + "\"}";
  }
  out += "]";
  if (!trace.final_cuts.empty()) {
    out += ",\"final_bundle\":[";
    first = true;
    for (const auto& [g, b] : trace.final_cuts) {
      if (!first) out += ',';
      first = false;
      out += "{\"g\":[";
      for (Eigen::Index i = 0; i < g.size(); ++i) {
        if (i > 0) out += ',';
        out += real17(g(i));
      }
      out += "],\"b\":" + real17(b) + "}";
    }
    out += "]";
  }
  out += "}";
  return out;
}

void export_trace(const RunTrace& trace, const std::string& format,
                  const std::filesystem::path& path) {
  std::string payload;
  if (format == "csv") {
    payload = trace_csv(trace);
  } else if (format == "json") {
    payload = trace_json(trace);
  } else {
    throw std::invalid_argument("export_trace: unknown format: " + format);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("export_trace: cannot open " + path.string());
  }
  out << payload;
  if (!out.good()) {
    throw std::runtime_error("export_trace: write failed for " + path.string());
  }
}

}  // namespace nsbundle
