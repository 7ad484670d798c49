#include "symind/cli_reports.hpp"

#include <cstdio>
#include <sstream>

namespace symind {

bool SuiteReport::all_passed() const {
  for (const auto& c : checks)
    if (c.status == "fail") return false;
  return true;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_json(const SuiteReport& r) {
  std::ostringstream os;
  os << "{\"suite\":\"" << json_escape(r.suite) << "\",";
  os << "\"config\":{\"seed\":" << r.config.seed << ",\"samples\":" << r.config.samples
     << ",\"tol\":" << format_double(r.config.tol)
     << ",\"fd_step\":" << format_double(r.config.fd_step) << ",\"n_max\":" << r.config.n_max
     << "},";
  os << "\"checks\":[";
  for (size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    if (i) os << ",";
    os << "{\"name\":\"" << json_escape(c.name) << "\",\"status\":\"" << c.status
       << "\",\"residual_max\":" << format_double(c.residual_max) << ",\"expected\":\""
       << json_escape(c.expected) << "\",\"observed\":\"" << json_escape(c.observed) << "\"}";
  }
  os << "],\"wall_time_ms\":0}";
  return os.str();
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite << " (seed=" << r.config.seed << " samples=" << r.config.samples
     << " tol=" << format_double(r.config.tol) << " fd_step=" << format_double(r.config.fd_step)
     << " n_max=" << r.config.n_max << ")\n";
  for (const auto& c : r.checks) {
    os << "  [" << c.status << "] " << c.name;
    if (!c.expected.empty()) os << "  expected=" << c.expected << " observed=" << c.observed;
    if (c.residual_max != 0.0) os << "  residual_max=" << format_double(c.residual_max);
    os << "\n";
  }
  os << (r.all_passed() ? "OK" : "FAIL") << " (" << r.checks.size() << " checks, "
     << format_double(r.wall_time_ms) << " ms)\n";
  return os.str();
}

}  // namespace symind
