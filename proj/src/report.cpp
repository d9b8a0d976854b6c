#include "hmec/report.hpp"

#include <cstdio>

namespace hmec::cryptanalysis {

namespace {

void append_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "test,subject,metric,value\n";
  for (const auto& row : rows) {
    append_field(out, row.test);
    out += ',';
    append_field(out, row.subject);
    out += ',';
    append_field(out, row.metric);
    out += ',';
    append_field(out, row.value);
    out += '\n';
  }
  return out;
}

std::string attack_csv(const AttackResult& result) {
  std::string out = "rank,r,matched_bytes\n";
  std::size_t rank = 0;
  for (const auto& c : result.candidates) {
    out += std::to_string(++rank) + ',' + c.r.to_string() + ',' + std::to_string(c.matched_bytes) + '\n';
  }
  return out;
}

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

}  // namespace hmec::cryptanalysis
