#pragma once

#include <string>
#include <vector>

#include "hmec/cryptanalysis.hpp"

namespace hmec::cryptanalysis {

struct ReportRow {
  std::string test;
  std::string subject;
  std::string metric;
  std::string value;
};

/// `test,subject,metric,value`; fields containing ',', '"' or newlines are quoted.
std::string report_csv(const std::vector<ReportRow>& rows);

/// `rank,r,matched_bytes`, ranks from 1 in r order.
std::string attack_csv(const AttackResult& result);

std::string format_percent(double value);

}  // namespace hmec::cryptanalysis
