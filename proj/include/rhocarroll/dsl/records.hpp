#pragma once

// Session reports. The machine-readable form is one JSON object per line;
// see docs/report-format.md.

#include <cstdint>
#include <string>
#include <vector>

#include "rhocarroll/dsl/ast.hpp"
#include "rhocarroll/report.hpp"

namespace rhoc::dsl {

inline constexpr const char* kReportSchema = "rho-carroll-report/1";
inline constexpr const char* kEngineVersion = "0.1.0";

struct Record {
  enum class Kind { Check, Value, Error };

  Kind kind = Kind::Check;
  CheckResult check;
  // Value records.
  std::string command;
  std::string input;
  std::string result;
  // Error records.
  Pos pos;
  std::string message;
};

struct Report {
  std::string file;
  std::uint64_t seed = 1;
  std::vector<Record> records;

  std::size_t count(Status s) const;
  bool has_error() const;
  // 0 no failures, 1 a check failed, 2 a parse or evaluation error.
  int exit_code() const;
};

std::string to_text(const Record& r);
std::string to_text(const Report& r);
std::string to_json_line(const Record& r);
std::string to_records(const Report& r);

}  // namespace rhoc::dsl
