#include "rhocarroll/dsl/records.hpp"

#include <json.hpp>

namespace rhoc::dsl {

using nlohmann::json;

std::size_t Report::count(Status s) const {
  std::size_t n = 0;
  for (const auto& r : records) {
    if (r.kind == Record::Kind::Check && r.check.status == s) ++n;
  }
  return n;
}

bool Report::has_error() const {
  for (const auto& r : records) {
    if (r.kind == Record::Kind::Error) return true;
  }
  return false;
}

int Report::exit_code() const {
  if (has_error()) return 2;
  return count(Status::Fail) > 0 ? 1 : 0;
}

std::string to_text(const Record& r) {
  switch (r.kind) {
    case Record::Kind::Check: {
      VerificationReport one;
      one.add(r.check);
      return one.to_text();
    }
    case Record::Kind::Value: return r.command + " " + r.input + " = " + r.result + "\n";
    case Record::Kind::Error:
      return "ERROR       line " + std::to_string(r.pos.line) + ", column " + std::to_string(r.pos.column) + ": " +
             r.message + "\n";
  }
  return {};
}

std::string to_text(const Report& r) {
  std::string out = "# " + (r.file.empty() ? std::string("<session>") : r.file) + " (seed " + std::to_string(r.seed) +
                    ")\n";
  for (const auto& rec : r.records) out += to_text(rec);
  out += "# " + std::to_string(r.count(Status::Pass)) + " pass, " + std::to_string(r.count(Status::Fail)) +
         " fail, " + std::to_string(r.count(Status::Uncertified)) + " uncertified\n";
  return out;
}

std::string to_json_line(const Record& r) {
  json j;
  switch (r.kind) {
    case Record::Kind::Check:
      j["kind"] = "check";
      j["check"] = r.check.check;
      j["target"] = r.check.target;
      j["status"] = std::string(to_string(r.check.status));
      j["witness"] = r.check.witness ? json(*r.check.witness) : json(nullptr);
      j["detail"] = r.check.detail;
      break;
    case Record::Kind::Value:
      j["kind"] = "value";
      j["command"] = r.command;
      j["input"] = r.input;
      j["result"] = r.result;
      break;
    case Record::Kind::Error:
      j["kind"] = "error";
      j["line"] = r.pos.line;
      j["column"] = r.pos.column;
      j["message"] = r.message;
      break;
  }
  return j.dump() + "\n";
}

std::string to_records(const Report& r) {
  json head;
  head["kind"] = "session";
  head["schema"] = kReportSchema;
  head["engine"] = kEngineVersion;
  head["file"] = r.file;
  head["seed"] = r.seed;
  std::string out = head.dump() + "\n";
  for (const auto& rec : r.records) out += to_json_line(rec);
  json tail;
  tail["kind"] = "summary";
  tail["pass"] = r.count(Status::Pass);
  tail["fail"] = r.count(Status::Fail);
  tail["uncertified"] = r.count(Status::Uncertified);
  tail["exit"] = r.exit_code();
  return out + tail.dump() + "\n";
}

}  // namespace rhoc::dsl
