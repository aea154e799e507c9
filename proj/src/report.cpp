#include "rhocarroll/report.hpp"

#include <algorithm>
#include <cctype>

namespace rhoc {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Uncertified: return "uncertified";
  }
  return "unknown";
}

void VerificationReport::pass(std::string check, std::string target, std::string detail) {
  entries_.push_back({std::move(check), std::move(target), Status::Pass, std::nullopt, std::move(detail)});
}

void VerificationReport::fail(std::string check, std::string target, std::string witness, std::string detail) {
  entries_.push_back({std::move(check), std::move(target), Status::Fail, std::move(witness), std::move(detail)});
}

void VerificationReport::uncertified(std::string check, std::string target, std::string detail) {
  entries_.push_back({std::move(check), std::move(target), Status::Uncertified, std::nullopt, std::move(detail)});
}

void VerificationReport::append(const VerificationReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool VerificationReport::passed() const { return count(Status::Fail) == 0; }

std::size_t VerificationReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [s](const CheckResult& r) { return r.status == s; }));
}

const CheckResult* VerificationReport::find(std::string_view check) const {
  for (const auto& e : entries_) {
    if (e.check == check) return &e;
  }
  return nullptr;
}

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& e : entries_) {
    if (e.status == Status::Fail) return &e;
  }
  return nullptr;
}

std::string VerificationReport::to_text() const {
  std::string out;
  for (const auto& e : entries_) {
    std::string status(to_string(e.status));
    std::transform(status.begin(), status.end(), status.begin(), [](unsigned char c) { return std::toupper(c); });
    status.resize(12, ' ');
    out += status + e.check + "  [" + e.target + "]";
    if (!e.detail.empty()) out += "  " + e.detail;
    out += "\n";
    if (e.witness) out += "            witness: " + *e.witness + "\n";
  }
  return out;
}

}  // namespace rhoc
