#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rhoc {

enum class Status { Pass, Fail, Uncertified };

std::string_view to_string(Status s);

/// One verification outcome. A failing entry carries `witness`: an
/// expression in the element/section grammar of the structure under test
/// that evaluates to the nonzero violation (lhs - rhs). `detail` says which
/// identity and which arguments produced it.
struct CheckResult {
  std::string check;
  std::string target;
  Status status = Status::Pass;
  std::optional<std::string> witness;
  std::string detail;
};

class VerificationReport {
 public:
  void add(CheckResult r) { entries_.push_back(std::move(r)); }
  void pass(std::string check, std::string target, std::string detail = {});
  void fail(std::string check, std::string target, std::string witness, std::string detail);
  void uncertified(std::string check, std::string target, std::string detail);
  void append(const VerificationReport& other);

  const std::vector<CheckResult>& entries() const { return entries_; }
  // No entry has status Fail. Uncertified entries do not count as failures.
  bool passed() const;
  std::size_t count(Status s) const;
  const CheckResult* find(std::string_view check) const;
  const CheckResult* first_failure() const;

  std::string to_text() const;

 private:
  std::vector<CheckResult> entries_;
};

}  // namespace rhoc
