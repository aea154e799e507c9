#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhocarroll/builtins.hpp"
#include "rhocarroll/dsl/expression.hpp"
#include "rhocarroll/dsl/records.hpp"

namespace rhoc::dsl {

/// One isolated evaluation context. Statements run in order; randomized
/// checks draw from a generator seeded with `seed`, so a session replays
/// identically.
class Session {
 public:
  explicit Session(std::uint64_t seed = 1, std::size_t samples = 200);

  // Appends records; on an engine or name error appends an error record and
  // returns false.
  bool execute(const Statement& s);
  bool run(const SessionAst& ast);

  const std::vector<Record>& records() const { return records_; }
  std::uint64_t seed() const { return seed_; }

  // Parses and evaluates an expression against the current declarations.
  Value evaluate(std::string_view expression);
  EvalContext context(const PairPtr& pair = nullptr);

  const PresentationPtr& algebra();
  PairPtr pair(const std::string& name) const;
  const Metric* metric(const std::string& name) const;
  const Connection* connection(const std::string& name) const;
  const CarrollStructure* carroll(const std::string& name) const;

 private:
  void dispatch(const Statement& s);
  void reset_algebra();
  DerivationBasisPtr derivation_basis();
  PairPtr pair_for(const Statement& s, const std::string& option);
  void load(const CatalogEntry& e);

  void declare_derivation(const Statement& s);
  void declare_pair(const Statement& s);
  void declare_metric(const Statement& s);
  void declare_connection(const Statement& s);
  void declare_carroll(const Statement& s);
  void run_check(const Statement& s);
  void run_levi_civita(const Statement& s);
  void run_catalog(const Statement& s);

  void add(const VerificationReport& r);
  void value(const std::string& command, const std::string& input, const std::string& result);

  std::uint64_t seed_;
  std::size_t samples_;
  std::vector<Record> records_;

  std::vector<std::string> params_{"q"};
  std::optional<GradeGroup> group_;
  std::optional<CommutationFactor> factor_;
  std::string algebra_name_;
  bool integral_domain_ = false;
  std::vector<GeneratorSpec> generators_;
  PresentationPtr algebra_;

  std::vector<RhoDerivation> derivations_;
  DerivationBasisPtr basis_;
  std::map<std::string, PairPtr> pairs_;
  std::string last_pair_;
  std::map<std::string, Metric> metrics_;
  std::map<std::string, Connection> connections_;
  std::map<std::string, CarrollStructure> carrolls_;
};

// Parse and run; a syntax error becomes a single error record.
Report run_session(std::string_view source, const std::string& file = {}, std::uint64_t seed = 1);

}  // namespace rhoc::dsl
