#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rhocarroll/dsl/parser.hpp"
#include "rhocarroll/dsl/session.hpp"

namespace {

using namespace rhoc;

std::string emit(const dsl::Report& r, const std::string& format) {
  return format == "records" ? dsl::to_records(r) : dsl::to_text(r);
}

int cmd_check(const std::string& path, std::uint64_t seed, const std::string& format) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "rho-carroll: cannot read '" << path << "'\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const dsl::Report report = dsl::run_session(buf.str(), path, seed);
  std::cout << emit(report, format);
  return report.exit_code();
}

int cmd_catalog_build(const std::string& key, std::uint64_t seed, const std::string& format) {
  dsl::Report report;
  report.file = "catalog:" + key;
  report.seed = seed;
  dsl::Session session(seed);
  dsl::Statement s;
  s.keyword = "catalog";
  s.words = {"build", key};
  session.execute(s);
  report.records = session.records();
  std::cout << emit(report, format);
  return report.exit_code();
}

int cmd_eval(const std::string& key, const std::string& expr) {
  try {
    const CatalogEntry e = build_entry(key);
    dsl::EvalContext ctx;
    ctx.algebra = e.algebra;
    ctx.pair = e.pair;
    ctx.derivations = std::make_shared<const DerivationBasis>(e.algebra, e.derivations);
    ctx.metric = [&](const std::string& n) -> const Metric* {
      if (e.metric && e.metric->name() == n) return &*e.metric;
      if (e.auxiliary_metric && e.auxiliary_metric->name() == n) return &*e.auxiliary_metric;
      return nullptr;
    };
    ctx.connection = [&](const std::string& n) -> const Connection* {
      return e.connection && e.connection->name() == n ? &*e.connection : nullptr;
    };
    std::cout << dsl::render_value(dsl::evaluate(expr, ctx)) << "\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "rho-carroll: " << ex.what() << "\n";
    return 2;
  }
}

int depth_of(const std::string& text) {
  int d = 0;
  for (char c : text) {
    if (c == '#') break;
    if (c == '{' || c == '(' || c == '[') ++d;
    if (c == '}' || c == ')' || c == ']') --d;
  }
  return d;
}

int cmd_repl(std::uint64_t seed) {
  const bool tty = isatty(STDIN_FILENO) != 0;
  dsl::Session session(seed);
  std::size_t shown = 0;
  std::string buffer;
  int depth = 0;
  bool failed = false;
  std::string line;
  if (tty) std::cout << "rho> " << std::flush;
  while (std::getline(std::cin, line)) {
    buffer += line + "\n";
    depth += depth_of(line);
    if (depth > 0) {
      if (tty) std::cout << "...> " << std::flush;
      continue;
    }
    depth = 0;
    try {
      for (const auto& s : dsl::parse(buffer).statements) session.execute(s);
    } catch (const Error& e) {
      std::cout << "ERROR       " << e.what() << "\n";
    }
    buffer.clear();
    const auto& recs = session.records();
    for (; shown < recs.size(); ++shown) {
      if (recs[shown].kind == dsl::Record::Kind::Check && recs[shown].check.status == Status::Fail) failed = true;
      std::cout << dsl::to_text(recs[shown]);
    }
    if (tty) std::cout << "rho> " << std::flush;
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for rho-commutative geometry and Carrollian structures", "rho-carroll"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string format = "text";
  std::string path;
  auto* check = app.add_subcommand("check", "Run a session file");
  check->add_option("file", path, "Session file")->required();
  check->add_option("--seed", seed, "Seed for randomized checks");
  check->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "records"}));

  auto* repl = app.add_subcommand("repl", "Interactive session");
  repl->add_option("--seed", seed, "Seed for randomized checks");

  auto* catalog = app.add_subcommand("catalog", "Builtin structures");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "List catalog keys");
  std::string key;
  auto* build = catalog->add_subcommand("build", "Build and verify an entry");
  build->add_option("key", key, "Catalog key")->required();
  build->add_option("--seed", seed, "Seed for randomized checks");
  build->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "records"}));

  std::string builtin;
  std::string expr;
  auto* eval = app.add_subcommand("eval", "Evaluate an expression against a builtin");
  eval->add_option("-a,--algebra", builtin, "Catalog key")->required();
  eval->add_option("expression", expr, "Expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (check->parsed()) return cmd_check(path, seed, format);
  if (repl->parsed()) return cmd_repl(seed);
  if (eval->parsed()) return cmd_eval(builtin, expr);
  if (build->parsed()) return cmd_catalog_build(key, seed, format);
  for (const auto& k : catalog_keys()) std::cout << k << "\n";
  return 0;
}
