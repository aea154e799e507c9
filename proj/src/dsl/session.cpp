#include "rhocarroll/dsl/session.hpp"

#include <algorithm>
#include <cstdio>

#include "rhocarroll/dsl/parser.hpp"

namespace rhoc::dsl {

namespace {

[[noreturn]] void semantic(const Statement& s, const std::string& msg) {
  throw Error(ErrorCode::Semantic,
              "line " + std::to_string(s.pos.line) + ", column " + std::to_string(s.pos.column) + ": " + msg);
}

// Splits a leading "line L, column C: " off an error message.
Record error_record(Pos fallback, const std::string& what) {
  Record r;
  r.kind = Record::Kind::Error;
  r.pos = fallback;
  r.message = what;
  int line = 0;
  int col = 0;
  int used = 0;
  if (std::sscanf(what.c_str(), "line %d, column %d: %n", &line, &col, &used) == 2 && used > 0) {
    r.pos = {line, col};
    r.message = what.substr(static_cast<std::size_t>(used));
  }
  return r;
}

template <class T>
const T* option(const Statement& s, const std::string& key) {
  auto it = s.options.find(key);
  if (it == s.options.end()) return nullptr;
  const T* v = std::get_if<T>(&it->second);
  if (!v) semantic(s, "option '" + key + "' has the wrong type");
  return v;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? sep : "") + xs[k];
  return out;
}

std::string matrix_text(const ElementMatrix& m) {
  std::vector<std::string> rows;
  for (const auto& row : m) {
    std::vector<std::string> cells;
    for (const auto& c : row) cells.push_back(c.to_string());
    rows.push_back("[" + join(cells, ", ") + "]");
  }
  return "[" + join(rows, ", ") + "]";
}

}  // namespace

Session::Session(std::uint64_t seed, std::size_t samples) : seed_(seed), samples_(samples) {}

bool Session::run(const SessionAst& ast) {
  for (const auto& s : ast.statements) {
    if (!execute(s)) return false;
  }
  return true;
}

bool Session::execute(const Statement& s) {
  try {
    dispatch(s);
    return true;
  } catch (const std::exception& e) {
    records_.push_back(error_record(s.pos, e.what()));
    return false;
  }
}

void Session::add(const VerificationReport& r) {
  for (const auto& e : r.entries()) {
    Record rec;
    rec.kind = Record::Kind::Check;
    rec.check = e;
    records_.push_back(std::move(rec));
  }
}

void Session::value(const std::string& command, const std::string& input, const std::string& result) {
  Record rec;
  rec.kind = Record::Kind::Value;
  rec.command = command;
  rec.input = input;
  rec.result = result;
  records_.push_back(std::move(rec));
}

void Session::reset_algebra() {
  algebra_.reset();
  generators_.clear();
  derivations_.clear();
  basis_.reset();
  pairs_.clear();
  last_pair_.clear();
  metrics_.clear();
  connections_.clear();
  carrolls_.clear();
}

const PresentationPtr& Session::algebra() {
  if (!algebra_) {
    if (algebra_name_.empty()) throw Error(ErrorCode::Semantic, "no algebra declared");
    if (!group_) throw Error(ErrorCode::Semantic, "no grading group declared");
    CommutationFactor f = factor_ ? *factor_ : CommutationFactor::trivial(*group_);
    algebra_ = Presentation::make(algebra_name_, std::move(f), ParameterSpace::make(params_), generators_,
                                  integral_domain_);
  }
  return algebra_;
}

DerivationBasisPtr Session::derivation_basis() {
  if (!basis_) basis_ = std::make_shared<const DerivationBasis>(algebra(), derivations_);
  return basis_;
}

EvalContext Session::context(const PairPtr& pair) {
  EvalContext ctx;
  ctx.algebra = algebra();
  ctx.pair = pair ? pair : (last_pair_.empty() ? nullptr : pairs_.at(last_pair_));
  ctx.derivations = derivation_basis();
  ctx.metric = [this](const std::string& n) { return metric(n); };
  ctx.connection = [this](const std::string& n) { return connection(n); };
  return ctx;
}

Value Session::evaluate(std::string_view expression) { return dsl::evaluate(expression, context()); }

PairPtr Session::pair(const std::string& name) const {
  auto it = pairs_.find(name);
  return it == pairs_.end() ? nullptr : it->second;
}
const Metric* Session::metric(const std::string& name) const {
  auto it = metrics_.find(name);
  return it == metrics_.end() ? nullptr : &it->second;
}
const Connection* Session::connection(const std::string& name) const {
  auto it = connections_.find(name);
  return it == connections_.end() ? nullptr : &it->second;
}
const CarrollStructure* Session::carroll(const std::string& name) const {
  auto it = carrolls_.find(name);
  return it == carrolls_.end() ? nullptr : &it->second;
}

PairPtr Session::pair_for(const Statement& s, const std::string& key) {
  std::string name = last_pair_;
  if (const auto* n = option<std::string>(s, key)) name = *n;
  if (name.empty()) semantic(s, "no pair declared");
  PairPtr p = pair(name);
  if (!p) semantic(s, "unknown pair '" + name + "'");
  return p;
}

void Session::load(const CatalogEntry& e) {
  reset_algebra();
  algebra_ = e.algebra;
  algebra_name_ = e.algebra->name();
  group_ = e.algebra->group();
  factor_ = e.algebra->factor();
  params_ = e.algebra->params()->names();
  integral_domain_ = e.algebra->integral_domain();
  generators_ = e.algebra->generators();
  derivations_ = e.derivations;
  pairs_[e.pair->name()] = e.pair;
  last_pair_ = e.pair->name();
  if (e.metric) metrics_.insert_or_assign(e.metric->name(), *e.metric);
  if (e.auxiliary_metric) metrics_.insert_or_assign(e.auxiliary_metric->name(), *e.auxiliary_metric);
  if (e.connection) connections_.insert_or_assign(e.connection->name(), *e.connection);
  if (e.carroll) carrolls_.insert_or_assign(e.carroll->name, *e.carroll);
}

void Session::dispatch(const Statement& s) {
  const std::string& k = s.keyword;
  if (k == "params") {
    if (algebra_) semantic(s, "parameters must be declared before the algebra is used");
    params_ = s.words;
  } else if (k == "group") {
    group_ = GradeGroup(static_cast<int>(*option<long>(s, "free")), static_cast<int>(*option<long>(s, "torsion")));
    factor_.reset();
  } else if (k == "factor") {
    if (!group_) semantic(s, "declare a group before its factor");
    const auto* qf = option<IntMatrixLit>(s, "q_form");
    const auto* sf = option<IntMatrixLit>(s, "sign_form");
    factor_ = CommutationFactor(*group_, qf ? *qf : IntMatrix{}, sf ? *sf : IntMatrix{});
  } else if (k == "algebra") {
    reset_algebra();
    algebra_name_ = s.name;
    const auto* dom = option<bool>(s, "integral_domain");
    integral_domain_ = dom && *dom;
  } else if (k == "generator") {
    if (algebra_name_.empty()) semantic(s, "generator outside an algebra");
    if (algebra_) semantic(s, "algebra '" + algebra_name_ + "' is already in use; declare generators first");
    if (!group_) semantic(s, "declare a group before generators");
    const auto* d = option<DegreeLit>(s, "deg");
    if (!d) semantic(s, "generator needs deg=(...)");
    GeneratorSpec g{s.name, Degree(*group_, *d)};
    if (const auto* inv = option<bool>(s, "invertible")) g.invertible = *inv;
    if (const auto* sz = option<bool>(s, "square_zero")) g.square_zero = *sz;
    generators_.push_back(std::move(g));
  } else if (k == "derivation") {
    declare_derivation(s);
  } else if (k == "pair") {
    declare_pair(s);
  } else if (k == "metric") {
    declare_metric(s);
  } else if (k == "connection") {
    declare_connection(s);
  } else if (k == "carroll") {
    declare_carroll(s);
  } else if (k == "use") {
    if (s.words.size() != 2 || s.words[0] != "builtin") semantic(s, "expected 'use builtin <key>'");
    load(build_entry(s.words[1]));
  } else if (k == "check") {
    run_check(s);
  } else if (k == "eval") {
    value("eval", render(*s.exprs[0]), render_value(dsl::evaluate(*s.exprs[0], context())));
  } else if (k == "curvature" || k == "torsion") {
    const Connection* c = connection(s.name);
    if (!c) semantic(s, "unknown connection '" + s.name + "'");
    const EvalContext ctx = context(c->pair());
    std::vector<Section> args;
    std::vector<std::string> shown;
    for (const auto& e : s.exprs) {
      args.push_back(evaluate_section(*e, ctx));
      shown.push_back(render(*e));
    }
    const std::size_t need = k == "curvature" ? 3 : 2;
    if (args.size() != need) semantic(s, k + " takes " + std::to_string(need) + " sections");
    const Section r = k == "curvature" ? curvature(*c, args[0], args[1], args[2]) : torsion(*c, args[0], args[1]);
    value(k, s.name + "(" + join(shown, ",") + ")", r.to_string());
  } else if (k == "flow") {
    const EvalContext ctx = context();
    const Value xv = dsl::evaluate(*s.exprs[0], ctx);
    const Element f = evaluate_element(*s.exprs[1], ctx);
    const long* order = option<long>(s, "order");
    ActionTable x = ActionTable::zero(ctx.algebra);
    if (const auto* sec = std::get_if<Section>(&xv)) {
      x = anchor_of(*sec).action();
    } else if (const auto* d = std::get_if<DerivationCombo>(&xv)) {
      x = d->action();
    } else {
      semantic(s, "flow needs a derivation or a section");
    }
    const FlowSeries series = flow(x, f, order ? static_cast<int>(*order) : 6);
    value("flow", render(*s.exprs[0]) + " " + render(*s.exprs[1]), series.to_string());
  } else if (k == "levi_civita") {
    run_levi_civita(s);
  } else if (k == "catalog") {
    run_catalog(s);
  } else if (k == "report") {
    std::size_t n[3] = {0, 0, 0};
    for (const auto& r : records_) {
      if (r.kind == Record::Kind::Check) ++n[static_cast<int>(r.check.status)];
    }
    value("report", "checks", std::to_string(n[0]) + " pass, " + std::to_string(n[1]) + " fail, " +
                                  std::to_string(n[2]) + " uncertified");
  } else {
    semantic(s, "unknown statement '" + k + "'");
  }
}

void Session::declare_derivation(const Statement& s) {
  const auto& alg = algebra();
  std::vector<Element> action(alg->size(), Element(alg));
  EvalContext ctx;
  ctx.algebra = alg;
  for (const auto& e : s.entries) {
    auto g = alg->generator_index(e.keys[0]);
    if (!g) semantic(s, "unknown generator '" + e.keys[0] + "'");
    action[*g] = evaluate_element(*e.value, ctx);
  }
  std::optional<Degree> d;
  if (const auto* lit = option<DegreeLit>(s, "deg")) d = Degree(alg->group(), *lit);
  for (std::size_t j = 0; j < action.size() && !d; ++j) {
    if (action[j].is_zero()) continue;
    auto vd = action[j].degree();
    if (!vd) semantic(s, "value on '" + alg->generator(j).name + "' is not homogeneous");
    d = *vd - alg->generator(j).degree;
  }
  RhoDerivation x(alg, s.name, d ? *d : Degree::zero(alg->group()), std::move(action));
  auto it = std::find_if(derivations_.begin(), derivations_.end(), [&](const auto& y) { return y.name() == s.name; });
  if (it != derivations_.end()) {
    *it = std::move(x);
  } else {
    derivations_.push_back(std::move(x));
  }
  basis_.reset();
}

void Session::declare_pair(const Statement& s) {
  const auto& alg = algebra();
  const DerivationBasisPtr basis = derivation_basis();
  std::vector<BasisSection> sections;
  for (const auto& e : s.entries) {
    if (e.kind != "basis") continue;
    sections.push_back({e.keys[0], e.degree ? Degree(alg->group(), *e.degree) : Degree::zero(alg->group())});
  }
  if (sections.empty()) semantic(s, "pair '" + s.name + "' has no basis");
  const std::size_t n = sections.size();
  auto index = [&](const std::string& name) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sections[k].name == name) return k;
    }
    semantic(s, "unknown basis section '" + name + "'");
  };
  std::vector<DerivationCombo> anchors(n, DerivationCombo::zero(basis));
  EvalContext dctx;
  dctx.algebra = alg;
  dctx.derivations = basis;
  for (const auto& e : s.entries) {
    if (e.kind == "anchor") anchors[index(e.keys[0])] = evaluate_derivation(*e.value, dctx);
  }
  // Section names resolve against a provisional abelian pair.
  const PairPtr provisional =
      LieRinehartPair::make(s.name, basis, sections, anchors, LieRinehartPair::abelian(alg, n));
  EvalContext sctx = dctx;
  sctx.pair = provisional;
  LieRinehartPair::StructureTable structure = LieRinehartPair::abelian(alg, n);
  std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
  for (const auto& e : s.entries) {
    if (e.kind != "bracket") continue;
    const std::size_t a = index(e.keys[0]);
    const std::size_t b = index(e.keys[1]);
    structure[a][b] = evaluate_section(*e.value, sctx).coeffs();
    given[a][b] = true;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!given[a][b] || given[b][a]) continue;
      const Element r = Element::scalar(alg, -alg->rho_coefficient(sections[b].degree, sections[a].degree));
      for (std::size_t c = 0; c < n; ++c) structure[b][a][c] = r * structure[a][b][c];
      given[b][a] = true;
    }
  }
  pairs_[s.name] = LieRinehartPair::make(s.name, basis, std::move(sections), std::move(anchors), std::move(structure));
  last_pair_ = s.name;
}

void Session::declare_metric(const Statement& s) {
  const PairPtr p = pair_for(s, "on");
  const auto& alg = p->algebra();
  const EvalContext ctx = context(p);
  const std::size_t n = p->size();
  ElementMatrix m(n, std::vector<Element>(n, Element(alg)));
  std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
  for (const auto& e : s.entries) {
    auto a = p->basis_index(e.keys[0]);
    auto b = p->basis_index(e.keys[1]);
    if (!a || !b) semantic(s, "unknown basis section in (" + e.keys[0] + "," + e.keys[1] + ")");
    m[*a][*b] = evaluate_element(*e.value, ctx);
    given[*a][*b] = true;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!given[a][b] || given[b][a]) continue;
      m[b][a] = alg->rho_coefficient(p->basis_section(b).degree, p->basis_section(a).degree) * m[a][b];
      given[b][a] = true;
    }
  }
  metrics_.insert_or_assign(s.name, Metric(s.name, p, std::move(m)));
}

void Session::declare_connection(const Statement& s) {
  const PairPtr p = pair_for(s, "on");
  const EvalContext ctx = context(p);
  Connection c = Connection::trivial(s.name, p);
  for (const auto& e : s.entries) {
    auto a = p->basis_index(e.keys[0]);
    auto b = p->basis_index(e.keys[1]);
    if (!a || !b) semantic(s, "unknown basis section in (" + e.keys[0] + "," + e.keys[1] + ")");
    c = c.with(*a, *b, evaluate_section(*e.value, ctx));
  }
  connections_.insert_or_assign(s.name, std::move(c));
}

void Session::declare_carroll(const Statement& s) {
  const PairPtr p = pair_for(s, "pair");
  const auto* g = option<std::string>(s, "metric");
  if (!g) semantic(s, "carroll needs metric=<name>");
  const Metric* m = metric(*g);
  if (!m) semantic(s, "unknown metric '" + *g + "'");
  const auto* sigma = option<ExprPtr>(s, "sigma");
  if (!sigma) semantic(s, "carroll needs sigma=<section>");
  Section sec = evaluate_section(**sigma, context(p));
  carrolls_.insert_or_assign(s.name, make_carroll(s.name, *m, std::move(sec)));
}

void Session::run_check(const Statement& s) {
  const auto& w = s.words;
  if (w.empty()) semantic(s, "check what?");
  const PairCheckOptions opts{samples_, seed_};
  auto arg = [&](std::size_t k, const char* what) -> const std::string& {
    if (w.size() <= k) semantic(s, std::string("check ") + w[0] + " needs " + what);
    return w[k];
  };
  if (w[0] == "factor") {
    add(check_commutation_axioms(algebra()->factor(), samples_, seed_));
  } else if (w[0] == "derivation") {
    const std::string& n = arg(1, "a derivation name");
    auto it = std::find_if(derivations_.begin(), derivations_.end(), [&](const auto& d) { return d.name() == n; });
    if (it == derivations_.end()) semantic(s, "unknown derivation '" + n + "'");
    add(verify_derivation(*it));
  } else if (w[0] == "pair") {
    const std::string& n = arg(1, "a pair name");
    PairPtr p = pair(n);
    if (!p) semantic(s, "unknown pair '" + n + "'");
    add(verify_pair(p, opts));
  } else if (w[0] == "metric") {
    const std::string& n = arg(1, "a metric name");
    const Metric* m = metric(n);
    if (!m) semantic(s, "unknown metric '" + n + "'");
    add(check_metric(*m));
  } else if (w[0] == "connection") {
    const std::string& n = arg(1, "a connection name");
    const Connection* c = connection(n);
    if (!c) semantic(s, "unknown connection '" + n + "'");
    add(check_connection(*c));
    for (std::size_t k = 2; k < w.size(); ++k) {
      if (w[k] == "torsion_free") {
        add(check_torsion_free(*c));
      } else if (w[k] == "flat") {
        add(check_flat(*c));
      } else if (w[k] == "tensorial") {
        add(check_tensoriality(as_operator(*c), opts));
      } else if (w[k] == "metric") {
        const std::string& gn = arg(++k, "a metric name");
        const Metric* m = metric(gn);
        if (!m) semantic(s, "unknown metric '" + gn + "'");
        add(check_compatibility(*c, *m));
      } else {
        semantic(s, "unknown connection check '" + w[k] + "'");
      }
    }
  } else if (w[0] == "carroll") {
    const std::string& n = arg(1, "a carroll name");
    const CarrollStructure* cs = carroll(n);
    if (!cs) semantic(s, "unknown carroll structure '" + n + "'");
    const VerificationReport base = verify_carroll(*cs, opts);
    add(base);
    const CarrollDistribution d = carroll_distribution(*cs);
    CheckResult dist{"carroll.distribution", cs->name,
                     d.classification == Singularity::Uncertified ? Status::Uncertified : Status::Pass,
                     std::nullopt,
                     std::string(to_string(d.classification)) + ", generated by " + d.generator.to_string() + "; " +
                         d.detail};
    VerificationReport extra;
    extra.add(std::move(dist));
    extra.append(check_involutive(*cs, opts));
    extra.append(check_stationary(*cs));
    const CheckResult* contained = base.find("carroll.kernel_containment");
    if (contained && contained->status != Status::Pass) {
      extra.uncertified("carroll.quotient_metric", cs->name, "kernel containment failed");
    } else if (cs->pivot()) {
      const QuotientMetric q = quotient_metric(*cs, seed_);
      std::vector<std::string> names;
      for (std::size_t k : q.basis) names.push_back("[" + cs->pair->basis_section(k).name + "]");
      const std::string detail = "basis {" + join(names, ", ") + "}, matrix " + matrix_text(q.matrix) + "; " + q.detail;
      if (q.nondegenerate == Status::Fail) {
        extra.fail("carroll.quotient_metric", cs->name, matrix_text(q.matrix), detail);
      } else {
        extra.add({"carroll.quotient_metric", cs->name, q.nondegenerate, std::nullopt, detail});
      }
      if (q.lift_independent) {
        extra.pass("carroll.quotient_lift", cs->name, "two random lifts per class agree");
      } else {
        extra.fail("carroll.quotient_lift", cs->name, matrix_text(q.matrix), "lifts disagree");
      }
    } else {
      extra.uncertified("carroll.quotient_metric", cs->name, "sigma has no unit coefficient");
    }
    if (w.size() > 2) {
      if (w.size() != 5 || w[2] != "with" || w[3] != "connection") {
        semantic(s, "expected 'check carroll <name> with connection <C>'");
      }
      const Connection* c = connection(w[4]);
      if (!c) semantic(s, "unknown connection '" + w[4] + "'");
      extra.append(carroll_connection_check(*cs, *c));
    }
    add(extra);
  } else if (w[0] == "builtin") {
    add(verify_entry(build_entry(arg(1, "a catalog key")), opts));
  } else {
    semantic(s, "unknown check '" + w[0] + "'");
  }
}

void Session::run_levi_civita(const Statement& s) {
  const auto* g = option<std::string>(s, "metric");
  if (!g) semantic(s, "levi_civita needs metric=<name>");
  const Metric* m = metric(*g);
  if (!m) semantic(s, "unknown metric '" + *g + "'");
  Connection lc = levi_civita(m->pair(), *m);
  Connection named(s.name, lc.pair(), lc.christoffel());
  std::vector<std::string> entries;
  for (std::size_t a = 0; a < named.pair()->size(); ++a) {
    for (std::size_t b = 0; b < named.pair()->size(); ++b) {
      if (named.at(a, b).is_zero()) continue;
      entries.push_back("nabla_" + named.pair()->basis_section(a).name + " " + named.pair()->basis_section(b).name +
                        " = " + named.at(a, b).to_string());
    }
  }
  value("levi_civita", s.name + " from " + *g, entries.empty() ? "0" : join(entries, "; "));
  connections_.insert_or_assign(s.name, std::move(named));
}

void Session::run_catalog(const Statement& s) {
  if (s.words.size() == 1 && s.words[0] == "list") {
    value("catalog", "list", join(catalog_keys(), ", "));
    return;
  }
  if (s.words.size() == 2 && s.words[0] == "build") {
    const CatalogEntry e = build_entry(s.words[1]);
    value("catalog", "build " + e.key, e.notes);
    add(verify_entry(e, PairCheckOptions{samples_, seed_}));
    return;
  }
  semantic(s, "expected 'catalog list' or 'catalog build <key>'");
}

Report run_session(std::string_view source, const std::string& file, std::uint64_t seed) {
  Report report;
  report.file = file;
  report.seed = seed;
  SessionAst ast;
  try {
    ast = parse(source);
  } catch (const Error& e) {
    report.records.push_back(error_record({1, 1}, e.what()));
    return report;
  }
  Session session(seed);
  session.run(ast);
  report.records = session.records();
  return report;
}

}  // namespace rhoc::dsl
