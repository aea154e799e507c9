// Runs the eight acceptance criteria and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rhocarroll/builtins.hpp"
#include "rhocarroll/dsl/parser.hpp"
#include "rhocarroll/dsl/session.hpp"

using namespace rhoc;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

Element gen(const PresentationPtr& a, const std::string& n, int p = 1) {
  return Element::generator(a, *a->generator_index(n), p);
}

Section e(const PairPtr& p, std::size_t k) { return Section::basis(p, k); }

bool passes(const VerificationReport& r, const std::string& check) {
  const CheckResult* c = r.find(check);
  return c && c->status == Status::Pass;
}

// Quantum plane golden run.
Outcome criterion1() {
  Outcome o;
  const CatalogEntry c = build_quantum_plane();
  const auto& g = *c.metric;
  const Connection& nab = *c.connection;
  const Section dx = e(c.pair, 0);
  const Section dy = e(c.pair, 1);
  const VerificationReport r = verify_carroll(*c.carroll);
  o.require(passes(r, "carroll.kernel_containment"), "kernel containment");
  o.require(passes(r, "carroll.kernel_exact"), "kernel exactness not certified");
  o.require(nab.at(0, 0) == dy, "nabla_dx dx is not dy");
  o.require(check_compatibility(nab, g).passed(), "connection not metric compatible");
  // (nabla_dx G)(dx,dx) = -2 G(dy,dx) = 0
  const Element two_g = metric_eval(g, dy, dx) + metric_eval(g, dy, dx);
  o.require(two_g.is_zero(), "2 G(dy,dx) != 0");
  o.require(covariant_derivative_metric(nab, g, dx, dx, dx).is_zero(), "(nabla_dx G)(dx,dx) != 0");
  o.require(check_torsion_free(nab).passed(), "torsion");
  o.require(curvature(nab, dx, dy, dx).is_zero(), "R(dx,dy)dx != 0");
  o.require(curvature(nab, dx, dy, dy).is_zero(), "R(dx,dy)dy != 0");
  o.require(check_flat(nab).passed(), "curvature on basis triples");
  return o;
}

// Torus golden run.
Outcome criterion2() {
  Outcome o;
  const CatalogEntry c = build_nc_torus();
  const auto& a = c.algebra;
  const Metric& g = *c.metric;
  const Connection& nab = *c.connection;
  o.require(check_compatibility(nab, g).passed(), "trivial connection not compatible");
  o.require(check_flat(nab).passed(), "curvature");
  o.require(check_torsion_free(nab).passed(), "torsion");
  SampleSource src(2);
  for (int k = 0; k < 200 && o.ok; ++k) {
    // f = f_u eu + f_v ev, g = g_u eu + g_v ev, h = h_u eu + h_v ev, all homogeneous.
    const Element fu = src.homogeneous(a);
    const Element fv = src.homogeneous_of(a, *fu.degree());
    const Element gu = src.homogeneous(a);
    const Element gv = src.homogeneous_of(a, *gu.degree());
    const Element hu = src.homogeneous(a);
    const Element hv = src.homogeneous_of(a, *hu.degree());
    const Section f = fu * e(c.pair, 0) + fv * e(c.pair, 1);
    const Section gs = gu * e(c.pair, 0) + gv * e(c.pair, 1);
    const Section hs = hu * e(c.pair, 0) + hv * e(c.pair, 1);
    const DerivationCombo af = anchor_of(f);
    const Laurent r = a->rho_coefficient(*f.degree(), *gs.degree());
    const Element lhs = af.apply(metric_eval(g, gs, hs));
    const Element rhs = metric_eval(g, nabla(nab, f, gs), hs) + r * metric_eval(g, gs, nabla(nab, f, hs));
    const Element displayed = af.apply(gv) * hv + r * (gv * af.apply(hv));
    o.require(lhs == rhs, "compatibility fails at sample " + std::to_string(k));
    o.require(rhs == displayed, "expansion differs from a_f(g_v) h_v + rho g_v a_f(h_v) at sample " + std::to_string(k));
    o.require(covariant_derivative_metric(nab, g, f, gs, hs).is_zero(), "nabla G != 0");
  }
  return o;
}

// Axiom property suite on every catalog entry.
Outcome criterion3() {
  Outcome o;
  const std::size_t n = 200;
  for (const auto& key : catalog_keys()) {
    const CatalogEntry c = build_entry(key);
    const auto& a = c.algebra;
    SampleSource src(3);
    for (std::size_t k = 0; k < n && o.ok; ++k) {
      const Element f = src.homogeneous(a);
      const Element g = src.homogeneous(a);
      o.require(rho_commutator(f, g).is_zero(), key + ": rho-commutativity");
      for (const auto& d : c.derivations) {
        const Element rule = d.apply(f) * g + a->rho_coefficient(d.degree(), *f.degree()) * (f * d.apply(g));
        o.require(d.apply(f * g) == rule, key + ": derivation rule for " + d.name());
      }
      const auto& ds = c.derivations;
      auto pick = [&]() {
        const auto& d = ds[static_cast<std::size_t>(src.uniform(0, static_cast<int>(ds.size()) - 1))];
        return src.homogeneous(a) * ActionTable(a, d.action());
      };
      const ActionTable x = pick(), y = pick(), z = pick();
      if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
      const Laurent rxy = a->rho_coefficient(*x.degree(), *y.degree());
      const ActionTable jac = der_commutator(x, der_commutator(y, z)) - der_commutator(der_commutator(x, y), z) -
                              rxy * der_commutator(y, der_commutator(x, z));
      o.require(jac.is_zero(), key + ": Jacobi for der_commutator");
    }
    const PairCheckOptions opts{n, 3};
    o.require(verify_pair(c.pair, opts).passed(), key + ": pair axioms");
    o.require(check_tensoriality(as_operator(*c.connection), opts).passed(), key + ": tensoriality");
    if (!o.ok) break;
  }
  return o;
}

// Oracle equivalence.
Outcome criterion4() {
  Outcome o;
  for (const auto& key : catalog_keys()) {
    const CatalogEntry c = build_entry(key);
    SampleSource src(4);
    for (int k = 0; k < 1000 && o.ok; ++k) {
      const Word w = src.word(c.algebra, 8);
      o.require(normalize(c.algebra, w) == oracle::rewrite(c.algebra, w), key + ": normal form, word " + std::to_string(k));
    }
  }
  for (const std::string key : {"quantum_plane", "nc_torus"}) {
    const CatalogEntry c = build_entry(key);
    SampleSource src(44);
    for (int k = 0; k < 200 && o.ok; ++k) {
      const Section u = random_section(src, c.pair);
      const Section v = random_section(src, c.pair);
      o.require(anchor_of(bracket(u, v)).action() == der_commutator(anchor_of(u).action(), anchor_of(v).action()),
                key + ": bracket vs der_commutator");
    }
  }
  return o;
}

// Koszul / Levi-Civita uniqueness probe.
Outcome criterion5() {
  Outcome o;
  const CatalogEntry c = build_nc_torus();
  const Metric& h = *c.auxiliary_metric;
  const Connection lc = levi_civita(c.pair, h);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) o.require(lc.at(a, b).is_zero(), "nonzero Christoffel symbol");
  }
  o.require(check_torsion_free(lc).passed(), "torsion");
  o.require(check_compatibility(lc, h).passed(), "compatibility");
  SampleSource src(5);
  for (int k = 0; k < 10; ++k) {
    const auto a = static_cast<std::size_t>(src.uniform(0, 1));
    const auto b = static_cast<std::size_t>(src.uniform(0, 1));
    const auto m = static_cast<std::size_t>(src.uniform(0, 1));
    const Element coeff = Element::scalar(c.algebra, src.coefficient(c.algebra->params()));
    const Connection p = lc.with(a, b, lc.at(a, b) + coeff * e(c.pair, m));
    const bool broken = !check_torsion_free(p).passed() || !check_compatibility(p, h).passed();
    o.require(broken, "perturbation " + std::to_string(k) + " survives both checks");
  }
  return o;
}

// Stationarity and the quotient metric.
Outcome criterion6() {
  Outcome o;
  for (const std::string key : {"quantum_plane", "nc_torus"}) {
    const CatalogEntry c = build_entry(key);
    o.require(check_stationary(*c.carroll).passed(), key + ": not stationary");
    o.require(lie_derivative_metric(c.carroll->sigma, *c.metric).is_zero(), key + ": L_sigma G != 0");
    const QuotientMetric q = quotient_metric(*c.carroll);
    o.require(q.matrix.size() == 1 && q.matrix[0][0] == Element::one(c.algebra), key + ": quotient is not [1]");
    o.require(q.nondegenerate == Status::Pass, key + ": nondegeneracy not certified");
    o.require(q.lift_independent, key + ": quotient depends on the lift");
  }
  return o;
}

// Flow.
Outcome criterion7() {
  Outcome o;
  const CatalogEntry c = build_quantum_plane();
  const auto& a = c.algebra;
  const ActionTable dy(a, c.derivation("Dy")->action());
  const FlowSeries s = flow(dy, gen(a, "y"), 6);
  FlowSeries expected;
  Rational fact(1);
  for (int k = 0; k <= 6; ++k) {
    if (k) fact *= k;
    expected.coefficients.push_back(a->scalar(GaussianRational(Rational(1) / fact)) * gen(a, "y"));
  }
  o.require(s == expected, "flow(Dy, y, 6) = " + s.to_string());
  SampleSource src(7);
  for (int k = 0; k < 50 && o.ok; ++k) {
    const Element f = src.homogeneous(a) + src.homogeneous(a);
    const Element g = src.homogeneous(a) + src.homogeneous(a);
    o.require(flow(dy, f * g, 6) == truncated_product(flow(dy, f, 6), flow(dy, g, 6)),
              "multiplicativity at sample " + std::to_string(k));
  }
  return o;
}

// Negative controls, through the session layer so witnesses are re-parsed.
Outcome criterion8() {
  Outcome o;
  const std::string plane = R"(use builtin quantum_plane
)";
  const std::vector<std::pair<std::string, std::string>> cases{
      {"symmetric q_form", "group Z^2\nfactor q_form=[[0,1],[1,0]]\nalgebra bad\ngenerator x deg=(1,0)\ncheck factor\n"},
      {"corrupted structure constant",
       "use builtin nc_torus\npair T2 {\n basis eu; basis ev\n anchor eu -> Du; anchor ev -> Dv\n"
       " bracket [eu,ev] -> eu\n}\ncheck pair T2\n"},
      {"non-Killing metric",
       plane + "metric N on QP { (Dx,Dx) -> y }\ncarroll NC { pair=QP metric=N sigma=Dy }\ncheck carroll NC\n"},
      {"incompatible connection", plane + "connection B on QP { (Dx,Dx) -> Dx }\ncheck connection B metric G\n"},
  };
  for (const auto& [name, src] : cases) {
    dsl::Session s(8, 100);
    if (!s.run(dsl::parse(src))) {
      o.require(false, name + ": session error " + s.records().back().message);
      continue;
    }
    int fails = 0;
    for (const auto& r : s.records()) {
      if (r.kind != dsl::Record::Kind::Check || r.check.status != Status::Fail) continue;
      ++fails;
      if (!r.check.witness) {
        o.require(false, name + ": " + r.check.check + " has no witness");
        continue;
      }
      const dsl::Value v = s.evaluate(*r.check.witness);
      const bool nonzero = std::visit([](const auto& x) { return !x.is_zero(); }, v);
      o.require(nonzero, name + ": witness '" + *r.check.witness + "' evaluates to zero");
    }
    o.require(fails > 0, name + ": no failing check");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_ms;  // 0 means no limit
  };
  const std::vector<Criterion> criteria{
      {"quantum plane golden run", criterion1, 1000},
      {"torus golden run", criterion2, 1000},
      {"axiom property suite", criterion3, 30000},
      {"oracle equivalence", criterion4, 0},
      {"Koszul / Levi-Civita", criterion5, 1000},
      {"stationarity and quotient", criterion6, 0},
      {"flow", criterion7, 0},
      {"negative controls", criterion8, 0},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, run, limit_ms] : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.note = std::string("exception: ") + ex.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && limit_ms > 0 && ms > limit_ms) {
      o.ok = false;
      o.note = "over the " + std::to_string(static_cast<int>(limit_ms)) + " ms budget";
    }
    std::printf("criterion %d %-28s %s  (%.0f ms)%s%s\n", n, name, o.ok ? "PASS" : "FAIL", ms,
                o.note.empty() ? "" : "  ", o.note.c_str());
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
