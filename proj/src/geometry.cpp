#include "rhocarroll/geometry.hpp"

#include "rhocarroll/parallel.hpp"

namespace rhoc {

namespace {

struct Atom {
  std::size_t index;
  Element coeff;
  Degree degree;  // of the coefficient
};

std::vector<Atom> split(const Section& u) {
  std::vector<Atom> out;
  for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
    for (auto& a : u.coeff(k).atoms()) {
      Degree d = *a.degree();
      out.push_back({k, std::move(a), std::move(d)});
    }
  }
  return out;
}

std::vector<std::pair<Degree, Section>> components(const Section& s) {
  std::vector<std::pair<Degree, Section>> out;
  for (auto& [d, c] : s.homogeneous_components()) out.emplace_back(d, c);
  return out;
}

void check_pair(const PairPtr& expected, const Section& s, const char* what) {
  if (s.pair() != expected) throw Error(ErrorCode::PairMismatch, std::string(what) + ": section of another pair");
}

std::string paren(const Laurent& c) { return c.needs_parens() ? "(" + c.to_string() + ")" : c.to_string(); }

}  // namespace

// ---------------------------------------------------------------------------
// Metric

Metric::Metric(std::string name, PairPtr pair, ElementMatrix matrix)
    : name_(std::move(name)), pair_(std::move(pair)), matrix_(std::move(matrix)) {
  const std::size_t n = pair_->size();
  if (matrix_.size() != n) throw Error(ErrorCode::ShapeMismatch, "metric '" + name_ + "' is not n x n");
  for (const auto& row : matrix_) {
    if (row.size() != n) throw Error(ErrorCode::ShapeMismatch, "metric '" + name_ + "' is not n x n");
    for (const auto& e : row) {
      if (e.presentation() != pair_->algebra()) {
        throw Error(ErrorCode::PresentationMismatch, "metric '" + name_ + "' has an entry outside the algebra");
      }
    }
  }
}

Metric Metric::zero(std::string name, const PairPtr& pair) {
  const std::size_t n = pair->size();
  return Metric(std::move(name), pair, ElementMatrix(n, std::vector<Element>(n, Element(pair->algebra()))));
}

Element metric_eval(const Metric& g, const Section& u, const Section& v) {
  check_pair(g.pair(), u, "metric_eval");
  check_pair(g.pair(), v, "metric_eval");
  const auto& alg = g.pair()->algebra();
  Element out(alg);
  const auto us = split(u);
  const auto vs = split(v);
  for (const auto& a : us) {
    const Degree du = a.degree + g.pair()->basis_section(a.index).degree;
    for (const auto& b : vs) {
      const Element& gab = g.entry(a.index, b.index);
      if (gab.is_zero()) continue;
      out += alg->rho_coefficient(du, b.degree) * (b.coeff * a.coeff * gab);
    }
  }
  return out;
}

VerificationReport check_metric(const Metric& g) {
  VerificationReport report;
  const auto& pair = g.pair();
  const auto& alg = pair->algebra();
  const std::size_t n = g.size();
  bool deg_ok = true, sym_ok = true;
  for (std::size_t a = 0; a < n; ++a) {
    const auto& ea = pair->basis_section(a);
    for (std::size_t b = 0; b < n; ++b) {
      const auto& eb = pair->basis_section(b);
      const Element& gab = g.entry(a, b);
      if (deg_ok && !gab.is_zero()) {
        auto d = gab.degree();
        if (!d || *d != ea.degree + eb.degree) {
          deg_ok = false;
          report.fail("metric.degree", g.name(), gab.to_string(),
                      g.name() + "(" + ea.name + "," + eb.name + ") should have degree " +
                          (ea.degree + eb.degree).to_string());
        }
      }
      if (sym_ok && a <= b) {
        const Laurent r = alg->rho_coefficient(ea.degree, eb.degree);
        Element res = gab - r * g.entry(b, a);
        if (!res.is_zero()) {
          sym_ok = false;
          report.fail("metric.symmetry", g.name(), res.to_string(),
                      g.name() + "(" + ea.name + "," + eb.name + ") - " + paren(r) + "*" + g.name() + "(" + eb.name +
                          "," + ea.name + ")");
        }
      }
    }
  }
  if (deg_ok) report.pass("metric.degree", g.name());
  if (sym_ok) report.pass("metric.symmetry", g.name());
  return report;
}

// ---------------------------------------------------------------------------
// TensorValue

TensorValue::TensorValue(PairPtr pair, Degree degree, std::size_t valency, std::map<Index, Element> table)
    : pair_(std::move(pair)), degree_(std::move(degree)), valency_(valency) {
  for (auto& [idx, v] : table) {
    if (idx.size() != valency_) throw Error(ErrorCode::ShapeMismatch, "tensor index of the wrong valency");
    if (!v.is_zero()) table_.emplace(idx, std::move(v));
  }
}

Element TensorValue::at(const Index& idx) const {
  auto it = table_.find(idx);
  return it == table_.end() ? Element(pair_->algebra()) : it->second;
}

std::optional<std::pair<TensorValue::Index, Element>> TensorValue::first_nonzero() const {
  if (table_.empty()) return std::nullopt;
  return *table_.begin();
}

Element TensorValue::evaluate(const std::vector<Section>& args) const {
  if (args.size() != valency_) throw Error(ErrorCode::ShapeMismatch, "tensor evaluated on the wrong number of sections");
  const auto& alg = pair_->algebra();
  std::vector<std::vector<Atom>> atoms;
  for (const auto& s : args) {
    check_pair(pair_, s, "tensor evaluation");
    atoms.push_back(split(s));
  }
  Element out(alg);
  Index idx(valency_);
  auto visit = [&](auto&& self, std::size_t i, const Degree& shift, const Element& prefix, const Laurent& r) -> void {
    if (i == valency_) {
      auto it = table_.find(idx);
      if (it != table_.end()) out += r * (prefix * it->second);
      return;
    }
    for (const auto& a : atoms[i]) {
      idx[i] = a.index;
      self(self, i + 1, shift + pair_->basis_section(a.index).degree, prefix * a.coeff,
           r * alg->rho_coefficient(shift, a.degree));
    }
  };
  visit(visit, 0, degree_, Element::one(alg), Laurent(1));
  return out;
}

// ---------------------------------------------------------------------------
// Lie derivative

Element lie_derivative_metric_at(const Section& u, const Metric& g, const Section& v, const Section& w) {
  const auto& alg = g.pair()->algebra();
  Element out(alg);
  for (const auto& [du, uc] : components(u)) {
    const Element gvw = metric_eval(g, v, w);
    out += anchor_of(uc).apply(gvw) - metric_eval(g, bracket(uc, v), w);
    for (const auto& [dv, vc] : components(v)) {
      out -= alg->rho_coefficient(du, dv) * metric_eval(g, vc, bracket(uc, w));
    }
  }
  return out;
}

TensorValue lie_derivative_metric(const Section& u, const Metric& g) {
  check_pair(g.pair(), u, "lie_derivative_metric");
  auto d = u.degree();
  if (!d) throw Error(ErrorCode::NotHomogeneous, "Lie derivative along an inhomogeneous section");
  const auto& pair = g.pair();
  std::map<TensorValue::Index, Element> table;
  for (std::size_t b = 0; b < pair->size(); ++b) {
    for (std::size_t c = 0; c < pair->size(); ++c) {
      table.emplace(TensorValue::Index{b, c},
                    lie_derivative_metric_at(u, g, Section::basis(pair, b), Section::basis(pair, c)));
    }
  }
  return TensorValue(pair, *d, 2, std::move(table));
}

bool is_killing(const Section& u, const Metric& g) {
  for (const auto& [d, c] : components(u)) {
    if (!lie_derivative_metric(c, g).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Connection

Connection::Connection(std::string name, PairPtr pair, std::vector<std::vector<Section>> christoffel)
    : name_(std::move(name)), pair_(std::move(pair)), christoffel_(std::move(christoffel)) {
  const std::size_t n = pair_->size();
  if (christoffel_.size() != n) throw Error(ErrorCode::ShapeMismatch, "connection '" + name_ + "' is not n x n");
  for (const auto& row : christoffel_) {
    if (row.size() != n) throw Error(ErrorCode::ShapeMismatch, "connection '" + name_ + "' is not n x n");
    for (const auto& s : row) check_pair(pair_, s, "connection");
  }
}

Connection Connection::trivial(std::string name, const PairPtr& pair) {
  const std::size_t n = pair->size();
  return Connection(std::move(name), pair,
                    std::vector<std::vector<Section>>(n, std::vector<Section>(n, Section::zero(pair))));
}

Connection Connection::with(std::size_t a, std::size_t b, Section value) const {
  Connection out = *this;
  check_pair(pair_, value, "connection");
  out.christoffel_.at(a).at(b) = std::move(value);
  return out;
}

Section nabla(const Connection& c, const Section& u, const Section& v) {
  const auto& pair = c.pair();
  check_pair(pair, u, "nabla");
  check_pair(pair, v, "nabla");
  const auto& alg = pair->algebra();
  Section out = Section::zero(pair);
  const auto vs = split(v);
  for (std::size_t a = 0; a < u.coeffs().size(); ++a) {
    const Element& f = u.coeff(a);
    if (f.is_zero()) continue;
    Section inner = Section::zero(pair);
    for (const auto& b : vs) {
      const Element ag = pair->anchor(a).apply(b.coeff);
      if (!ag.is_zero()) {
        std::vector<Element> cs(pair->size(), Element(alg));
        cs[b.index] = ag;
        inner += Section(pair, std::move(cs));
      }
      const Section& gamma = c.at(a, b.index);
      if (!gamma.is_zero()) {
        inner += alg->rho_coefficient(pair->basis_section(a).degree, b.degree) * (b.coeff * gamma);
      }
    }
    out += f * inner;
  }
  return out;
}

CovariantOperator as_operator(const Connection& c) {
  return {c.pair(), [c](const Section& u, const Section& v) { return nabla(c, u, v); }};
}

Section curvature(const CovariantOperator& op, const Section& u, const Section& v, const Section& w) {
  const auto& alg = op.pair->algebra();
  Section out = Section::zero(op.pair);
  for (const auto& [du, uc] : components(u)) {
    for (const auto& [dv, vc] : components(v)) {
      out += op.apply(uc, op.apply(vc, w)) - alg->rho_coefficient(du, dv) * op.apply(vc, op.apply(uc, w)) -
             op.apply(bracket(uc, vc), w);
    }
  }
  return out;
}

Section torsion(const CovariantOperator& op, const Section& u, const Section& v) {
  const auto& alg = op.pair->algebra();
  Section out = Section::zero(op.pair);
  for (const auto& [du, uc] : components(u)) {
    for (const auto& [dv, vc] : components(v)) {
      out += op.apply(uc, vc) - alg->rho_coefficient(du, dv) * op.apply(vc, uc) - bracket(uc, vc);
    }
  }
  return out;
}

Section curvature(const Connection& c, const Section& u, const Section& v, const Section& w) {
  return curvature(as_operator(c), u, v, w);
}

Section torsion(const Connection& c, const Section& u, const Section& v) { return torsion(as_operator(c), u, v); }

Element covariant_derivative_metric(const CovariantOperator& op, const Metric& g, const Section& u,
                                    const Section& v, const Section& w) {
  const auto& alg = op.pair->algebra();
  Element out(alg);
  for (const auto& [du, uc] : components(u)) {
    out += anchor_of(uc).apply(metric_eval(g, v, w)) - metric_eval(g, op.apply(uc, v), w);
    for (const auto& [dv, vc] : components(v)) {
      out -= alg->rho_coefficient(du, dv) * metric_eval(g, vc, op.apply(uc, w));
    }
  }
  return out;
}

Element covariant_derivative_metric(const Connection& c, const Metric& g, const Section& u, const Section& v,
                                    const Section& w) {
  return covariant_derivative_metric(as_operator(c), g, u, v, w);
}

VerificationReport check_connection(const Connection& c) {
  VerificationReport report;
  const auto& pair = c.pair();
  for (std::size_t a = 0; a < pair->size(); ++a) {
    for (std::size_t b = 0; b < pair->size(); ++b) {
      const Section& s = c.at(a, b);
      if (s.is_zero()) continue;
      const Degree want = pair->basis_section(a).degree + pair->basis_section(b).degree;
      auto d = s.degree();
      if (!d || *d != want) {
        report.fail("connection.degree", c.name(), s.to_string(),
                    "nabla_" + pair->basis_section(a).name + " " + pair->basis_section(b).name +
                        " should have degree " + want.to_string());
        return report;
      }
    }
  }
  report.pass("connection.degree", c.name());
  return report;
}

VerificationReport check_torsion_free(const Connection& c) {
  VerificationReport report;
  const auto& pair = c.pair();
  const std::size_t n = pair->size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Section t = torsion(c, Section::basis(pair, a), Section::basis(pair, b));
      if (!t.is_zero()) {
        report.fail("connection.torsion", c.name(), t.to_string(),
                    "T(" + pair->basis_section(a).name + "," + pair->basis_section(b).name + ")");
        return report;
      }
    }
  }
  report.pass("connection.torsion", c.name(), "all basis pairs");
  return report;
}

VerificationReport check_flat(const Connection& c) {
  VerificationReport report;
  const auto& pair = c.pair();
  const std::size_t n = pair->size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t k = 0; k < n; ++k) {
        Section r = curvature(c, Section::basis(pair, a), Section::basis(pair, b), Section::basis(pair, k));
        if (!r.is_zero()) {
          report.fail("connection.curvature", c.name(), r.to_string(),
                      "R(" + pair->basis_section(a).name + "," + pair->basis_section(b).name + ")" +
                          pair->basis_section(k).name);
          return report;
        }
      }
    }
  }
  report.pass("connection.curvature", c.name(), "all basis triples");
  return report;
}

VerificationReport check_compatibility(const Connection& c, const Metric& g) {
  VerificationReport report;
  const auto& pair = c.pair();
  if (g.pair() != pair) throw Error(ErrorCode::PairMismatch, "connection and metric on different pairs");
  const std::size_t n = pair->size();
  const std::string target = c.name() + " / " + g.name();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t k = 0; k < n; ++k) {
        Element r = covariant_derivative_metric(c, g, Section::basis(pair, a), Section::basis(pair, b),
                                                Section::basis(pair, k));
        if (!r.is_zero()) {
          report.fail("connection.compatible", target, r.to_string(),
                      "(nabla_" + pair->basis_section(a).name + " " + g.name() + ")(" + pair->basis_section(b).name +
                          "," + pair->basis_section(k).name + ")");
          return report;
        }
      }
    }
  }
  report.pass("connection.compatible", target, "all basis triples");
  return report;
}

namespace {

struct TensorSample {
  Section u, v, w;
  Element f;
};

struct TensorResidual {
  std::vector<std::pair<std::string, Section>> curvature;
  std::vector<std::pair<std::string, Section>> torsion;
  Section curvature_skew;
  Section torsion_skew;
};

}  // namespace

VerificationReport check_tensoriality(const CovariantOperator& op, const PairCheckOptions& opts) {
  const auto& pair = op.pair;
  const auto& alg = pair->algebra();
  SampleSource src(opts.seed);
  std::vector<TensorSample> samples;
  samples.reserve(opts.samples);
  for (std::size_t k = 0; k < opts.samples; ++k) {
    Section u = random_section(src, pair);
    Section v = random_section(src, pair);
    Section w = random_section(src, pair);
    Element f = src.homogeneous(alg);
    samples.push_back({std::move(u), std::move(v), std::move(w), std::move(f)});
  }
  const auto residuals = map_samples(samples, [&](const TensorSample& s) {
    const Degree du = *s.u.degree(), dv = *s.v.degree(), df = *s.f.degree();
    const Section r = curvature(op, s.u, s.v, s.w);
    const Section t = torsion(op, s.u, s.v);
    TensorResidual out{{}, {}, Section::zero(pair), Section::zero(pair)};
    out.curvature.emplace_back("R(f u,v)w - f R(u,v)w", curvature(op, s.f * s.u, s.v, s.w) - s.f * r);
    out.curvature.emplace_back("R(u,f v)w - rho(|u|,|f|) f R(u,v)w",
                               curvature(op, s.u, s.f * s.v, s.w) - alg->rho_coefficient(du, df) * (s.f * r));
    out.curvature.emplace_back("R(u,v)(f w) - rho(|u|+|v|,|f|) f R(u,v)w",
                               curvature(op, s.u, s.v, s.f * s.w) - alg->rho_coefficient(du + dv, df) * (s.f * r));
    out.torsion.emplace_back("T(f u,v) - f T(u,v)", torsion(op, s.f * s.u, s.v) - s.f * t);
    out.torsion.emplace_back("T(u,f v) - rho(|u|,|f|) f T(u,v)",
                             torsion(op, s.u, s.f * s.v) - alg->rho_coefficient(du, df) * (s.f * t));
    const Laurent ruv = alg->rho_coefficient(du, dv);
    out.curvature_skew = r + ruv * curvature(op, s.v, s.u, s.w);
    out.torsion_skew = t + ruv * torsion(op, s.v, s.u);
    return out;
  });

  VerificationReport report;
  const std::string target = pair->name();
  const std::string sampled = std::to_string(opts.samples) + " samples";
  auto at = [&](std::size_t k) {
    const auto& s = samples[k];
    return " at u=" + s.u.to_string() + ", v=" + s.v.to_string() + ", w=" + s.w.to_string() + ", f=" + s.f.to_string();
  };
  bool curv_ok = true, tors_ok = true, cskew_ok = true, tskew_ok = true;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    const auto& r = residuals[k];
    for (const auto& [what, res] : r.curvature) {
      if (curv_ok && !res.is_zero()) {
        curv_ok = false;
        report.fail("tensor.curvature", target, res.to_string(), what + at(k));
      }
    }
    for (const auto& [what, res] : r.torsion) {
      if (tors_ok && !res.is_zero()) {
        tors_ok = false;
        report.fail("tensor.torsion", target, res.to_string(), what + at(k));
      }
    }
    if (cskew_ok && !r.curvature_skew.is_zero()) {
      cskew_ok = false;
      report.fail("tensor.curvature_skew", target, r.curvature_skew.to_string(),
                  "R(u,v)w + rho(|u|,|v|) R(v,u)w" + at(k));
    }
    if (tskew_ok && !r.torsion_skew.is_zero()) {
      tskew_ok = false;
      report.fail("tensor.torsion_skew", target, r.torsion_skew.to_string(),
                  "T(u,v) + rho(|u|,|v|) T(v,u)" + at(k));
    }
  }
  if (curv_ok) report.pass("tensor.curvature", target, sampled);
  if (tors_ok) report.pass("tensor.torsion", target, sampled);
  if (cskew_ok) report.pass("tensor.curvature_skew", target, sampled);
  if (tskew_ok) report.pass("tensor.torsion_skew", target, sampled);
  return report;
}

// ---------------------------------------------------------------------------
// Koszul

std::optional<std::vector<std::vector<GaussianRational>>> invert_scalar_matrix(
    std::vector<std::vector<GaussianRational>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<GaussianRational>> inv(n, std::vector<GaussianRational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const GaussianRational p = m[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] *= p;
      inv[col][j] *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const GaussianRational factor = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= factor * m[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

Connection levi_civita(const PairPtr& pair, const Metric& g, const std::optional<ElementMatrix>& g_inverse) {
  if (g.pair() != pair) throw Error(ErrorCode::PairMismatch, "metric '" + g.name() + "' is on another pair");
  const auto& alg = pair->algebra();
  const std::size_t n = pair->size();

  bool scalar = true;
  std::vector<std::vector<GaussianRational>> gs(n, std::vector<GaussianRational>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Element& e = g.entry(a, b);
      if (!e.is_field_scalar()) {
        scalar = false;
        continue;
      }
      if (!e.is_zero()) gs[a][b] = e.terms().begin()->second.constant_value();
    }
  }

  ElementMatrix inv(n, std::vector<Element>(n, Element(alg)));
  if (scalar) {
    auto s = invert_scalar_matrix(gs);
    if (!s) throw Error(ErrorCode::KernelNonTrivial, "metric '" + g.name() + "' is degenerate");
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) inv[a][b] = Element::scalar(alg, alg->scalar((*s)[a][b]));
    }
  } else if (g_inverse) {
    inv = *g_inverse;
    if (inv.size() != n) throw Error(ErrorCode::ShapeMismatch, "supplied inverse is not n x n");
    for (const auto& row : inv) {
      if (row.size() != n) throw Error(ErrorCode::ShapeMismatch, "supplied inverse is not n x n");
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        Element left(alg), right(alg);
        for (std::size_t k = 0; k < n; ++k) {
          left += g.entry(a, k) * inv[k][b];
          right += inv[a][k] * g.entry(k, b);
        }
        const Element id = a == b ? Element::one(alg) : Element(alg);
        if (left != id || right != id) {
          throw Error(ErrorCode::InverseInvalid, "supplied inverse does not invert '" + g.name() + "'");
        }
      }
    }
  } else {
    throw Error(ErrorCode::InverseUnavailable,
                "metric '" + g.name() + "' has non-scalar entries and no inverse was supplied");
  }

  auto e = [&](std::size_t k) { return Section::basis(pair, k); };
  auto deg = [&](std::size_t k) { return pair->basis_section(k).degree; };
  auto a_of = [&](std::size_t k, const Element& f) { return pair->anchor(k).apply(f); };
  const Laurent half = alg->scalar(GaussianRational(Rational(1, 2)));

  std::vector<std::vector<Section>> table(n, std::vector<Section>(n, Section::zero(pair)));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<Element> rhs;
      for (std::size_t w = 0; w < n; ++w) {
        const Laurent r1 = alg->rho_coefficient(deg(u), deg(v) + deg(w));
        const Laurent r2 = alg->rho_coefficient(deg(w), deg(u) + deg(v));
        rhs.push_back(a_of(u, g.entry(v, w)) + metric_eval(g, bracket(e(u), e(v)), e(w)) +
                      r1 * (a_of(v, g.entry(w, u)) - metric_eval(g, bracket(e(v), e(w)), e(u))) -
                      r2 * (a_of(w, g.entry(u, v)) - metric_eval(g, bracket(e(w), e(u)), e(v))));
      }
      std::vector<Element> gamma(n, Element(alg));
      for (std::size_t mu = 0; mu < n; ++mu) {
        for (std::size_t w = 0; w < n; ++w) gamma[mu] += rhs[w] * inv[w][mu];
        gamma[mu] = half * gamma[mu];
      }
      table[u][v] = Section(pair, std::move(gamma));
    }
  }
  Connection c("LC(" + g.name() + ")", pair, std::move(table));
  VerificationReport check = check_torsion_free(c);
  check.append(check_compatibility(c, g));
  if (const auto* f = check.first_failure()) {
    throw Error(ErrorCode::KoszulInconsistent,
                "Koszul solution fails " + f->check + ": " + f->detail + " = " + f->witness.value_or(""));
  }
  return c;
}

}  // namespace rhoc
