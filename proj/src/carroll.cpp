#include "rhocarroll/carroll.hpp"

#include "rhocarroll/parallel.hpp"

namespace rhoc {

std::optional<std::size_t> CarrollStructure::pivot() const {
  for (std::size_t k = 0; k < sigma.coeffs().size(); ++k) {
    if (sigma.coeff(k).unit_inverse()) return k;
  }
  return std::nullopt;
}

CarrollStructure make_carroll(std::string name, Metric metric, Section sigma) {
  if (sigma.pair() != metric.pair()) {
    throw Error(ErrorCode::PairMismatch, "sigma and metric of '" + name + "' live on different pairs");
  }
  PairPtr pair = metric.pair();
  return CarrollStructure{std::move(name), std::move(pair), std::move(metric), std::move(sigma)};
}

std::string_view to_string(Singularity s) {
  switch (s) {
    case Singularity::NonSingular: return "non-singular";
    case Singularity::Singular: return "singular";
    case Singularity::Uncertified: return "uncertified";
  }
  return "unknown";
}

namespace {

// Complementary block of the metric with the pivot row and column removed.
struct Block {
  std::vector<std::size_t> basis;
  ElementMatrix matrix;
  bool scalar = true;
  std::vector<std::vector<GaussianRational>> values;
};

Block complement(const CarrollStructure& cs, std::size_t pivot) {
  Block b;
  for (std::size_t k = 0; k < cs.pair->size(); ++k) {
    if (k != pivot) b.basis.push_back(k);
  }
  for (std::size_t i : b.basis) {
    std::vector<Element> row;
    std::vector<GaussianRational> vals;
    for (std::size_t j : b.basis) {
      const Element& e = cs.metric.entry(i, j);
      row.push_back(e);
      if (!e.is_field_scalar()) {
        b.scalar = false;
        vals.emplace_back(0);
      } else {
        vals.push_back(e.is_zero() ? GaussianRational(0) : e.terms().begin()->second.constant_value());
      }
    }
    b.matrix.push_back(std::move(row));
    b.values.push_back(std::move(vals));
  }
  return b;
}

// Scalar vector c != 0 with c * block = 0, when the scalar block is singular.
std::optional<std::vector<GaussianRational>> left_null_vector(std::vector<std::vector<GaussianRational>> m) {
  const std::size_t n = m.size();
  if (n == 0) return std::nullopt;
  // Row reduce the transpose: solutions of m^T c = 0.
  std::vector<std::vector<GaussianRational>> t(n, std::vector<GaussianRational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = m[j][i];
  }
  std::vector<int> pivot_col(n, -1);
  std::size_t row = 0;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && t[p][col].is_zero()) ++p;
    if (p == n) continue;
    std::swap(t[p], t[row]);
    const GaussianRational inv = t[row][col].inverse();
    for (auto& x : t[row]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || t[r][col].is_zero()) continue;
      const GaussianRational f = t[r][col];
      for (std::size_t j = 0; j < n; ++j) t[r][j] -= f * t[row][j];
    }
    pivot_col[row] = static_cast<int>(col);
    is_pivot[col] = true;
    ++row;
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<GaussianRational> c(n);
    c[free] = 1;
    for (std::size_t r = 0; r < row; ++r) c[static_cast<std::size_t>(pivot_col[r])] = -t[r][free];
    return c;
  }
  return std::nullopt;
}

// h with s = h * sigma, using the pivot coefficient; nullopt when s - h sigma != 0.
std::pair<Element, Section> reduce_against(const Section& s, const Section& sigma, std::size_t pivot) {
  const Element inv = *sigma.coeff(pivot).unit_inverse();
  Element h = s.coeff(pivot) * inv;
  Section residual = s - h * sigma;
  return {std::move(h), std::move(residual)};
}

}  // namespace

VerificationReport verify_carroll(const CarrollStructure& cs, const PairCheckOptions& opts) {
  VerificationReport report;
  const auto& pair = cs.pair;
  const auto& alg = pair->algebra();
  const std::string& target = cs.name;
  const Degree zero = Degree::zero(alg->group());

  auto d = cs.sigma.degree();
  if (cs.sigma.is_zero()) {
    report.fail("carroll.sigma_degree", target, "0", "sigma is the zero section");
  } else if (!d || *d != zero) {
    report.fail("carroll.sigma_degree", target, cs.sigma.to_string(),
                "sigma has degree " + (d ? d->to_string() : std::string("inhomogeneous")) + ", expected " +
                    zero.to_string());
  } else {
    report.pass("carroll.sigma_degree", target);
  }

  bool contained = true;
  for (std::size_t b = 0; b < pair->size() && contained; ++b) {
    const Section eb = Section::basis(pair, b);
    Element left = metric_eval(cs.metric, cs.sigma, eb);
    Element right = metric_eval(cs.metric, eb, cs.sigma);
    if (!left.is_zero() || !right.is_zero()) {
      contained = false;
      const bool l = !left.is_zero();
      report.fail("carroll.kernel_containment", target, (l ? left : right).to_string(),
                  l ? "G(sigma," + pair->basis_section(b).name + ")" : "G(" + pair->basis_section(b).name + ",sigma)");
    }
  }
  if (contained) report.pass("carroll.kernel_containment", target);

  const auto pivot = cs.pivot();
  if (!contained) {
    report.uncertified("carroll.kernel_exact", target, "kernel containment failed");
  } else if (!pivot) {
    report.uncertified("carroll.kernel_exact", target, "sigma has no unit coefficient; not basis-extendable");
  } else {
    Block b = complement(cs, *pivot);
    if (!b.scalar) {
      report.uncertified("carroll.kernel_exact", target, "complementary block has non-scalar entries");
    } else if (!invert_scalar_matrix(b.values)) {
      auto c = left_null_vector(b.values);
      Section w = Section::zero(pair);
      for (std::size_t i = 0; i < b.basis.size(); ++i) {
        w += Element::scalar(alg, alg->scalar((*c)[i])) * Section::basis(pair, b.basis[i]);
      }
      report.fail("carroll.kernel_exact", target, w.to_string(), "section in ker G outside A*sigma");
    } else if (!alg->integral_domain()) {
      report.uncertified("carroll.kernel_exact", target,
                         "complementary block invertible but the algebra is not flagged an integral domain");
    } else {
      report.pass("carroll.kernel_exact", target, "certified: invertible scalar complementary block");
    }
  }

  // l-closure: [sigma,sigma] and sampled [f sigma, g sigma].
  bool closed = true;
  const Section ss = bracket(cs.sigma, cs.sigma);
  if (!ss.is_zero()) {
    closed = false;
    report.fail("carroll.l_closure", target, ss.to_string(), "[sigma,sigma]");
  }
  if (closed) {
    SampleSource src(opts.seed);
    std::vector<std::pair<Element, Element>> samples;
    for (std::size_t k = 0; k < opts.samples; ++k) {
      Element f = src.homogeneous(alg);
      Element g = src.homogeneous(alg);
      samples.emplace_back(std::move(f), std::move(g));
    }
    const DerivationCombo as = anchor_of(cs.sigma);
    const auto residuals = map_samples(samples, [&](const std::pair<Element, Element>& s) {
      const auto& [f, g] = s;
      const Laurent r = alg->rho_coefficient(*f.degree(), *g.degree());
      return bracket(f * cs.sigma, g * cs.sigma) - (f * as.apply(g) - r * (g * as.apply(f))) * cs.sigma;
    });
    for (std::size_t k = 0; k < residuals.size(); ++k) {
      if (residuals[k].is_zero()) continue;
      closed = false;
      report.fail("carroll.l_closure", target, residuals[k].to_string(),
                  "[f sigma, g sigma] - (f a_sigma(g) - rho(|f|,|g|) g a_sigma(f)) sigma at f=" +
                      samples[k].first.to_string() + ", g=" + samples[k].second.to_string());
      break;
    }
    if (closed) report.pass("carroll.l_closure", target, std::to_string(opts.samples) + " samples");
  }
  return report;
}

CarrollDistribution carroll_distribution(const CarrollStructure& cs) {
  const auto& alg = cs.pair->algebra();
  DerivationCombo gen = anchor_of(cs.sigma);
  const ActionTable action = gen.action();
  if (action.is_zero()) {
    return {gen, Singularity::Singular, Element::one(alg), "a_sigma = 0, so 1 * a_sigma = 0"};
  }
  if (alg->integral_domain()) {
    for (std::size_t k = 0; k < gen.coeffs().size(); ++k) {
      if (gen.coeffs()[k].unit_inverse()) {
        return {gen, Singularity::NonSingular, std::nullopt,
                "coefficient on " + gen.basis()->at(k).name() + " is a unit over an integral domain"};
      }
    }
  }
  for (const auto& [d, ms] : small_monomials(*alg, 2)) {
    for (const auto& m : ms) {
      Element f = Element::monomial(alg, m);
      if ((f * action).is_zero()) {
        return {gen, Singularity::Singular, f, f.to_string() + " * a_sigma = 0"};
      }
    }
  }
  return {gen, Singularity::Uncertified, std::nullopt, "no unit coefficient certificate and no monomial witness"};
}

VerificationReport check_involutive(const CarrollStructure& cs, const PairCheckOptions& opts) {
  VerificationReport report;
  const auto& alg = cs.pair->algebra();
  const ActionTable x = anchor_of(cs.sigma).action();
  std::optional<std::pair<std::size_t, Element>> probe;
  for (std::size_t j = 0; j < alg->size() && !probe; ++j) {
    if (auto inv = x.values()[j].unit_inverse()) probe.emplace(j, std::move(*inv));
  }
  if (x.is_zero()) {
    report.pass("carroll.involutive", cs.name, "a_sigma = 0");
    return report;
  }
  if (!probe) {
    report.uncertified("carroll.involutive", cs.name, "a_sigma takes no unit value on a generator");
    return report;
  }
  SampleSource src(opts.seed);
  std::vector<std::pair<Element, Element>> samples;
  for (std::size_t k = 0; k < opts.samples; ++k) {
    Element f = src.homogeneous(alg);
    Element g = src.homogeneous(alg);
    samples.emplace_back(std::move(f), std::move(g));
  }
  const auto residuals = map_samples(samples, [&](const std::pair<Element, Element>& s) {
    const ActionTable c = der_commutator(s.first * x, s.second * x);
    const Element h = c.values()[probe->first] * probe->second;
    return c - h * x;
  });
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    for (std::size_t j = 0; j < alg->size(); ++j) {
      const Element& r = residuals[k].values()[j];
      if (r.is_zero()) continue;
      report.fail("carroll.involutive", cs.name, r.to_string(),
                  "[f a_sigma, g a_sigma] - h a_sigma on " + alg->generator(j).name + " at f=" +
                      samples[k].first.to_string() + ", g=" + samples[k].second.to_string());
      return report;
    }
  }
  report.pass("carroll.involutive", cs.name, std::to_string(opts.samples) + " samples");
  return report;
}

VerificationReport check_stationary(const CarrollStructure& cs) {
  VerificationReport report;
  const TensorValue l = lie_derivative_metric(cs.sigma, cs.metric);
  if (auto nz = l.first_nonzero()) {
    report.fail("carroll.stationary", cs.name, nz->second.to_string(),
                "(L_sigma " + cs.metric.name() + ")(" + cs.pair->basis_section(nz->first[0]).name + "," +
                    cs.pair->basis_section(nz->first[1]).name + ")");
  } else {
    report.pass("carroll.stationary", cs.name, "sigma is Killing");
  }
  return report;
}

VerificationReport carroll_connection_check(const CarrollStructure& cs, const Connection& c) {
  VerificationReport report = check_compatibility(c, cs.metric);
  const auto pivot = cs.pivot();
  const std::string target = cs.name + " / " + c.name();
  if (!pivot) {
    report.uncertified("carroll.nabla_sigma", target, "sigma has no unit coefficient");
    return report;
  }
  for (std::size_t a = 0; a < cs.pair->size(); ++a) {
    const Section ns = nabla(c, Section::basis(cs.pair, a), cs.sigma);
    auto [h, residual] = reduce_against(ns, cs.sigma, *pivot);
    if (!residual.is_zero()) {
      report.fail("carroll.nabla_sigma", target, residual.to_string(),
                  "nabla_" + cs.pair->basis_section(a).name + " sigma - (" + h.to_string() + ")*sigma");
      return report;
    }
  }
  report.pass("carroll.nabla_sigma", target, "nabla_e sigma in l for every basis section");
  return report;
}

QuotientMetric quotient_metric(const CarrollStructure& cs, std::uint64_t seed) {
  const auto pivot = cs.pivot();
  if (!pivot) {
    throw Error(ErrorCode::SigmaNotBasisExtendable, "sigma of '" + cs.name + "' has no unit coefficient");
  }
  const auto& alg = cs.pair->algebra();
  Block b = complement(cs, *pivot);
  QuotientMetric out;
  out.basis = b.basis;
  out.matrix = b.matrix;
  if (!b.scalar) {
    out.nondegenerate = Status::Uncertified;
    out.detail = "non-scalar entries";
  } else if (!invert_scalar_matrix(b.values)) {
    out.nondegenerate = Status::Fail;
    out.detail = "restricted matrix is singular";
  } else if (!alg->integral_domain()) {
    out.nondegenerate = Status::Uncertified;
    out.detail = "invertible, but the algebra is not flagged an integral domain";
  } else {
    out.nondegenerate = Status::Pass;
    out.detail = "invertible scalar matrix";
  }
  // Two random lifts of each pair of classes.
  SampleSource src(seed);
  out.lift_independent = true;
  for (std::size_t i = 0; i < b.basis.size(); ++i) {
    for (std::size_t j = 0; j < b.basis.size(); ++j) {
      for (int rep = 0; rep < 2; ++rep) {
        const Element f = src.homogeneous_of(alg, Degree::zero(alg->group()) + cs.pair->basis_section(b.basis[i]).degree);
        const Element g = src.homogeneous_of(alg, cs.pair->basis_section(b.basis[j]).degree);
        const Section u = Section::basis(cs.pair, b.basis[i]) + f * cs.sigma;
        const Section v = Section::basis(cs.pair, b.basis[j]) + g * cs.sigma;
        if (metric_eval(cs.metric, u, v) != b.matrix[i][j]) out.lift_independent = false;
      }
    }
  }
  return out;
}

PairPtr carroll_subpair(const CarrollStructure& cs) {
  const auto& alg = cs.pair->algebra();
  std::vector<BasisSection> basis{{"sigma", Degree::zero(alg->group())}};
  std::vector<DerivationCombo> anchors{anchor_of(cs.sigma)};
  LieRinehartPair::StructureTable structure = LieRinehartPair::abelian(alg, 1);
  if (auto p = cs.pivot()) {
    auto [h, residual] = reduce_against(bracket(cs.sigma, cs.sigma), cs.sigma, *p);
    structure[0][0][0] = h;
  }
  return LieRinehartPair::make(cs.name + ".l", cs.pair->derivations(), std::move(basis), std::move(anchors),
                               std::move(structure));
}

std::vector<Section> carroll_inclusion(const CarrollStructure& cs, const PairPtr& sub) {
  if (sub->size() != 1) throw Error(ErrorCode::ShapeMismatch, "inclusion expects the one-section pair");
  return {cs.sigma};
}

// ---------------------------------------------------------------------------
// Flow

FlowSeries flow(const ActionTable& x, const Element& f, int order) {
  if (!x.is_zero()) {
    auto d = x.degree();
    if (!d || !d->is_zero()) {
      throw Error(ErrorCode::NonzeroDegreeFlow,
                  "flow needs a degree-zero derivation, got " + (d ? d->to_string() : std::string("inhomogeneous")));
    }
  }
  if (order < 0) throw Error(ErrorCode::Semantic, "flow order must be non-negative");
  const auto& alg = f.presentation();
  FlowSeries out;
  out.coefficients.push_back(f);
  for (int k = 1; k <= order; ++k) {
    const Laurent inv_k = alg->scalar(GaussianRational(Rational(1, k)));
    out.coefficients.push_back(inv_k * x.apply(out.coefficients.back()));
  }
  return out;
}

FlowSeries flow(const DerivationCombo& x, const Element& f, int order) { return flow(x.action(), f, order); }

FlowSeries truncated_product(const FlowSeries& a, const FlowSeries& b) {
  const std::size_t n = std::min(a.coefficients.size(), b.coefficients.size());
  FlowSeries out;
  for (std::size_t k = 0; k < n; ++k) {
    Element c(a.coefficients[0].presentation());
    for (std::size_t i = 0; i <= k; ++i) c += a.coefficients[i] * b.coefficients[k - i];
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

namespace {

std::string t_power(std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return "t";
  return "t^" + std::to_string(k);
}

}  // namespace

std::string FlowSeries::to_string() const {
  if (coefficients.empty()) return "0";
  const Element& f = coefficients.front();
  // Factored form: c_k = lambda_k f with scalar lambda_k.
  std::vector<Laurent> lambdas;
  bool factored = !f.is_zero() && f.terms().begin()->second.is_unit();
  if (factored) {
    const auto& [m0, c0] = *f.terms().begin();
    const Laurent inv0 = c0.inverse();
    for (const auto& c : coefficients) {
      auto it = c.terms().find(m0);
      Laurent lambda = it == c.terms().end() ? Laurent(0) : it->second * inv0;
      if (lambda * f != c) {
        factored = false;
        break;
      }
      lambdas.push_back(std::move(lambda));
    }
  }
  auto join = [](std::string& out, const std::string& term) {
    if (term.empty()) return;
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  };
  std::string series;
  if (factored) {
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      const Laurent& l = lambdas[k];
      if (l.is_zero()) continue;
      std::string term;
      if (k == 0) {
        term = l.to_string();
      } else if (l.is_one()) {
        term = t_power(k);
      } else if (l == Laurent(-1)) {
        term = "-" + t_power(k);
      } else {
        term = (l.needs_parens() ? "(" + l.to_string() + ")" : l.to_string()) + "*" + t_power(k);
      }
      join(series, term);
    }
    const std::string fs = f.size() > 1 ? "(" + f.to_string() + ")" : f.to_string();
    if (series == "1") return f.to_string();
    return fs + "*(" + series + ")";
  }
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const Element& c = coefficients[k];
    if (c.is_zero()) continue;
    join(series, k == 0 ? c.to_string() : "(" + c.to_string() + ")*" + t_power(k));
  }
  return series.empty() ? "0" : series;
}

}  // namespace rhoc
