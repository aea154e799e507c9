#pragma once

// Metrics, covariant rho-tensors, rho-connections and the Koszul solve.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rhocarroll/rinehart.hpp"

namespace rhoc {

using ElementMatrix = std::vector<std::vector<Element>>;

/// G[a][b] = G(e_a, e_b). Construction checks shape only; check_metric
/// verifies degree zero and rho-symmetry.
class Metric {
 public:
  Metric(std::string name, PairPtr pair, ElementMatrix matrix);
  static Metric zero(std::string name, const PairPtr& pair);

  const std::string& name() const { return name_; }
  const PairPtr& pair() const { return pair_; }
  const ElementMatrix& matrix() const { return matrix_; }
  const Element& entry(std::size_t a, std::size_t b) const { return matrix_.at(a).at(b); }
  std::size_t size() const { return matrix_.size(); }

 private:
  std::string name_;
  PairPtr pair_;
  ElementMatrix matrix_;
};

// G(f e_a, g e_b) = rho(|f|+|e_a|, |g|) g f G_ab, extended bilinearly.
Element metric_eval(const Metric& g, const Section& u, const Section& v);
VerificationReport check_metric(const Metric& g);

/// Covariant rho-tensor stored by its values on basis tuples.
class TensorValue {
 public:
  using Index = std::vector<std::size_t>;

  TensorValue(PairPtr pair, Degree degree, std::size_t valency, std::map<Index, Element> table);

  const PairPtr& pair() const { return pair_; }
  const Degree& degree() const { return degree_; }
  std::size_t valency() const { return valency_; }
  const std::map<Index, Element>& table() const { return table_; }
  Element at(const Index& idx) const;

  // T(f_1 e_1, ..., f_p e_p) = prod_i rho(|T| + |e_1| + ... + |e_{i-1}|, |f_i|) f_1 ... f_p T(e_1, ..., e_p)
  Element evaluate(const std::vector<Section>& args) const;
  bool is_zero() const { return table_.empty(); }
  std::optional<std::pair<Index, Element>> first_nonzero() const;

 private:
  PairPtr pair_;
  Degree degree_;
  std::size_t valency_;
  std::map<Index, Element> table_;
};

// (L_u G)(v,w) = a_u(G(v,w)) - G([u,v],w) - rho(|u|,|v|) G(v,[u,w]) from the definition.
Element lie_derivative_metric_at(const Section& u, const Metric& g, const Section& v, const Section& w);
// Table of L_u G on basis pairs; u must be homogeneous.
TensorValue lie_derivative_metric(const Section& u, const Metric& g);
bool is_killing(const Section& u, const Metric& g);

/// Christoffel table: christoffel[a][b] = nabla_{e_a} e_b.
class Connection {
 public:
  Connection(std::string name, PairPtr pair, std::vector<std::vector<Section>> christoffel);
  static Connection trivial(std::string name, const PairPtr& pair);

  const std::string& name() const { return name_; }
  const PairPtr& pair() const { return pair_; }
  const std::vector<std::vector<Section>>& christoffel() const { return christoffel_; }
  const Section& at(std::size_t a, std::size_t b) const { return christoffel_.at(a).at(b); }

  Connection with(std::size_t a, std::size_t b, Section value) const;

 private:
  std::string name_;
  PairPtr pair_;
  std::vector<std::vector<Section>> christoffel_;
};

// nabla_{f e_a}(g e_b) = f (a_a(g) e_b + rho(|e_a|,|g|) g Gamma_ab).
Section nabla(const Connection& c, const Section& u, const Section& v);

/// Any bilinear map g x g -> g; lets the checks run on tables that are not
/// connections.
struct CovariantOperator {
  PairPtr pair;
  std::function<Section(const Section&, const Section&)> apply;
};
CovariantOperator as_operator(const Connection& c);

Section curvature(const CovariantOperator& op, const Section& u, const Section& v, const Section& w);
Section torsion(const CovariantOperator& op, const Section& u, const Section& v);
Section curvature(const Connection& c, const Section& u, const Section& v, const Section& w);
Section torsion(const Connection& c, const Section& u, const Section& v);

// (nabla_u G)(v,w) = a_u(G(v,w)) - G(nabla_u v, w) - rho(|u|,|v|) G(v, nabla_u w).
Element covariant_derivative_metric(const CovariantOperator& op, const Metric& g, const Section& u,
                                    const Section& v, const Section& w);
Element covariant_derivative_metric(const Connection& c, const Metric& g, const Section& u, const Section& v,
                                    const Section& w);

// |nabla_{e_a} e_b| = |e_a| + |e_b|.
VerificationReport check_connection(const Connection& c);
// Torsion on all basis pairs.
VerificationReport check_torsion_free(const Connection& c);
// Curvature on all basis triples.
VerificationReport check_flat(const Connection& c);
// nabla G = 0 on all basis triples.
VerificationReport check_compatibility(const Connection& c, const Metric& g);
// Tensoriality in every slot and rho-skewsymmetry of curvature and torsion.
VerificationReport check_tensoriality(const CovariantOperator& op, const PairCheckOptions& opts = {});

// Unique torsion-free compatible connection of a nondegenerate metric.
Connection levi_civita(const PairPtr& pair, const Metric& g, const std::optional<ElementMatrix>& g_inverse = {});

// Inverse of a matrix of Q(i) constants; nullopt when singular.
std::optional<std::vector<std::vector<GaussianRational>>> invert_scalar_matrix(
    std::vector<std::vector<GaussianRational>> m);

}  // namespace rhoc
