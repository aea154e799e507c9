#include "rhocarroll/sampling.hpp"

#include <cstdlib>

namespace rhoc {

int SampleSource::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

GaussianRational SampleSource::scalar() {
  int num = 0;
  while (num == 0) num = uniform(-3, 3);
  const Rational re(num, uniform(1, 2));
  switch (uniform(0, 3)) {
    case 0: return {Rational(0), re};
    case 1: return {re, Rational(uniform(-1, 1))};
    default: return {re};
  }
}

Laurent SampleSource::coefficient(const ParameterSpacePtr& params) {
  const GaussianRational c = scalar();
  if (!params || params->size() == 0) return Laurent::constant(params, c);
  return Laurent::parameter(params, 0, uniform(-2, 2), c);
}

Degree SampleSource::degree(const GradeGroup& group, int bound) {
  std::vector<int> c(group.rank());
  for (int k = 0; k < group.rank(); ++k) c[k] = k < group.free_rank() ? uniform(-bound, bound) : uniform(0, 1);
  return Degree(group, std::move(c));
}

std::map<Degree, std::vector<Monomial>> small_monomials(const Presentation& alg, int bound) {
  std::map<Degree, std::vector<Monomial>> out;
  const std::size_t n = alg.size();
  std::vector<int> e(n, 0);
  auto visit = [&](auto&& self, std::size_t i, int budget) -> void {
    if (i == n) {
      Monomial m{e};
      out[alg.degree_of(m)].push_back(std::move(m));
      return;
    }
    const auto& g = alg.generator(i);
    const int hi = g.square_zero ? std::min(1, budget) : budget;
    const int lo = g.invertible ? -budget : 0;
    for (int k = lo; k <= hi; ++k) {
      e[i] = k;
      self(self, i + 1, budget - std::abs(k));
    }
    e[i] = 0;
  };
  visit(visit, 0, bound);
  return out;
}

const std::map<Degree, std::vector<Monomial>>& SampleSource::table(const PresentationPtr& alg) {
  auto it = cache_.find(alg.get());
  if (it == cache_.end()) {
    it = cache_.emplace(alg.get(), small_monomials(*alg, 2)).first;
    auto& ds = degrees_[alg.get()];
    for (const auto& [d, ms] : it->second) ds.push_back(d);
  }
  return it->second;
}

Element SampleSource::homogeneous_of(const PresentationPtr& alg, const Degree& d) {
  const auto& t = table(alg);
  Element out(alg);
  auto it = t.find(d);
  if (it == t.end()) return out;
  const auto& ms = it->second;
  const int terms = uniform(1, 2);
  for (int k = 0; k < terms; ++k) {
    const auto& m = ms[static_cast<std::size_t>(uniform(0, static_cast<int>(ms.size()) - 1))];
    out.add_term(m, coefficient(alg->params()));
  }
  if (out.is_zero()) out.add_term(ms.front(), coefficient(alg->params()));
  return out;
}

Element SampleSource::homogeneous(const PresentationPtr& alg) {
  table(alg);
  const auto& ds = degrees_[alg.get()];
  return homogeneous_of(alg, ds[static_cast<std::size_t>(uniform(0, static_cast<int>(ds.size()) - 1))]);
}

Word SampleSource::word(const PresentationPtr& alg, int max_length) {
  Word w;
  const int len = uniform(0, max_length);
  const int n = static_cast<int>(alg->size());
  for (int k = 0; k < len; ++k) {
    const auto i = static_cast<std::size_t>(uniform(0, n - 1));
    const int sign = alg->generator(i).invertible && coin() ? -1 : 1;
    w.emplace_back(i, sign);
  }
  return w;
}

}  // namespace rhoc
