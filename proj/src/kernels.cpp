#include <omp.h>

#include <atomic>

#include "rhocarroll/parallel.hpp"

namespace rhoc {

namespace {
std::atomic<Execution> g_execution{Execution::Parallel};
}

Execution default_execution() { return g_execution.load(); }
void set_default_execution(Execution e) { g_execution.store(e); }

int max_threads() { return omp_get_max_threads(); }

Element multiply_parallel(const Element& a, const Element& b) {
  const auto& alg = a.presentation();
  if (alg != b.presentation()) return a * b;  // reports the mismatch
  std::vector<Element> left;
  left.reserve(a.size());
  for (auto atom : a.atoms()) left.push_back(std::move(atom));
  const auto partial = map_samples_parallel(left, [&](const Element& t) { return t * b; });
  Element out(alg);
  for (const auto& p : partial) out += p;
  return out;
}

}  // namespace rhoc
