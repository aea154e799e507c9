#pragma once

// Evaluation of independent samples, serially or across OpenMP threads.
// Inputs are drawn before the fan-out and results are kept by index, so
// both paths return identical vectors.

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

#include "rhocarroll/algebra.hpp"

namespace rhoc {

enum class Execution { Serial, Parallel };

// Process-wide default used by the verifiers; Parallel unless changed.
Execution default_execution();
void set_default_execution(Execution e);

template <class In, class Fn>
auto map_samples_serial(const std::vector<In>& inputs, Fn&& fn) {
  using Out = std::invoke_result_t<Fn&, const In&>;
  std::vector<Out> out;
  out.reserve(inputs.size());
  for (const auto& in : inputs) out.push_back(fn(in));
  return out;
}

template <class In, class Fn>
auto map_samples_parallel(const std::vector<In>& inputs, Fn&& fn) {
  using Out = std::invoke_result_t<Fn&, const In&>;
  const auto n = static_cast<long>(inputs.size());
  std::vector<std::optional<Out>> slots(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < n; ++k) {
    try {
      slots[k].emplace(fn(inputs[k]));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  std::vector<Out> out;
  out.reserve(inputs.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    out.push_back(std::move(*slots[k]));
  }
  return out;
}

template <class In, class Fn>
auto map_samples(const std::vector<In>& inputs, Fn&& fn, Execution e = default_execution()) {
  return e == Execution::Parallel ? map_samples_parallel(inputs, fn) : map_samples_serial(inputs, fn);
}

// Product with the outer term loop split across threads; equals a * b.
Element multiply_parallel(const Element& a, const Element& b);

int max_threads();

}  // namespace rhoc
