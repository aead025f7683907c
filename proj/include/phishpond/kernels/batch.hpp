#pragma once

// Data-parallel batch kernels. Every parallel kernel has a serial twin with
// the same contract; tests assert the two agree element for element and the
// benchmark target compares their throughput.

#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "phishpond/analyzer/analyzer.hpp"
#include "phishpond/corpus/corpus.hpp"

namespace phishpond::kernels {

template <typename Fn>
auto map_indices_serial(std::size_t n, Fn&& fn) {
  using T = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

// Evaluates fn(i) for i in [0, n) across OpenMP threads. Results land at
// their index, so output order never depends on scheduling. The first
// exception by index is rethrown after the loop.
template <typename Fn>
auto map_indices_parallel(std::size_t n, Fn&& fn) {
  using T = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      slots[idx].emplace(fn(idx));
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<analyzer::Verdict> analyze_worms(std::span<const corpus::WormSpec> worms,
                                             const analyzer::Analyzer& a);
std::vector<analyzer::Verdict> analyze_worms_serial(std::span<const corpus::WormSpec> worms,
                                                    const analyzer::Analyzer& a);

std::vector<analyzer::Verdict> analyze_urls(std::span<const std::string> urls,
                                            const analyzer::Analyzer& a);
std::vector<analyzer::Verdict> analyze_urls_serial(std::span<const std::string> urls,
                                                   const analyzer::Analyzer& a);

int max_threads();

}  // namespace phishpond::kernels
