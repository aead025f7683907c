#include "phishpond/kernels/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace phishpond::kernels {

std::vector<analyzer::Verdict> analyze_worms(std::span<const corpus::WormSpec> worms,
                                             const analyzer::Analyzer& a) {
  return map_indices_parallel(worms.size(),
                              [&](std::size_t i) { return corpus::analyze_worm(worms[i], a); });
}

std::vector<analyzer::Verdict> analyze_worms_serial(std::span<const corpus::WormSpec> worms,
                                                    const analyzer::Analyzer& a) {
  return map_indices_serial(worms.size(),
                            [&](std::size_t i) { return corpus::analyze_worm(worms[i], a); });
}

std::vector<analyzer::Verdict> analyze_urls(std::span<const std::string> urls,
                                            const analyzer::Analyzer& a) {
  return map_indices_parallel(urls.size(), [&](std::size_t i) { return a.analyze_url(urls[i]); });
}

std::vector<analyzer::Verdict> analyze_urls_serial(std::span<const std::string> urls,
                                                   const analyzer::Analyzer& a) {
  return map_indices_serial(urls.size(), [&](std::size_t i) { return a.analyze_url(urls[i]); });
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace phishpond::kernels
