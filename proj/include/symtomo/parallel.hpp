#pragma once

#include <cstddef>
#include <functional>

namespace symtomo {

/// Worker count: hardware concurrency, capped by the TOMO_THREADS environment variable.
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Iterations must be independent; each index
/// is visited exactly once, so results written per index are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace symtomo
