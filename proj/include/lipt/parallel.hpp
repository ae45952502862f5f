#ifndef LIPT_PARALLEL_HPP
#define LIPT_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace lipt {

/// Worker count used by the few data-parallel loops (kernel walks, per-coset
/// scans, tester trials). Results never depend on this value: partial results
/// are combined in chunk order.
int thread_count();
void set_thread_count(int n);

/// Runs fn(chunk) for chunk in [0, chunks), possibly concurrently.
void parallel_chunks(int chunks, const std::function<void(int)>& fn);

} // namespace lipt

#endif
