#pragma once

#include <cstddef>
#include <functional>

namespace hkan {

// Worker-thread cap. Defaults to the HKAN_THREADS environment variable when
// set, otherwise the hardware concurrency. Values <= 0 reset to the default.
void set_max_threads(int n);
int max_threads();

// Runs body(i) for i in [0, count). Iterations must be independent and write
// only to their own output slots; under that contract the result is identical
// for any thread count. Nested calls from inside a worker run serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace hkan
