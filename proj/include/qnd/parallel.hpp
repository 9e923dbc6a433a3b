#pragma once

#include <cstddef>
#include <functional>

namespace qnd {

/// Global worker cap used by the data-parallel kernels (matvec slabs,
/// Monte-Carlo streams). Defaults to std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count() noexcept;

/// Splits [begin, end) into contiguous chunks and runs body(chunk_begin, chunk_end)
/// on up to thread_count() workers. Chunks never overlap, so bodies that write
/// only their own range need no synchronization. Chunks hold at least
/// `min_chunk` items, so small ranges run inline on the caller.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 1);

}  // namespace qnd
