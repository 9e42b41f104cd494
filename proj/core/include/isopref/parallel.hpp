#ifndef ISOPREF_PARALLEL_HPP
#define ISOPREF_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace isopref {

// Runs fn(0) ... fn(n-1) on up to `threads` worker threads. Tasks must write
// to disjoint slots so results are independent of scheduling. Exceptions
// from tasks are rethrown on the calling thread.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace isopref

#endif
