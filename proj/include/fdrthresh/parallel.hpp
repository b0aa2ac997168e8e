#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace fdrthresh {

/// Kernels that loop over independent items (replicates, lambda grid points)
/// come in two flavours: an OpenMP version and the serial reference it is
/// tested against. Both write per-item results into index-addressed storage
/// and reduce serially, so they produce bit-identical output.
enum class Execution { Serial, Parallel };

/// Evaluate fn(i) for i in [0, count) into a vector, in parallel or serially.
/// The first exception thrown by any item is rethrown on the calling thread.
template <typename Fn>
auto evaluate_indexed(std::size_t count, Execution exec, Fn&& fn) {
  using Value = decltype(fn(std::size_t{0}));
  std::vector<Value> out(count);
  const auto total = static_cast<long long>(count);
  if (exec == Execution::Serial) {
    for (long long i = 0; i < total; ++i) {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    }
    return out;
  }

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < total; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(fdrthresh_evaluate_indexed)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace fdrthresh
