#pragma once

#include <cstddef>

namespace metaprio {

// Every parallel kernel in this project also runs serially; Serial is the
// reference implementation the tests compare against (and what the benchmark
// tool times OpenMP against). Bodies must write only to disjoint slots and
// must not throw.
enum class Parallelism { Serial, OpenMP };

template <typename Fn>
void parallel_for(Parallelism mode, std::size_t n, Fn&& body) {
  if (mode == Parallelism::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
}

}  // namespace metaprio
