#pragma once

// Element-parallel execution with an order-fixed serial merge. Both
// policies compute identical per-item results and merge them in item
// order, so outputs are bitwise identical.

#include <algorithm>
#include <string>
#include <vector>

namespace c1mortar {

enum class ExecutionPolicy { serial, parallel };

std::string to_string(ExecutionPolicy p);

/// Thread count for parallel regions: IGA_MORTAR_THREADS if set and
/// positive, otherwise the OpenMP default. Always 1 without OpenMP.
int thread_count();
void set_thread_count(int n);  // <= 0 restores the default

namespace detail {
void parallel_for(int begin, int end, int threads, void (*fn)(int, void*), void* ctx);
}

/// compute(i, slot) for i in [0, n), then merge(i, slot) in increasing i.
/// Work is done in batches so only `batch` results are alive at once.
template <class Result, class Compute, class Merge>
void compute_and_merge(int n, ExecutionPolicy policy, Compute&& compute, Merge&& merge,
                       int batch = 512) {
  if (policy == ExecutionPolicy::serial) {
    Result r;
    for (int i = 0; i < n; ++i) {
      compute(i, r);
      merge(i, r);
    }
    return;
  }
  std::vector<Result> slots(static_cast<std::size_t>(std::min(n, batch)));
  for (int b0 = 0; b0 < n; b0 += batch) {
    const int b1 = std::min(n, b0 + batch);
    struct Ctx {
      Compute* c;
      std::vector<Result>* s;
      int b0;
    } ctx{&compute, &slots, b0};
    detail::parallel_for(
        b0, b1, thread_count(),
        [](int i, void* p) {
          auto* c = static_cast<Ctx*>(p);
          (*c->c)(i, (*c->s)[i - c->b0]);
        },
        &ctx);
    for (int i = b0; i < b1; ++i) merge(i, slots[i - b0]);
  }
}

}  // namespace c1mortar
