#include "c1mortar/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace c1mortar {

namespace {
int g_threads = 0;
}

std::string to_string(ExecutionPolicy p) {
  return p == ExecutionPolicy::serial ? "serial" : "parallel";
}

void set_thread_count(int n) { g_threads = n > 0 ? n : 0; }

int thread_count() {
#ifdef _OPENMP
  if (g_threads > 0) return g_threads;
  if (const char* env = std::getenv("IGA_MORTAR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace detail {

void parallel_for(int begin, int end, int threads, void (*fn)(int, void*), void* ctx) {
#ifdef _OPENMP
  // exceptions may not leave an OpenMP region; the lowest failing index wins
  std::exception_ptr error;
  int error_index = end;
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (int i = begin; i < end; ++i) {
    try {
      fn(i, ctx);
    } catch (...) {
#pragma omp critical(c1mortar_parallel_error)
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
#else
  (void)threads;
  for (int i = begin; i < end; ++i) fn(i, ctx);
#endif
}

}  // namespace detail

}  // namespace c1mortar
