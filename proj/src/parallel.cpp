#include "geoaudit/parallel.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace geoaudit {

void configure_threads_from_env() {
  static std::once_flag once;
  std::call_once(once, [] {
    const char* env = std::getenv("GEOAUDIT_THREADS");
    if (env == nullptr) return;
    int threads = 0;
    try {
      threads = std::stoi(env);
    } catch (const std::exception&) {
      return;
    }
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
  });
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  configure_threads_from_env();
  std::exception_ptr error;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(geoaudit_for_each_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace geoaudit
