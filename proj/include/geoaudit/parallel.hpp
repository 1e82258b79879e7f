#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace geoaudit {

// Every data-parallel kernel has a serial reference path with the same
// per-item arithmetic; results are written by index, so both paths are
// bit-identical.
enum class Exec { serial, parallel };

/// Applies GEOAUDIT_THREADS (if set) as the OpenMP thread cap. Idempotent.
void configure_threads_from_env();

/// Number of threads a parallel region will use.
int max_threads();

/// Runs body(i) for i in [0, n). Exceptions thrown by body are captured and the
/// first one captured is rethrown after the loop; OpenMP regions must not leak them.
void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

}  // namespace geoaudit
