#include "corridor/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace corridor {

int configure_threads_from_env() {
  if (const char* env = std::getenv("CORRIDOR_OPT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) omp_set_num_threads(static_cast<int>(n));
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace corridor
