#include "nsas/threads.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace nsas {

int configure_threads() {
  if (const char* env = std::getenv("NSAS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
      // Unparseable values leave the runtime default in place.
    }
  }
  return thread_count();
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace nsas
