#include "demplast/parallel.hpp"

#include <cstdlib>

namespace demplast {

unsigned default_thread_count() {
  if (const char* env = std::getenv("DEMPLAST_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

}  // namespace demplast
