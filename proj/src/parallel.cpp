#include "iplr/parallel.hpp"

#include <cstdlib>
#include <string>

namespace iplr {

unsigned thread_budget() {
  if (const char* env = std::getenv("IPLR_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace iplr
