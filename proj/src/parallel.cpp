#include "msaug/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace msaug {
namespace {

std::atomic<unsigned> g_override{0};

unsigned default_threads() {
  if (const char* env = std::getenv("MSAUG_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

void set_num_threads(unsigned n) { g_override.store(n, std::memory_order_relaxed); }

unsigned num_threads() {
  const unsigned n = g_override.load(std::memory_order_relaxed);
  return n != 0 ? n : default_threads();
}

}  // namespace msaug
