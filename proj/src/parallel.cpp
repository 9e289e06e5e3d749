#include "magres/parallel.hpp"

#include <cstdlib>
#include <string>

#include "magres/errors.hpp"

namespace magres {

std::size_t thread_cap() {
  if (const char* env = std::getenv("MAGRES_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0) throw ValidationError("MAGRES_THREADS must be a positive integer, got '" + std::string(env) + "'");
    return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace magres
