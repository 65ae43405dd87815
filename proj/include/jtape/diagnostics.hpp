#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace jtape {

/// Thrown on contract violations that are detectable at runtime in all build
/// modes (invalid positions, index-space exhaustion, statements with more
/// than 255 arguments, ...).
class FatalError : public std::runtime_error {
public:
  explicit FatalError(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fatalError(const std::string& message) {
  throw FatalError(message);
}

inline void require(bool condition, const char* message) {
  if (!condition) {
    fatalError(message);
  }
}

}  // namespace jtape

// Internal invariants on hot paths. Enabled in debug builds only so that the
// unchecked tape variants keep their no-branch guarantee in release builds.
#if !defined(NDEBUG)
#define JTAPE_ASSERT(cond, msg)                                              \
  do {                                                                       \
    if (!(cond)) {                                                           \
      std::fprintf(stderr, "jtape assertion failed: %s (%s:%d)\n", msg,      \
                   __FILE__, __LINE__);                                      \
      std::abort();                                                          \
    }                                                                        \
  } while (false)
#else
#define JTAPE_ASSERT(cond, msg) \
  do {                          \
  } while (false)
#endif
