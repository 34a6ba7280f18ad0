#include "cgauto/limits.hpp"

#include <string>

#include "cgauto/error.hpp"

namespace cgauto {

namespace {
thread_local std::size_t g_max_states = 1'000'000;
}

std::size_t max_states() noexcept { return g_max_states; }

void set_max_states(std::size_t limit) noexcept { g_max_states = limit; }

void check_state_budget(std::size_t count, const char* where) {
  if (count > g_max_states) {
    throw StateLimitExceeded(std::string(where) + ": automaton exceeded " +
                             std::to_string(g_max_states) + " states");
  }
}

}  // namespace cgauto
