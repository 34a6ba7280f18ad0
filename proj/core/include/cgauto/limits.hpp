#pragma once

#include <cstddef>

namespace cgauto {

/// Upper bound on the number of states any single construction may create.
/// The setting is per thread; `StateBudget` scopes a temporary override.
std::size_t max_states() noexcept;
void set_max_states(std::size_t limit) noexcept;

/// Throws StateLimitExceeded when `count` is above the current budget.
void check_state_budget(std::size_t count, const char* where);

class StateBudget {
 public:
  explicit StateBudget(std::size_t limit) noexcept : saved_(max_states()) { set_max_states(limit); }
  ~StateBudget() { set_max_states(saved_); }
  StateBudget(const StateBudget&) = delete;
  StateBudget& operator=(const StateBudget&) = delete;

 private:
  std::size_t saved_;
};

}  // namespace cgauto
