#pragma once

#include <map>
#include <vector>

#include "cgauto/automaton.hpp"
#include "cgauto/limits.hpp"

namespace cgauto {

/// Builds the reachable part of an automaton whose states are values of type
/// `S` (ordered by `<`). `step(state, emit)` calls `emit(symbol, next)` for
/// every move; `accept(state)` decides acceptance.
template <class S, class Step, class Accept>
Nfa explore(const Alphabet& alphabet, const std::vector<S>& initial, Step step, Accept accept) {
  NfaBuilder builder(alphabet);
  std::map<S, State> ids;
  std::vector<const S*> pending;
  auto intern = [&](const S& s) {
    auto [it, inserted] = ids.try_emplace(s, 0);
    if (inserted) {
      it->second = builder.add_state(accept(s));
      pending.push_back(&it->first);
    }
    return it->second;
  };
  for (const auto& s : initial) builder.add_initial(intern(s));
  while (!pending.empty()) {
    const S* cur = pending.back();
    pending.pop_back();
    const State from = ids.at(*cur);
    step(*cur, [&](Symbol symbol, const S& next) { builder.add_edge(from, symbol, intern(next)); });
  }
  return builder.build();
}

}  // namespace cgauto
