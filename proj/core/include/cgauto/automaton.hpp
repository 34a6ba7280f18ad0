#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "cgauto/alphabet.hpp"

namespace cgauto {

struct Edge {
  Symbol symbol;
  State target;

  auto operator<=>(const Edge&) const = default;
};

/// Nondeterministic finite automaton without epsilon moves. Transitions are
/// stored sparsely per state, sorted by (symbol, target). Immutable once built;
/// use NfaBuilder to construct one.
class Nfa {
 public:
  Nfa() = default;

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return accepting_.size(); }
  const std::vector<State>& initial() const noexcept { return initial_; }
  bool is_accepting(State q) const { return accepting_.at(q); }
  const std::vector<bool>& accepting() const noexcept { return accepting_; }
  std::span<const Edge> edges(State q) const { return edges_.at(q); }
  /// Targets of `q` on `s`.
  std::span<const Edge> edges(State q, Symbol s) const;
  std::size_t edge_count() const noexcept;

 private:
  friend class NfaBuilder;

  Alphabet alphabet_;
  std::vector<State> initial_;
  std::vector<bool> accepting_;
  std::vector<std::vector<Edge>> edges_;
};

class NfaBuilder {
 public:
  explicit NfaBuilder(Alphabet alphabet, std::size_t states = 0);

  State add_state(bool accepting = false);
  std::size_t state_count() const noexcept { return accepting_.size(); }
  void add_initial(State q);
  void set_accepting(State q, bool accepting = true);
  /// Checks range of states and symbol.
  void add_edge(State from, Symbol symbol, State to);
  /// Sorts and deduplicates; the builder is left empty.
  Nfa build();

 private:
  Alphabet alphabet_;
  std::vector<State> initial_;
  std::vector<bool> accepting_;
  std::vector<std::vector<Edge>> edges_;
};

/// Deterministic finite automaton. The transition function is total: every
/// state carries explicit edges for some symbols and a fallback target for all
/// remaining ones. Determinization produces a dead sink as the fallback, so
/// large convolution alphabets stay sparse while complement stays a flip of
/// the accepting set.
class Dfa {
 public:
  Dfa() = default;
  /// `edges[q]` need not be sorted; duplicates of a symbol are rejected.
  Dfa(Alphabet alphabet, State initial, std::vector<bool> accepting,
      std::vector<std::vector<Edge>> edges, std::vector<State> fallback);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return accepting_.size(); }
  State initial() const noexcept { return initial_; }
  bool is_accepting(State q) const { return accepting_.at(q); }
  const std::vector<bool>& accepting() const noexcept { return accepting_; }
  std::span<const Edge> edges(State q) const { return edges_.at(q); }
  State fallback(State q) const { return fallback_.at(q); }
  State next(State q, Symbol s) const;
  std::size_t edge_count() const noexcept;

  /// A state is dead when it rejects and every move leads back to itself.
  bool is_dead(State q) const;
  /// Runs the automaton on a sequence of symbols from the initial state.
  bool accepts(std::span<const Symbol> word) const;

  /// Same language as an Nfa. Fallback moves to live states are expanded into
  /// explicit edges (only feasible for small alphabets); dead states are dropped.
  Nfa to_nfa() const;

 private:
  Alphabet alphabet_;
  State initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<State> fallback_;
};

}  // namespace cgauto
