#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cgauto/automaton.hpp"

namespace cgauto {

/// Subset construction. Only nonempty subsets get explicit edges; the empty
/// subset is the shared fallback sink.
Dfa determinize(const Nfa& a);

/// Partition refinement on the reachable part, followed by canonical
/// renumbering (breadth first from the initial state, explicit edges in symbol
/// order, fallback last). Equal languages give identical results.
Dfa minimize(const Dfa& d);
inline Dfa minimal_dfa(const Nfa& a) { return minimize(determinize(a)); }

Dfa complement(const Dfa& d);

Nfa intersect(const Nfa& a, const Nfa& b);
Nfa unite(const Nfa& a, const Nfa& b);
Nfa difference(const Nfa& a, const Nfa& b);

enum class BoolOp { And, Or, AndNot, Xor };
/// Product of two total DFAs, kept sparse through the fallback moves.
Dfa combine(const Dfa& a, const Dfa& b, BoolOp op);

struct Emptiness {
  bool empty = true;
  /// Shortest accepted word, ties broken by symbol order.
  std::optional<Word> witness;
};
Emptiness is_empty(const Nfa& a);
Emptiness is_empty(const Dfa& d);

bool equivalent(const Dfa& a, const Dfa& b);
bool equivalent(const Nfa& a, const Nfa& b);

struct EnumerateLimit {
  std::optional<std::size_t> max_length;
  std::optional<std::size_t> max_count;
};
/// Accepted words in length-lexicographic order, up to the limits. With
/// neither limit set the language must be finite.
std::vector<Word> enumerate(const Nfa& a, EnumerateLimit limit);

Nfa reverse(const Nfa& a);

bool accepts(const Nfa& a, const Word& w);
bool accepts(const Dfa& d, const Word& w);

/// Σ*, ∅ and {w} as automata.
Nfa universal_nfa(const Alphabet& alphabet);
Nfa empty_nfa(const Alphabet& alphabet);
Nfa word_nfa(const Word& w);

/// Keeps states that are reachable and can reach acceptance.
Nfa trim(const Nfa& a);
/// True when the accepted language is finite.
bool is_finite(const Nfa& a);

}  // namespace cgauto
