#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cgauto/alphabet.hpp"
#include "cgauto/automaton.hpp"

namespace testing_support {

using cgauto::Alphabet;
using cgauto::Symbol;
using cgauto::Word;

// All words of length <= max_len over `a`, in llex order.
inline std::vector<Word> all_words(const Alphabet& a, std::size_t max_len) {
  std::vector<Word> out{Word(a)};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Symbol s = 0; s < a.size(); ++s) {
        Word w = out[i];
        w.symbols.push_back(s);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

inline Word word(const Alphabet& a, const std::string& text) { return cgauto::parse_word(a, text); }

// Plain-data NFA description for quick test automata.
struct NfaSpec {
  std::size_t states;
  std::vector<cgauto::State> initial;
  std::vector<cgauto::State> accepting;
  std::vector<std::tuple<cgauto::State, std::string, cgauto::State>> edges;
};

inline cgauto::Nfa make_nfa(const Alphabet& a, const NfaSpec& spec) {
  cgauto::NfaBuilder b(a, spec.states);
  for (auto q : spec.initial) b.add_initial(q);
  for (auto q : spec.accepting) b.set_accepting(q);
  for (const auto& [p, s, q] : spec.edges) b.add_edge(p, *a.find_symbol(s), q);
  return b.build();
}

inline cgauto::Nfa random_nfa(const Alphabet& a, std::size_t states, double density, std::mt19937_64& rng) {
  cgauto::NfaBuilder b(a, states);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (cgauto::State q = 0; q < states; ++q) {
    if (u(rng) < 0.3) b.set_accepting(q);
    if (u(rng) < 0.3 || q == 0) b.add_initial(q);
    for (Symbol s = 0; s < a.size(); ++s) {
      for (cgauto::State t = 0; t < states; ++t) {
        if (u(rng) < density) b.add_edge(q, s, t);
      }
    }
  }
  return b.build();
}

}  // namespace testing_support
