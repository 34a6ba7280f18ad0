#pragma once

// Helpers shared by the presentation builders: relations assembled track by
// track from relations over smaller alphabets.

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "cgauto/automaton.hpp"
#include "cgauto/product.hpp"
#include "cgauto/relation.hpp"

namespace cgauto::detail {

/// An automaton over its own alphabet, wired to output tracks.
struct Part {
  Nfa automaton;
  std::vector<std::size_t> tracks;
};

/// Output tracks for relation `r` (over a base of `r.base().track_count()`
/// tracks) when base track t of every component c goes to `c * out_width + map[t]`.
inline std::vector<std::size_t> spread(std::span<const std::size_t> map, std::size_t arity, std::size_t out_width) {
  std::vector<std::size_t> tracks;
  for (std::size_t c = 0; c < arity; ++c) {
    for (auto t : map) tracks.push_back(c * out_width + t);
  }
  return tracks;
}

inline Part place(const RegularRelation& r, std::span<const std::size_t> map, std::size_t out_width) {
  return Part{r.nfa(), spread(map, r.arity(), out_width)};
}

inline Part place(const Nfa& a, std::vector<std::size_t> tracks) { return Part{a, std::move(tracks)}; }

inline std::vector<std::size_t> iota(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = first + i;
  return v;
}

inline RegularRelation assemble(const Alphabet& base, std::size_t arity, const std::vector<Part>& parts) {
  std::vector<PositiveOperand> ops;
  for (const auto& p : parts) ops.push_back(PositiveOperand{&p.automaton, p.tracks});
  return RegularRelation(base, arity, synchronous_product(base.power(arity), ops));
}

/// The same automaton read as a relation of another arity over another base
/// with the same tracks.
inline RegularRelation reinterpret(const RegularRelation& r, const Alphabet& base, std::size_t arity) {
  return r.reinterpret(base, arity);
}

/// Words of length one over `a`.
inline Nfa single_letter(const Alphabet& a) {
  NfaBuilder b(a, 2);
  b.add_initial(0);
  b.set_accepting(1);
  for (Symbol s = 0; s < a.size(); ++s) b.add_edge(0, s, 1);
  return b.build();
}

/// Words of length one whose symbol is listed.
inline Nfa letters(const Alphabet& a, std::span<const Symbol> symbols) {
  NfaBuilder b(a, 2);
  b.add_initial(0);
  b.set_accepting(1);
  for (auto s : symbols) b.add_edge(0, s, 1);
  return b.build();
}

/// Only the empty word.
inline Nfa empty_word(const Alphabet& a) {
  NfaBuilder b(a, 1);
  b.add_initial(0);
  b.set_accepting(0);
  return b.build();
}

/// Merges words over sub-alphabets into one word over `out`; part i's track t
/// lands on `maps[i][t]`. Tracks not covered are padding.
inline Word merge_words(const Alphabet& out, const std::vector<std::pair<const Word*, std::vector<std::size_t>>>& parts) {
  std::size_t len = 0;
  for (const auto& [w, map] : parts) len = std::max(len, w->size());
  Word result(out);
  for (std::size_t pos = 0; pos < len; ++pos) {
    std::vector<std::size_t> digits(out.track_count());
    for (std::size_t t = 0; t < digits.size(); ++t) digits[t] = out.pad_digit(t);
    for (const auto& [w, map] : parts) {
      if (pos >= w->size()) continue;
      for (std::size_t t = 0; t < map.size(); ++t) digits[map[t]] = w->alphabet.digit((*w)[pos], t);
    }
    result.symbols.push_back(out.compose(digits));
  }
  return result;
}

/// Digits of track `t` along a word; the leaf size marks padding.
inline std::vector<std::size_t> track_digits(const Word& w, std::size_t t) {
  std::vector<std::size_t> out;
  for (auto s : w.symbols) out.push_back(w.alphabet.digit(s, t));
  return out;
}

/// Word over a single-leaf alphabet from digits, stopping at the first padding.
/// Returns false if padding is followed by a letter.
inline bool digits_to_word(const std::vector<std::size_t>& digits, const Alphabet& leaf, Word& out) {
  out = Word(leaf);
  bool ended = false;
  for (auto d : digits) {
    if (d == leaf.size()) {
      ended = true;
    } else if (ended) {
      return false;
    } else {
      out.symbols.push_back(d);
    }
  }
  return true;
}

}  // namespace cgauto::detail
