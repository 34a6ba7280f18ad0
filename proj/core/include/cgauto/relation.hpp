#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cgauto/automaton.hpp"
#include "cgauto/fa.hpp"

namespace cgauto {

/// An n-ary relation on words over `base`, stored as a minimal DFA over the
/// convolution alphabet. Component i occupies tracks [i*k, (i+1)*k) where k is
/// the number of tracks of the base alphabet, so the convolution alphabet is
/// `base.power(n)`.
class RegularRelation {
 public:
  RegularRelation() = default;
  /// The automaton must read `base.power(arity)` and accept only well-formed
  /// convolutions; it is determinized and minimized.
  RegularRelation(Alphabet base, std::size_t arity, const Nfa& automaton);
  RegularRelation(Alphabet base, std::size_t arity, const Dfa& automaton);

  const Alphabet& base() const noexcept { return base_; }
  std::size_t arity() const noexcept { return arity_; }
  const Alphabet& alphabet() const noexcept { return dfa_.alphabet(); }
  const Dfa& dfa() const noexcept { return dfa_; }
  /// Trimmed nondeterministic view, computed once on first use.
  const Nfa& nfa() const;
  std::size_t state_count() const noexcept { return dfa_.state_count(); }

  bool contains(std::span<const Word> tuple) const;
  bool empty() const { return is_empty(dfa_).empty; }

  /// The same automaton read over another base and arity with
  /// `base.power(arity)` equal to the current convolution alphabet, e.g. a
  /// binary relation on integers as a set of integer pairs.
  RegularRelation reinterpret(Alphabet base, std::size_t arity) const;

  /// Output tracks of component `i` in a layout of `components` copies of `base`.
  static std::vector<std::size_t> component_tracks(const Alphabet& base, std::span<const std::size_t> components);

 private:
  struct Cache;

  Alphabet base_;
  std::size_t arity_ = 0;
  Dfa dfa_;
  std::shared_ptr<Cache> cache_;
};

/// Convolution symbol from per-component base symbols, where `base.size()`
/// stands for padding.
Symbol column(const Alphabet& base, std::span<const Symbol> components);
/// Component `i` of a convolution symbol (`base.size()` for padding).
Symbol component(const Alphabet& base, Symbol column, std::size_t i);

/// ⊗(w1..wn); all words over the same base alphabet.
Word convolve(std::span<const Word> tuple);
/// Inverse of convolve; rejects words where a component resumes after padding.
std::vector<Word> deconvolve(const Word& w, const Alphabet& base, std::size_t arity);

/// Exactly the well-formed convolutions of n-tuples (a dense automaton: meant for
/// small alphabets).
Dfa valid_convolution(const Alphabet& base, std::size_t arity);
bool is_valid_relation(const RegularRelation& r);

RegularRelation rel_intersect(const RegularRelation& r, const RegularRelation& s);
RegularRelation rel_union(const RegularRelation& r, const RegularRelation& s);
RegularRelation rel_difference(const RegularRelation& r, const RegularRelation& s);
/// Complement relative to all n-tuples of words over the base alphabet.
RegularRelation rel_complement(const RegularRelation& r);
bool rel_equal(const RegularRelation& r, const RegularRelation& s);
bool rel_subset(const RegularRelation& r, const RegularRelation& s);

/// Inserts an unconstrained component at `position` (0..arity).
RegularRelation cylindrify(const RegularRelation& r, std::size_t position);
/// Component i of r becomes component `target[i]` of the result.
RegularRelation permute(const RegularRelation& r, std::span<const std::size_t> target);
RegularRelation transpose(const RegularRelation& r);
/// Existentially quantifies component `track` (with padding saturation).
RegularRelation project(const RegularRelation& r, std::size_t track);
/// Keeps the listed components, in order, and quantifies the others.
RegularRelation project_onto(const RegularRelation& r, std::span<const std::size_t> keep);
/// {(u,w) : ∃v (u,v) ∈ r ∧ (v,w) ∈ s}
RegularRelation compose(const RegularRelation& r, const RegularRelation& s);
/// Components as a unary relation, for arity 1 only.
Nfa as_language(const RegularRelation& r);
RegularRelation from_language(const Nfa& language);

/// One operand of a join: relation r whose component i is wired to output
/// component `components[i]`.
struct JoinOperand {
  const RegularRelation* relation;
  std::vector<std::size_t> components;
};
struct JoinExclusion {
  const RegularRelation* relation;
  std::vector<std::size_t> components;
};
/// Tuples of `arity` components satisfying every operand and no exclusion.
/// Every component must be wired to some operand.
RegularRelation join(const Alphabet& base, std::size_t arity, std::span<const JoinOperand> operands,
                     std::span<const JoinExclusion> exclusions = {});
/// As join, then keeps only `keep` (quantifying the remaining components).
RegularRelation join_project(const Alphabet& base, std::size_t arity, std::span<const JoinOperand> operands,
                             std::span<const JoinExclusion> exclusions, std::span<const std::size_t> keep);

/// {(w,w) : w ∈ L(domain)}
RegularRelation equality_relation(const Nfa& domain);
RegularRelation equality_relation(const Alphabet& base);
RegularRelation lex_order(const Alphabet& base);
RegularRelation prefix_order(const Alphabet& base);
RegularRelation llex_order(const Alphabet& base);
RegularRelation equal_length(const Alphabet& base);
/// All n-tuples (n ≥ 1) over the base alphabet, or over L(domain) per component.
RegularRelation full_relation(const Alphabet& base, std::size_t arity);
RegularRelation full_relation(const Nfa& domain, std::size_t arity);

}  // namespace cgauto
