#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cgauto/groups.hpp"

namespace cgauto {

/// The unique y with (inputs..., y) in `r`, for a relation of arity n+1 read
/// as the graph of an n-ary function. Inputs are read column by column with
/// the output guessed alongside; once all inputs are exhausted the shortest
/// (then llex least) accepting continuation of the output is searched, which
/// is never longer than the state count. Throws InvalidArgument when there is
/// no output and FunctionalityError when two outputs are found.
Word eval_function(const RegularRelation& r, std::span<const Word> inputs, std::size_t* transitions = nullptr);
inline Word eval_function(const RegularRelation& r, const Word& input, std::size_t* transitions = nullptr) {
  return eval_function(r, std::span<const Word>(&input, 1), transitions);
}

/// Representatives met while evaluating a group word letter by letter.
struct EvalTrace {
  GroupWord input;
  /// steps[i] represents the first i+1 letters.
  std::vector<Word> steps;
  std::size_t transitions = 0;
};

/// Representative of u * w.
Word right_multiply(const GraphAutomaticPresentation& p, const Word& u, const GroupWord& w,
                    EvalTrace* trace = nullptr);
Word canonical_rep(const GraphAutomaticPresentation& p, const GroupWord& w, EvalTrace* trace = nullptr);
bool words_equal(const GraphAutomaticPresentation& p, const GroupWord& a, const GroupWord& b);
bool is_identity(const GraphAutomaticPresentation& p, const GroupWord& w);

/// u * w = u for every element u: the relation composed along w equals the
/// equality on the domain.
bool relator_holds(const GraphAutomaticPresentation& p, const GroupWord& w);

/// Elements at distance <= radius from the identity, by distance, llex within
/// each distance.
std::vector<Word> ball(const GraphAutomaticPresentation& p, std::size_t radius);
/// spheres[n]: elements at distance exactly n, llex ordered.
std::vector<std::vector<Word>> spheres(const GraphAutomaticPresentation& p, std::size_t radius);

/// Length growth constant of a relation read as a function of its leading
/// components: (states of r) * (states of the domain).
std::size_t growth_constant(const RegularRelation& r, const Dfa& domain);

struct GrowthViolation {
  std::string letter;
  Word from;
  Word to;
};

struct GrowthReport {
  /// sizes[n] = |B_n|.
  std::vector<std::size_t> sizes;
  /// Constant per generator letter ("x" and "x^-1").
  std::vector<std::pair<std::string, std::size_t>> constants;
  /// max(constants, |identity|) + 1.
  std::size_t C = 0;
  std::size_t alphabet_size = 0;
  /// log2 of |Sigma|^(C n) (or of C n for a one-letter alphabet).
  std::vector<double> log2_bounds;
  bool within_bound = true;
  /// Edges (u, v) met during the search with |v| > |u| + C_letter.
  std::vector<GrowthViolation> violations;
};

GrowthReport growth_profile(const GraphAutomaticPresentation& p, std::size_t radius);

struct RelationCheck {
  std::string name;
  bool left = false;
  bool contained = false;
  bool total = false;
  bool functional = false;
  bool injective = false;
  bool surjective = false;
  std::size_t growth_constant = 0;

  bool ok() const { return contained && total && functional && injective && surjective; }
};

struct PresentationReport {
  bool identity_in_domain = false;
  bool domain_nonempty = false;
  std::vector<RelationCheck> relations;

  bool ok() const;
  std::string to_text() const;
};

/// Verifies the identity word and that each edge relation is a bijection of
/// the domain, by deciding first-order sentences over (R; E).
PresentationReport check_presentation(const GraphAutomaticPresentation& p);

struct ConjugacyResult {
  bool conjugate = false;
  /// llex least u with u p = q u.
  std::optional<Word> witness;
};

/// Needs left relations for the letters of q.
ConjugacyResult conjugate(const GraphAutomaticPresentation& p, const GroupWord& a, const GroupWord& b);

struct MonoidGrowthReport {
  Word product;
  std::size_t max_input_length = 0;
  std::size_t C = 0;
  /// max |m_i| + C * ceil(log2 n)
  std::size_t bound = 0;
  bool holds = false;
};

/// Multiplies `elements` with the ternary relation `operation` of `s` by
/// balanced splitting and compares the result length with the logarithmic
/// bound.
MonoidGrowthReport monoid_growth_bound_check(const AutomaticStructure& s, const std::string& operation,
                                             std::span<const Word> elements);

}  // namespace cgauto
