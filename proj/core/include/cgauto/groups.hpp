#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgauto/presburger.hpp"
#include "cgauto/relation.hpp"
#include "cgauto/structure.hpp"

namespace cgauto {

/// A generator or its inverse inside a group word.
struct GroupLetter {
  std::string generator;
  int sign = 1;

  bool operator==(const GroupLetter&) const = default;
};

using GroupWord = std::vector<GroupLetter>;

/// Whitespace separated generator names, each optionally followed by `^-1`
/// (or `^1`). An empty string is the empty word.
GroupWord parse_group_word(std::string_view text);
std::string to_string(const GroupWord& w);
GroupWord inverse(const GroupWord& w);
GroupWord concat(const GroupWord& a, const GroupWord& b);

struct Generator {
  std::string name;
  /// {(u, v) : v = u x}
  RegularRelation right;
  /// {(u, v) : v = x u}, when known.
  std::optional<RegularRelation> left;
};

/// A regular set of representatives (one per group element) with one binary
/// edge relation per generator.
class GraphAutomaticPresentation {
 public:
  GraphAutomaticPresentation() = default;
  /// Checks that the identity lies in the domain, that every relation is binary
  /// over `base`, and that generator names are distinct and non-empty. The
  /// bijection properties are left to check_presentation.
  GraphAutomaticPresentation(Alphabet base, Dfa domain, Word identity, std::vector<Generator> generators,
                             std::string meta);

  const Alphabet& base() const noexcept { return base_; }
  const Dfa& domain() const noexcept { return domain_.dfa(); }
  const RegularRelation& domain_relation() const noexcept { return domain_; }
  const Word& identity() const noexcept { return identity_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const std::string& meta() const noexcept { return meta_; }

  bool has_generator(const std::string& name) const;
  const Generator& generator(const std::string& name) const;
  /// E_x for sign +1, its transpose for sign -1 (computed once).
  const RegularRelation& right(const GroupLetter& letter) const;
  const RegularRelation& left(const GroupLetter& letter) const;
  /// True when every generator carries a left relation.
  bool has_left() const;
  /// {(w, w) : w in the domain}.
  const RegularRelation& equality() const;

  /// {(u, v) : v = u w}, composed along the letters of `w`.
  RegularRelation word_relation(const GroupWord& w) const;
  /// {(u, v) : v = w u}; needs left relations.
  RegularRelation left_word_relation(const GroupWord& w) const;

  /// The domain with one binary relation per generator, named after it.
  AutomaticStructure structure() const;

  /// Throws InvalidArgument on unknown generators.
  void require_generators(const GroupWord& w) const;

 private:
  Alphabet base_;
  struct Cache;

  RegularRelation domain_;
  std::shared_ptr<Cache> cache_;
  Word identity_;
  std::vector<Generator> generators_;
  std::string meta_;
};

/// Integer coordinates, each either unbounded (order 0, a two's complement
/// track) or of finite order w (a track with letters 0..w-1 holding a single
/// letter).
class CoordinateSpace {
 public:
  explicit CoordinateSpace(std::vector<std::int64_t> orders);
  static CoordinateSpace integers(std::size_t n) { return CoordinateSpace(std::vector<std::int64_t>(n, 0)); }

  std::size_t dimension() const noexcept { return orders_.size(); }
  const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Dfa domain() const;

  /// Finite coordinates are reduced into [0, order).
  Word encode(std::span<const std::int64_t> v) const;
  std::vector<std::int64_t> decode(const Word& w) const;

  /// Points whose coordinates satisfy `r`, a relation of arity dimension()
  /// over the coordinate tracks (for instance compiled over the integers).
  Dfa region(const RegularRelation& r) const;

  /// {(x, y) : y = M x + c}, with finite output coordinates reduced. An
  /// unbounded output may not depend on a finite input.
  RegularRelation affine_map(const IntMatrix& M, std::span<const std::int64_t> c) const;

 private:
  std::vector<std::int64_t> orders_;
  Alphabet alphabet_;
};

/// A finite group given by its multiplication table.
class FiniteGroupTable {
 public:
  /// Throws InvalidArgument unless the table is a group with the given identity.
  FiniteGroupTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table,
                   std::size_t identity = 0);
  static FiniteGroupTable cyclic(std::size_t n);

  std::size_t order() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_.at(a).at(b); }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// A group H with finite index, extended by coset representatives k0 = 1,
/// k1, ..., k(r-1).
struct FiniteExtensionData {
  GraphAutomaticPresentation base;
  /// Names of k1..k(r-1); the list has r-1 entries.
  std::vector<std::string> coset_names;
  /// g[i][s]: the coset of k_i k_s.
  std::vector<std::vector<std::size_t>> coset_product;
  /// correction[i][s]: a word over H with k_i k_s = correction * k_g(i,s).
  std::vector<std::vector<GroupWord>> correction;
  /// conjugation[i][j]: a word over H with k_i h_j = conjugation * k_i, where
  /// h_j is the j-th generator of H.
  std::vector<std::vector<GroupWord>> conjugation;
};

/// Class two nilpotent group on base a_1..a_n. Generators a_1..a_s map onto the
/// abelianisation; a_(s+1)..a_n lie in the centre.
struct Nilpotent2Spec {
  std::size_t n = 0;
  std::size_t split = 0;
  /// Order of each base element, 0 for infinite.
  std::vector<std::int64_t> orders;
  /// commutators[{j, i}] (i < j, 1-based): coordinates of [a_j, a_i] on the base.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::int64_t>> commutators;
};

GraphAutomaticPresentation zn(std::size_t n);
GraphAutomaticPresentation fg_abelian(std::size_t n, const std::vector<std::int64_t>& torsion);
GraphAutomaticPresentation heisenberg(std::size_t n = 3);
GraphAutomaticPresentation ut(std::size_t n);
GraphAutomaticPresentation ut_m(std::size_t n, std::size_t m);
GraphAutomaticPresentation bs1n(std::int64_t p);
GraphAutomaticPresentation free_group(std::size_t rank);
/// Reduced words with relations E_<gen>, Prefix and EqLen.
AutomaticStructure gamma_free(std::size_t rank);
GraphAutomaticPresentation wreath_finite_by_z(const FiniteGroupTable& g);
GraphAutomaticPresentation nilpotent2(const Nilpotent2Spec& spec);
GraphAutomaticPresentation semidirect_zn_z(const IntMatrix& A);

GraphAutomaticPresentation direct_product(const GraphAutomaticPresentation& p, const GraphAutomaticPresentation& q);
GraphAutomaticPresentation free_product(const GraphAutomaticPresentation& p, const GraphAutomaticPresentation& q);
/// p normal, q acting: action[y] = {(r, y^-1 r y)} on p's domain.
GraphAutomaticPresentation semidirect(const GraphAutomaticPresentation& p, const GraphAutomaticPresentation& q,
                                      const std::map<std::string, RegularRelation>& action);
GraphAutomaticPresentation finite_extension(const FiniteExtensionData& data);
GraphAutomaticPresentation restrict_to_regular_subgroup(const GraphAutomaticPresentation& p, const Dfa& subgroup,
                                                        const std::vector<std::string>& generators);
GraphAutomaticPresentation extend_generator(const GraphAutomaticPresentation& p, const std::string& name,
                                            const GroupWord& w);
/// fg_abelian encodings with the ternary relation Mult.
AutomaticStructure fa_abelian_multiplication(std::size_t n, const std::vector<std::int64_t>& torsion);

/// Elements p^n x + m / p^k of B(1,p), with p not dividing m when k > 0.
struct BsElement {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t k = 0;
  bool operator==(const BsElement&) const = default;
};
const Alphabet& bs1n_alphabet(std::int64_t p);
Word bs1n_encode(std::int64_t p, const BsElement& e);
BsElement bs1n_decode(std::int64_t p, const Word& w);

/// Lamplighter style elements (f, shift). The tape holds group element indices
/// for positions [low, low + tape.size()), position 0 always included; position
/// r holds the lamp f(shift - r).
struct WreathElement {
  std::int64_t shift = 0;
  std::int64_t low = 0;
  std::vector<std::size_t> tape;
};
Word wreath_encode(const FiniteGroupTable& g, const WreathElement& e);
WreathElement wreath_decode(const FiniteGroupTable& g, const Word& w);

/// Reduced words over a1..an and their inverses: "a" "A" style letters.
std::vector<std::string> free_generator_names(std::size_t rank);

}  // namespace cgauto
