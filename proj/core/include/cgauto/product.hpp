#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cgauto/automaton.hpp"

namespace cgauto {

/// An automaton taking part in a synchronous product, together with the output
/// track each of its own tracks is wired to. Two tracks wired to the same
/// output track must carry equal letters (this is how joins on shared
/// variables and diagonals are expressed).
struct PositiveOperand {
  const Nfa* automaton;
  std::vector<std::size_t> tracks;
};

struct NegativeOperand {
  const Dfa* automaton;
  std::vector<std::size_t> tracks;
};

/// Synchronous product over the tracks of `out`. The result accepts a
/// convolution exactly when every positive operand accepts its projection and
/// no negative operand accepts its projection. Projections drop trailing
/// all-padding columns, so an operand whose tracks have all ended must already
/// be accepting (positives) or is decided at that point (negatives).
///
/// Every output track must be wired to at least one positive operand. Only
/// transitions consistent across all operands are enumerated; operands wired to
/// already-fixed tracks are looked up through a per-state index rather than
/// scanned.
Nfa synchronous_product(const Alphabet& out, std::span<const PositiveOperand> positives,
                        std::span<const NegativeOperand> negatives = {});

/// Keeps the tracks listed in `keep` (in that order) and erases the others.
/// States from which acceptance is reachable through columns that are padding
/// on every kept track become accepting, so tuples whose erased components
/// were the longest are not lost; such columns are then dropped.
Nfa erase_tracks(const Nfa& a, std::span<const std::size_t> keep);

/// Renames symbols by moving track `i` to output position `target[i]`. The
/// map must be a bijection of track positions with equal leaves.
Nfa permute_tracks(const Nfa& a, std::span<const std::size_t> target);
Dfa permute_tracks(const Dfa& a, std::span<const std::size_t> target);

}  // namespace cgauto
