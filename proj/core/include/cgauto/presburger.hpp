#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cgauto/compiler.hpp"

namespace cgauto {

/// The digit alphabet {0,1} of the integer encoding.
const Alphabet& binary_alphabet();

/// Least significant digit first two's complement. A word d0..d(k-1) has value
/// sum d_i 2^i for i < k-1, minus d(k-1) 2^(k-1). Canonical words have length 1
/// or end in two different digits.
Word encode_int(std::int64_t x);
/// Throws EncodingError for empty, non-canonical or out-of-range words.
std::int64_t decode_int(const Word& w);
bool is_canonical_int(const Word& w);

/// Convolution of the canonical encodings of the entries.
Word encode_int_vector(std::span<const std::int64_t> v);
std::vector<std::int64_t> decode_int_vector(const Word& w, std::size_t dimension);

/// Accepts exactly the canonical integer words.
Dfa int_domain();

/// {(u,v,w) : decode(u) + decode(v) = decode(w)} over canonical words.
RegularRelation addition_relation();

/// (Z; Add, Nonneg, One) with domain int_domain(). Nonneg and One are included
/// because neither the order nor the constant 1 is definable from Add over Z.
AutomaticStructure presburger_structure();

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Default bound on |entry| for affine_relation.
inline constexpr std::int64_t default_coefficient_bound = 64;

/// {(x1..xd, y1..yd') : y = A x + c}. A is d' x d with d' >= 1. Built by
/// compiling the defining formula over presburger_structure(), with multiples
/// obtained by repeated doubling. Throws InvalidArgument on a dimension
/// mismatch or an entry of A or c above `bound` in absolute value.
RegularRelation affine_relation(const IntMatrix& A, std::span<const std::int64_t> c,
                                std::int64_t bound = default_coefficient_bound);

/// {(x, y) : y = k x}.
RegularRelation multiple_relation(std::int64_t k);

}  // namespace cgauto
