#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cgauto {

using Symbol = std::uint64_t;
using State = std::uint32_t;

/// A plain finite alphabet: an ordered list of distinct display names.
class Leaf {
 public:
  explicit Leaf(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const Leaf& other) const noexcept { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// An alphabet made of one or more tracks ("leaves"). A symbol is a column
/// holding one letter or the padding mark per track; the all-padding column is
/// not a symbol. Symbols are dense indices in mixed radix (track 0 varies
/// fastest), with the padding mark as the top digit of each track. A
/// single-track alphabet is therefore just its leaf, and the convolution
/// alphabet of an n-tuple over a k-track alphabet is index-identical to the
/// (n*k)-track alphabet with the same leaves.
class Alphabet {
 public:
  /// The zero-track alphabet (no symbols; only the empty word).
  Alphabet();
  /// Single-track alphabet with the given display names.
  explicit Alphabet(std::vector<std::string> names);
  Alphabet(std::initializer_list<std::string> names)
      : Alphabet(std::vector<std::string>(names)) {}

  static Alphabet from_leaves(std::vector<std::shared_ptr<const Leaf>> leaves);
  /// Tracks of all parts, concatenated in order.
  static Alphabet product(std::span<const Alphabet> parts);
  /// `n` copies of this alphabet's tracks; the convolution alphabet of n-tuples.
  Alphabet power(std::size_t n) const;
  /// Consecutive tracks [first, first + count).
  Alphabet slice(std::size_t first, std::size_t count) const;

  Symbol size() const noexcept { return size_; }
  std::size_t track_count() const noexcept { return leaves_.size(); }
  const Leaf& leaf(std::size_t track) const { return *leaves_.at(track); }
  const std::shared_ptr<const Leaf>& leaf_ptr(std::size_t track) const { return leaves_.at(track); }
  const std::vector<std::shared_ptr<const Leaf>>& leaves() const noexcept { return leaves_; }

  std::size_t radix(std::size_t track) const { return leaves_[track]->size() + 1; }
  std::size_t pad_digit(std::size_t track) const { return leaves_[track]->size(); }
  Symbol stride(std::size_t track) const { return strides_[track]; }

  std::size_t digit(Symbol s, std::size_t track) const {
    return static_cast<std::size_t>((s / strides_[track]) % radix(track));
  }
  bool is_pad(Symbol s, std::size_t track) const { return digit(s, track) == pad_digit(track); }
  /// Index of the column of tracks [first, first+count) inside the slice alphabet;
  /// equals slice(first,count).size() when all those tracks are padding.
  Symbol sub_symbol(Symbol s, std::size_t first, std::size_t count) const;
  /// Column index from per-track digits; the all-padding column yields size().
  Symbol compose(std::span<const std::size_t> digits) const;

  std::string symbol_name(Symbol s) const;
  std::optional<Symbol> find_symbol(std::string_view name) const;
  bool contains(Symbol s) const noexcept { return s < size_; }

  /// Compact description, e.g. "[0,1][a,b,c]".
  std::string signature() const;
  static Alphabet parse_signature(std::string_view text);

  bool operator==(const Alphabet& other) const noexcept;
  bool operator!=(const Alphabet& other) const noexcept { return !(*this == other); }

 private:
  void init();

  std::vector<std::shared_ptr<const Leaf>> leaves_;
  std::vector<Symbol> strides_;
  Symbol size_ = 0;
};

/// Throws AlphabetMismatch unless `a == b`.
void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* where);

/// A finite word: symbol indices over an alphabet. The empty sequence is λ.
struct Word {
  Alphabet alphabet;
  std::vector<Symbol> symbols;

  Word() = default;
  explicit Word(Alphabet a) : alphabet(std::move(a)) {}
  Word(Alphabet a, std::vector<Symbol> s);

  std::size_t size() const noexcept { return symbols.size(); }
  bool empty() const noexcept { return symbols.empty(); }
  Symbol operator[](std::size_t i) const { return symbols[i]; }

  /// Symbol names joined by `separator`; "λ" for the empty word when `separator` is non-empty.
  std::string to_string(std::string_view separator = " ") const;

  bool operator==(const Word& other) const {
    return symbols == other.symbols && alphabet == other.alphabet;
  }
  bool operator!=(const Word& other) const { return !(*this == other); }
};

/// Parses whitespace separated symbol names. A token that is not a symbol is
/// split into single characters (single-character leaves) or into
/// parenthesised columns. "λ" or blank text is the empty word.
Word parse_word(const Alphabet& alphabet, std::string_view text);

/// Length-lexicographic order: shorter first, then lexicographic by symbol index.
bool llex_less(std::span<const Symbol> a, std::span<const Symbol> b);
inline bool llex_less(const Word& a, const Word& b) { return llex_less(a.symbols, b.symbols); }

}  // namespace cgauto
