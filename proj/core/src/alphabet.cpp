#include "cgauto/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "cgauto/error.hpp"

namespace cgauto {

namespace {

bool valid_leaf_name(const std::string& name) {
  if (name.empty() || name == "#") return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' || c == ']';
  });
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  out.push_back(current);
  return out;
}

}  // namespace

Leaf::Leaf(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InvalidArgument("alphabet must have at least one symbol");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_leaf_name(names_[i])) {
      throw InvalidArgument("invalid symbol name '" + names_[i] + "'");
    }
    if (!index_.emplace(names_[i], i).second) {
      throw InvalidArgument("duplicate symbol name '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> Leaf::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Alphabet::Alphabet() { init(); }

Alphabet::Alphabet(std::vector<std::string> names) {
  leaves_.push_back(std::make_shared<const Leaf>(std::move(names)));
  init();
}

Alphabet Alphabet::from_leaves(std::vector<std::shared_ptr<const Leaf>> leaves) {
  Alphabet a;
  a.leaves_ = std::move(leaves);
  a.init();
  return a;
}

Alphabet Alphabet::product(std::span<const Alphabet> parts) {
  std::vector<std::shared_ptr<const Leaf>> leaves;
  for (const auto& p : parts) leaves.insert(leaves.end(), p.leaves_.begin(), p.leaves_.end());
  return from_leaves(std::move(leaves));
}

Alphabet Alphabet::power(std::size_t n) const {
  std::vector<std::shared_ptr<const Leaf>> leaves;
  for (std::size_t i = 0; i < n; ++i) leaves.insert(leaves.end(), leaves_.begin(), leaves_.end());
  return from_leaves(std::move(leaves));
}

Alphabet Alphabet::slice(std::size_t first, std::size_t count) const {
  if (first + count > leaves_.size()) throw ArityError("alphabet slice out of range");
  return from_leaves({leaves_.begin() + static_cast<std::ptrdiff_t>(first),
                      leaves_.begin() + static_cast<std::ptrdiff_t>(first + count)});
}

void Alphabet::init() {
  strides_.assign(leaves_.size() + 1, 1);
  Symbol total = 1;
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    strides_[i] = total;
    const Symbol r = leaves_[i]->size() + 1;
    if (total > std::numeric_limits<Symbol>::max() / 2 / r) {
      throw InvalidArgument("convolution alphabet too large to index");
    }
    total *= r;
  }
  strides_[leaves_.size()] = total;
  size_ = total - 1;
}

Symbol Alphabet::sub_symbol(Symbol s, std::size_t first, std::size_t count) const {
  const Symbol span = strides_[first + count] / strides_[first];
  return (s / strides_[first]) % span;
}

Symbol Alphabet::compose(std::span<const std::size_t> digits) const {
  Symbol s = 0;
  for (std::size_t i = 0; i < leaves_.size(); ++i) s += strides_[i] * digits[i];
  return s;
}

std::string Alphabet::symbol_name(Symbol s) const {
  if (s >= size_) throw AlphabetMismatch("symbol index out of range");
  if (leaves_.size() == 1) return leaves_[0]->name(static_cast<std::size_t>(s));
  std::string out = "(";
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    if (i) out += ',';
    const std::size_t d = digit(s, i);
    out += d == pad_digit(i) ? std::string("#") : leaves_[i]->name(d);
  }
  out += ')';
  return out;
}

std::optional<Symbol> Alphabet::find_symbol(std::string_view name) const {
  if (leaves_.size() == 1) {
    auto d = leaves_[0]->find(name);
    if (!d) return std::nullopt;
    return static_cast<Symbol>(*d);
  }
  if (name.size() < 2 || name.front() != '(' || name.back() != ')') return std::nullopt;
  auto parts = split_top_level(name.substr(1, name.size() - 2), ',');
  if (parts.size() != leaves_.size()) return std::nullopt;
  std::vector<std::size_t> digits(leaves_.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] == "#") {
      digits[i] = pad_digit(i);
    } else {
      auto d = leaves_[i]->find(parts[i]);
      if (!d) return std::nullopt;
      digits[i] = *d;
    }
  }
  const Symbol s = compose(digits);
  if (s >= size_) return std::nullopt;
  return s;
}

std::string Alphabet::signature() const {
  std::string out;
  for (const auto& leaf : leaves_) {
    out += '[';
    for (std::size_t i = 0; i < leaf->size(); ++i) {
      if (i) out += ',';
      out += leaf->name(i);
    }
    out += ']';
  }
  return out;
}

Alphabet Alphabet::parse_signature(std::string_view text) {
  std::vector<std::shared_ptr<const Leaf>> leaves;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '[') throw ParseError("expected '[' in alphabet signature", pos);
    const auto close = text.find(']', pos);
    if (close == std::string_view::npos) throw ParseError("unterminated '[' in alphabet signature", pos);
    leaves.push_back(std::make_shared<const Leaf>(split_top_level(text.substr(pos + 1, close - pos - 1), ',')));
    pos = close + 1;
  }
  return from_leaves(std::move(leaves));
}

bool Alphabet::operator==(const Alphabet& other) const noexcept {
  if (leaves_.size() != other.leaves_.size()) return false;
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    if (leaves_[i] != other.leaves_[i] && !(*leaves_[i] == *other.leaves_[i])) return false;
  }
  return true;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* where) {
  if (a != b) {
    throw AlphabetMismatch(std::string(where) + ": alphabet mismatch (" + a.signature() + " vs " +
                           b.signature() + ")");
  }
}

Word::Word(Alphabet a, std::vector<Symbol> s) : alphabet(std::move(a)), symbols(std::move(s)) {
  for (Symbol x : symbols) {
    if (!alphabet.contains(x)) throw AlphabetMismatch("word symbol outside its alphabet");
  }
}

std::string Word::to_string(std::string_view separator) const {
  if (symbols.empty()) return separator.empty() ? std::string() : std::string("λ");
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += separator;
    out += alphabet.symbol_name(symbols[i]);
  }
  return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w(alphabet);
  std::size_t pos = 0;
  auto fail = [&](std::size_t at, const std::string& tok) {
    throw ParseError("unknown symbol '" + tok + "'", at);
  };
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string token(text.substr(pos, end - pos));
    if (token == "λ") {
      pos = end;
      continue;
    }
    if (auto s = alphabet.find_symbol(token)) {
      w.symbols.push_back(*s);
    } else if (alphabet.track_count() > 1 && token.front() == '(') {
      // concatenated columns "(..)(..)"
      std::size_t i = 0;
      while (i < token.size()) {
        const auto close = token.find(')', i);
        if (close == std::string::npos) fail(pos + i, token);
        const std::string col = token.substr(i, close - i + 1);
        auto s2 = alphabet.find_symbol(col);
        if (!s2) fail(pos + i, col);
        w.symbols.push_back(*s2);
        i = close + 1;
      }
    } else if (alphabet.track_count() == 1) {
      for (std::size_t i = 0; i < token.size(); ++i) {
        auto s2 = alphabet.find_symbol(token.substr(i, 1));
        if (!s2) fail(pos + i, token.substr(i, 1));
        w.symbols.push_back(*s2);
      }
    } else {
      fail(pos, token);
    }
    pos = end;
  }
  return w;
}

bool llex_less(std::span<const Symbol> a, std::span<const Symbol> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace cgauto
