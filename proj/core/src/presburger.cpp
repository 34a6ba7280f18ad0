#include "cgauto/presburger.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "cgauto/error.hpp"
#include "cgauto/explore.hpp"
#include "cgauto/fa.hpp"
#include "cgauto/product.hpp"

namespace cgauto {

const Alphabet& binary_alphabet() {
  static const Alphabet a{"0", "1"};
  return a;
}

Word encode_int(std::int64_t x) {
  Word w(binary_alphabet());
  while (true) {
    const Symbol d = static_cast<Symbol>(x & 1);
    w.symbols.push_back(d);
    x >>= 1;
    if ((x == 0 && d == 0) || (x == -1 && d == 1)) break;
  }
  return w;
}

bool is_canonical_int(const Word& w) {
  if (w.alphabet != binary_alphabet() || w.empty()) return false;
  const std::size_t k = w.size();
  return k == 1 || w[k - 1] != w[k - 2];
}

std::int64_t decode_int(const Word& w) {
  require_same_alphabet(w.alphabet, binary_alphabet(), "decode_int");
  if (w.empty()) throw EncodingError("empty integer word");
  if (!is_canonical_int(w)) throw EncodingError("non-canonical integer word '" + w.to_string("") + "'");
  const std::size_t k = w.size();
  if (k > 64) throw EncodingError("integer word too long for 64 bits");
  std::uint64_t u = 0;
  for (std::size_t i = 0; i < k; ++i) u |= static_cast<std::uint64_t>(w[i]) << i;
  if (w[k - 1] == 1 && k < 64) u |= ~std::uint64_t{0} << k;
  return static_cast<std::int64_t>(u);
}

Word encode_int_vector(std::span<const std::int64_t> v) {
  std::vector<Word> parts;
  for (auto x : v) parts.push_back(encode_int(x));
  if (parts.empty()) return Word(binary_alphabet().power(0));
  return convolve(parts);
}

std::vector<std::int64_t> decode_int_vector(const Word& w, std::size_t dimension) {
  std::vector<std::int64_t> out;
  for (const auto& part : deconvolve(w, binary_alphabet(), dimension)) out.push_back(decode_int(part));
  return out;
}

namespace {

// Per-component progress while reading a canonical integer word:
// 0 nothing read; 1..4 reading (1 + last + 2*canonical so far); 5..6 finished (5 + last).
constexpr std::uint8_t fresh = 0;
std::uint8_t reading(Symbol last, bool canonical) { return static_cast<std::uint8_t>(1 + last + 2 * canonical); }
std::uint8_t finished(Symbol last) { return static_cast<std::uint8_t>(5 + last); }
bool is_reading(std::uint8_t p) { return p >= 1 && p <= 4; }
Symbol last_digit(std::uint8_t p) { return p >= 5 ? p - 5 : (p - 1) % 2; }
bool canonical_so_far(std::uint8_t p) { return p >= 5 || (is_reading(p) && (p - 1) / 2 == 1); }

// Advances one component by `digit` (2 = padding). Returns false on rejection;
// `effective` receives the digit that takes part in the arithmetic.
bool advance(std::uint8_t& p, Symbol digit, Symbol& effective) {
  if (digit == 2) {
    if (!canonical_so_far(p)) return false;
    p = finished(last_digit(p));
    effective = last_digit(p);
    return true;
  }
  if (p >= 5) return false;
  p = p == fresh ? reading(digit, true) : reading(digit, digit != last_digit(p));
  effective = digit;
  return true;
}

// Words ending in `last`.
Nfa concat_symbol_suffix(const Alphabet& a, Symbol last) {
  NfaBuilder b(a, 2);
  b.add_initial(0);
  b.set_accepting(1);
  for (Symbol s = 0; s < a.size(); ++s) {
    b.add_edge(0, s, 0);
    b.add_edge(1, s, 0);
  }
  b.add_edge(0, last, 1);
  b.add_edge(1, last, 1);
  return b.build();
}

}  // namespace

Dfa int_domain() {
  static const Dfa dfa = [] {
    const Alphabet& a = binary_alphabet();
    Nfa n = explore<std::uint8_t>(
        a, {fresh},
        [](std::uint8_t p, auto emit) {
          for (Symbol d = 0; d < 2; ++d) {
            std::uint8_t q = p;
            Symbol e = 0;
            if (advance(q, d, e)) emit(d, q);
          }
        },
        [](std::uint8_t p) { return canonical_so_far(p); });
    return minimal_dfa(n);
  }();
  return dfa;
}

RegularRelation addition_relation() {
  static const RegularRelation rel = [] {
    const Alphabet& base = binary_alphabet();
    const Alphabet a = base.power(3);
    using S = std::array<std::uint8_t, 4>;  // carry, then the three components
    Nfa n = explore<S>(
        a, {S{0, fresh, fresh, fresh}},
        [&](const S& s, auto emit) {
          for (Symbol col = 0; col < a.size(); ++col) {
            S t = s;
            std::array<Symbol, 3> e{};
            bool ok = true;
            for (std::size_t i = 0; i < 3 && ok; ++i) ok = advance(t[i + 1], component(base, col, i), e[i]);
            if (!ok) continue;
            const Symbol sum = e[0] + e[1] + s[0];
            if (sum % 2 != e[2]) continue;
            t[0] = static_cast<std::uint8_t>(sum / 2);
            emit(col, t);
          }
        },
        [](const S& s) {
          for (std::size_t i = 1; i < 4; ++i) {
            if (!canonical_so_far(s[i])) return false;
          }
          // the sign digits repeat forever; the carry must stay consistent
          Symbol carry = s[0];
          for (int step = 0; step < 3; ++step) {
            const Symbol sum = last_digit(s[1]) + last_digit(s[2]) + carry;
            if (sum % 2 != last_digit(s[3])) return false;
            carry = sum / 2;
          }
          return true;
        });
    return RegularRelation(base, 3, n);
  }();
  return rel;
}

AutomaticStructure presburger_structure() {
  static const AutomaticStructure s = [] {
    const Alphabet& a = binary_alphabet();
    // canonical words whose sign digit is 0
    const Nfa nonneg = intersect(int_domain().to_nfa(), concat_symbol_suffix(a, 0));
    return AutomaticStructure("Z", int_domain())
        .with_relation("Add", addition_relation(), false)
        .with_relation("Nonneg", RegularRelation(a, 1, nonneg), false)
        .with_relation("One", RegularRelation(a, 1, word_nfa(encode_int(1))), false);
  }();
  return s;
}

namespace {

std::recursive_mutex multiples_mutex;
std::map<std::int64_t, std::shared_ptr<const RegularRelation>> multiples;

RegularRelation compile_with(const RegularRelation* m, const char* text) {
  AutomaticStructure s = presburger_structure();
  if (m) s = s.with_relation("M", *m, false);
  return compile(s, parse_formula(text), {"x", "y"});
}

}  // namespace

RegularRelation multiple_relation(std::int64_t k) {
  std::lock_guard<std::recursive_mutex> lock(multiples_mutex);
  if (auto it = multiples.find(k); it != multiples.end()) return *it->second;
  RegularRelation r = [&] {
    if (k == 0) return compile_with(nullptr, "Add(y,y,y) & x = x");
    if (k == 1) return presburger_structure().equality();
    if (k < 0) {
      const RegularRelation m = multiple_relation(-k);
      return compile_with(&m, "E t E z (M(x,t) & Add(t,y,z) & Add(z,z,z))");
    }
    if (k % 2 == 0) {
      const RegularRelation m = multiple_relation(k / 2);
      return compile_with(&m, "E t (M(x,t) & Add(t,t,y))");
    }
    const RegularRelation m = multiple_relation(k - 1);
    return compile_with(&m, "E t (M(x,t) & Add(t,x,y))");
  }();
  multiples[k] = std::make_shared<const RegularRelation>(r);
  return r;
}

namespace {

std::string indexed(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

// {(x1..xd, y) : y = a.x + c}
RegularRelation affine_row(const std::vector<std::int64_t>& a, std::int64_t c) {
  AutomaticStructure s = presburger_structure();
  std::vector<FormulaPtr> parts;
  std::vector<std::string> terms;
  std::vector<std::string> bound;
  VariableOrder order;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string x = indexed("x", i);
    order.push_back(x);
    parts.push_back(var_equal(x, x));
    if (a[i] == 0) continue;
    const std::string m = indexed("M", i);
    const std::string t = indexed("t", i);
    s = s.with_relation(m, multiple_relation(a[i]), false);
    parts.push_back(atom(m, {x, t}));
    terms.push_back(t);
  }
  if (c != 0) {
    s = s.with_relation("C", RegularRelation(binary_alphabet(), 1, word_nfa(encode_int(c))), false);
    parts.push_back(atom("C", {"k"}));
    terms.push_back("k");
  }
  bound = terms;
  const std::string y = "y";
  order.push_back(y);
  if (terms.empty()) {
    parts.push_back(atom("Add", {y, y, y}));
  } else if (terms.size() == 1) {
    parts.push_back(var_equal(terms[0], y));
  } else {
    std::string acc = terms[0];
    for (std::size_t m = 1; m < terms.size(); ++m) {
      const std::string out = m + 1 == terms.size() ? y : indexed("s", m);
      parts.push_back(atom("Add", {acc, terms[m], out}));
      if (out != y) bound.push_back(out);
      acc = out;
    }
  }
  FormulaPtr f = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) f = conj(f, parts[i]);
  for (auto it = bound.rbegin(); it != bound.rend(); ++it) f = exists(*it, f);
  return compile(s, f, order);
}

}  // namespace

RegularRelation affine_relation(const IntMatrix& A, std::span<const std::int64_t> c, std::int64_t bound) {
  if (A.empty()) throw InvalidArgument("affine map needs at least one output");
  if (c.size() != A.size()) throw InvalidArgument("affine map: offset has wrong dimension");
  const std::size_t d = A[0].size();
  for (const auto& row : A) {
    if (row.size() != d) throw InvalidArgument("affine map: rows of different length");
    for (auto v : row) {
      if (v > bound || v < -bound) throw InvalidArgument("affine map: coefficient " + std::to_string(v) + " out of bounds");
    }
  }
  for (auto v : c) {
    if (v > bound || v < -bound) throw InvalidArgument("affine map: offset " + std::to_string(v) + " out of bounds");
  }
  // one operand per row over the inputs it reads; unread inputs only need to be integers
  const std::size_t m = A.size();
  std::vector<RegularRelation> rows;
  std::vector<std::vector<std::size_t>> tracks;
  std::vector<bool> read(d, false);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<std::int64_t> coefficients;
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < d; ++i) {
      if (A[j][i] == 0) continue;
      coefficients.push_back(A[j][i]);
      t.push_back(i);
      read[i] = true;
    }
    t.push_back(d + j);
    rows.push_back(affine_row(coefficients, c[j]));
    tracks.push_back(std::move(t));
  }
  const Nfa ints = int_domain().to_nfa();
  std::vector<PositiveOperand> ops;
  for (std::size_t j = 0; j < m; ++j) ops.push_back(PositiveOperand{&rows[j].nfa(), tracks[j]});
  std::vector<std::vector<std::size_t>> single(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (read[i]) continue;
    single[i] = {i};
    ops.push_back(PositiveOperand{&ints, single[i]});
  }
  return RegularRelation(binary_alphabet(), d + m, synchronous_product(binary_alphabet().power(d + m), ops));
}

}  // namespace cgauto
