#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <set>

#include "cgauto/error.hpp"
#include "cgauto/groups.hpp"
#include "group_support.hpp"

namespace cgauto {

GroupWord parse_group_word(std::string_view text) {
  GroupWord w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '^') ++pos;
    GroupLetter letter{std::string(text.substr(start, pos - start)), 1};
    if (letter.generator.empty()) throw ParseError("missing generator name", start);
    // the empty word
    if (letter.generator == "λ" && (pos == text.size() || text[pos] != '^')) continue;
    if (pos < text.size() && text[pos] == '^') {
      const std::size_t e = ++pos;
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      const auto exponent = text.substr(e, pos - e);
      if (exponent == "-1") {
        letter.sign = -1;
      } else if (exponent != "1") {
        throw ParseError("exponent must be 1 or -1", e);
      }
    }
    w.push_back(std::move(letter));
  }
  return w;
}

std::string to_string(const GroupWord& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += l.generator;
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

GroupWord inverse(const GroupWord& w) {
  GroupWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

struct GraphAutomaticPresentation::Cache {
  RegularRelation equality;
  std::mutex mutex;
  std::map<std::pair<std::string, bool>, RegularRelation> inverses;
};

GraphAutomaticPresentation::GraphAutomaticPresentation(Alphabet base, Dfa domain, Word identity,
                                                       std::vector<Generator> generators, std::string meta)
    : base_(std::move(base)),
      domain_(base_, 1, domain),
      identity_(std::move(identity)),
      generators_(std::move(generators)),
      meta_(std::move(meta)) {
  require_same_alphabet(base_, identity_.alphabet, "presentation identity");
  if (!accepts(domain_.dfa(), identity_)) throw InvalidArgument("identity word is not in the domain");
  std::set<std::string> names;
  for (const auto& g : generators_) {
    if (g.name.empty()) throw InvalidArgument("empty generator name");
    if (!names.insert(g.name).second) throw InvalidArgument("duplicate generator '" + g.name + "'");
    if (g.right.arity() != 2 || g.right.base() != base_) {
      throw InvalidArgument("generator '" + g.name + "' is not a binary relation over the base");
    }
    if (g.left && (g.left->arity() != 2 || g.left->base() != base_)) {
      throw InvalidArgument("left relation of '" + g.name + "' is not a binary relation over the base");
    }
  }
  cache_ = std::make_shared<Cache>();
  cache_->equality = equality_relation(domain_.nfa());
}

bool GraphAutomaticPresentation::has_generator(const std::string& name) const {
  return std::any_of(generators_.begin(), generators_.end(), [&](const Generator& g) { return g.name == name; });
}

const Generator& GraphAutomaticPresentation::generator(const std::string& name) const {
  for (const auto& g : generators_) {
    if (g.name == name) return g;
  }
  throw InvalidArgument("unknown generator '" + name + "'");
}

const RegularRelation& GraphAutomaticPresentation::right(const GroupLetter& letter) const {
  const Generator& g = generator(letter.generator);
  if (letter.sign > 0) return g.right;
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->inverses.find({g.name, false});
  if (it == cache_->inverses.end()) it = cache_->inverses.emplace(std::make_pair(g.name, false), transpose(g.right)).first;
  return it->second;
}

const RegularRelation& GraphAutomaticPresentation::left(const GroupLetter& letter) const {
  const Generator& g = generator(letter.generator);
  if (!g.left) throw UnsupportedPresentation("generator '" + g.name + "' has no left relation");
  if (letter.sign > 0) return *g.left;
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->inverses.find({g.name, true});
  if (it == cache_->inverses.end()) it = cache_->inverses.emplace(std::make_pair(g.name, true), transpose(*g.left)).first;
  return it->second;
}

bool GraphAutomaticPresentation::has_left() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const Generator& g) { return g.left.has_value(); });
}

const RegularRelation& GraphAutomaticPresentation::equality() const {
  if (!cache_) throw InvalidArgument("empty presentation");
  return cache_->equality;
}

void GraphAutomaticPresentation::require_generators(const GroupWord& w) const {
  for (const auto& l : w) generator(l.generator);
}

RegularRelation GraphAutomaticPresentation::word_relation(const GroupWord& w) const {
  require_generators(w);
  if (w.empty()) return equality();
  RegularRelation r = right(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) r = compose(r, right(w[i]));
  return r;
}

RegularRelation GraphAutomaticPresentation::left_word_relation(const GroupWord& w) const {
  require_generators(w);
  if (w.empty()) return equality();
  RegularRelation r = left(w.back());
  for (std::size_t i = w.size() - 1; i-- > 0;) r = compose(r, left(w[i]));
  return r;
}

AutomaticStructure GraphAutomaticPresentation::structure() const {
  AutomaticStructure s("presentation", domain_.dfa());
  for (const auto& g : generators_) s = s.with_relation(g.name, g.right, false);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const Leaf> residue_leaf(std::int64_t order) {
  std::vector<std::string> names;
  for (std::int64_t i = 0; i < order; ++i) names.push_back(std::to_string(i));
  return std::make_shared<const Leaf>(std::move(names));
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// {x : x = r (mod m)} on integer words.
RegularRelation residue_class(std::int64_t m, std::int64_t r) {
  AutomaticStructure s = presburger_structure()
                             .with_relation("M", multiple_relation(m), false)
                             .with_relation("R", RegularRelation(binary_alphabet(), 1, word_nfa(encode_int(r))), false);
  return compile(s, parse_formula("E q E y E c (M(q,y) & R(c) & Add(y,c,x))"), {"x"});
}

}  // namespace

CoordinateSpace::CoordinateSpace(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  std::vector<std::shared_ptr<const Leaf>> leaves;
  for (auto w : orders_) {
    if (w < 0 || w == 1) throw InvalidArgument("coordinate order must be 0 (infinite) or at least 2");
    leaves.push_back(w == 0 ? binary_alphabet().leaf_ptr(0) : residue_leaf(w));
  }
  alphabet_ = Alphabet::from_leaves(std::move(leaves));
}

Dfa CoordinateSpace::domain() const {
  std::vector<detail::Part> parts;
  const Nfa ints = int_domain().to_nfa();
  for (std::size_t t = 0; t < orders_.size(); ++t) {
    if (orders_[t] == 0) {
      parts.push_back(detail::place(ints, {t}));
    } else {
      parts.push_back(detail::place(detail::single_letter(alphabet_.slice(t, 1)), {t}));
    }
  }
  return detail::assemble(alphabet_, 1, parts).dfa();
}

Word CoordinateSpace::encode(std::span<const std::int64_t> v) const {
  if (v.size() != orders_.size()) throw InvalidArgument("vector has wrong dimension");
  std::vector<Word> words;
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (orders_[t] == 0) {
      words.push_back(encode_int(v[t]));
    } else {
      words.push_back(Word(alphabet_.slice(t, 1), {static_cast<Symbol>(mod(v[t], orders_[t]))}));
    }
  }
  std::vector<std::pair<const Word*, std::vector<std::size_t>>> parts;
  for (std::size_t t = 0; t < v.size(); ++t) parts.push_back({&words[t], {t}});
  return detail::merge_words(alphabet_, parts);
}

std::vector<std::int64_t> CoordinateSpace::decode(const Word& w) const {
  require_same_alphabet(alphabet_, w.alphabet, "coordinate decode");
  std::vector<std::int64_t> out;
  for (std::size_t t = 0; t < orders_.size(); ++t) {
    const Alphabet leaf = alphabet_.slice(t, 1);
    Word part;
    if (!detail::digits_to_word(detail::track_digits(w, t), leaf, part)) {
      throw EncodingError("coordinate track resumes after padding");
    }
    if (orders_[t] == 0) {
      out.push_back(decode_int(Word(binary_alphabet(), part.symbols)));
    } else {
      if (part.size() != 1) throw EncodingError("finite coordinate must be a single letter");
      out.push_back(static_cast<std::int64_t>(part[0]));
    }
  }
  return out;
}

Dfa CoordinateSpace::region(const RegularRelation& r) const {
  if (r.arity() != dimension()) throw ArityError("region needs one component per coordinate");
  return minimal_dfa(intersect(r.reinterpret(alphabet_, 1).nfa(), domain().to_nfa()));
}

RegularRelation CoordinateSpace::affine_map(const IntMatrix& M, std::span<const std::int64_t> c) const {
  const std::size_t d = orders_.size();
  if (M.size() != d || c.size() != d) throw InvalidArgument("affine map has wrong dimension");
  for (const auto& row : M) {
    if (row.size() != d) throw InvalidArgument("affine map has wrong dimension");
  }
  std::vector<std::size_t> inf, fin;
  for (std::size_t t = 0; t < d; ++t) (orders_[t] == 0 ? inf : fin).push_back(t);
  for (auto k : inf) {
    for (auto j : fin) {
      if (M[k][j] != 0) throw InvalidArgument("an unbounded coordinate cannot depend on a finite one");
    }
  }
  auto infinite_part = [&] {
    IntMatrix A;
    std::vector<std::int64_t> b;
    for (auto k : inf) {
      std::vector<std::int64_t> row;
      for (auto j : inf) row.push_back(M[k][j]);
      A.push_back(row);
      b.push_back(c[k]);
    }
    return affine_relation(A, b);
  };
  if (fin.empty()) return detail::reinterpret(infinite_part(), alphabet_, 2);

  // unbounded inputs that matter for some finite output, and the modulus to track them by
  std::vector<std::size_t> relevant;
  std::int64_t L = 1;
  for (auto k : fin) L = std::lcm(L, orders_[k]);
  for (auto j : inf) {
    for (auto k : fin) {
      if (mod(M[k][j], orders_[k]) != 0) {
        relevant.push_back(j);
        break;
      }
    }
  }

  std::optional<RegularRelation> inf_rel;
  if (!inf.empty()) inf_rel = infinite_part();
  std::vector<std::shared_ptr<const Leaf>> fin_leaves;
  for (auto k : fin) fin_leaves.push_back(alphabet_.leaf_ptr(k));
  const Alphabet fin_alpha = Alphabet::from_leaves(fin_leaves);
  const Alphabet fin_pair = fin_alpha.power(2);
  std::vector<std::size_t> fin_tracks = detail::spread(fin, 2, d);
  std::vector<std::size_t> inf_tracks = detail::spread(inf, 2, d);
  std::vector<std::map<std::int64_t, RegularRelation>> residues(d);

  std::optional<RegularRelation> result;
  std::vector<std::int64_t> rho(relevant.size(), 0);
  while (true) {
    NfaBuilder b(fin_pair, 2);
    b.add_initial(0);
    b.set_accepting(1);
    std::vector<std::int64_t> x(fin.size(), 0);
    while (true) {
      std::vector<std::size_t> digits(2 * fin.size());
      for (std::size_t a = 0; a < fin.size(); ++a) {
        const std::size_t k = fin[a];
        std::int64_t y = c[k];
        for (std::size_t bb = 0; bb < fin.size(); ++bb) y += M[k][fin[bb]] * x[bb];
        for (std::size_t r = 0; r < relevant.size(); ++r) y += M[k][relevant[r]] * rho[r];
        digits[a] = static_cast<std::size_t>(x[a]);
        digits[fin.size() + a] = static_cast<std::size_t>(mod(y, orders_[k]));
      }
      b.add_edge(0, fin_pair.compose(digits), 1);
      std::size_t i = 0;
      while (i < fin.size() && ++x[i] == orders_[fin[i]]) x[i++] = 0;
      if (i == fin.size()) break;
    }
    std::vector<detail::Part> parts;
    parts.push_back(detail::place(b.build(), fin_tracks));
    if (inf_rel) parts.push_back(detail::place(inf_rel->nfa(), inf_tracks));
    for (std::size_t r = 0; r < relevant.size(); ++r) {
      auto& cache = residues[relevant[r]];
      auto it = cache.find(rho[r]);
      if (it == cache.end()) it = cache.emplace(rho[r], residue_class(L, rho[r])).first;
      parts.push_back(detail::place(it->second.nfa(), {relevant[r]}));
    }
    RegularRelation piece = detail::assemble(alphabet_, 2, parts);
    result = result ? rel_union(*result, piece) : piece;
    std::size_t i = 0;
    while (i < rho.size() && ++rho[i] == L) rho[i++] = 0;
    if (i == rho.size()) break;
  }
  return *result;
}

// ---------------------------------------------------------------------------

FiniteGroupTable::FiniteGroupTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table,
                                   std::size_t identity)
    : names_(std::move(names)), table_(std::move(table)), identity_(identity) {
  const std::size_t n = names_.size();
  if (n == 0) throw InvalidArgument("group table is empty");
  if (table_.size() != n || identity_ >= n) throw InvalidArgument("group table has wrong shape");
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty() || !seen.insert(name).second) throw InvalidArgument("group element names must be distinct");
  }
  for (const auto& row : table_) {
    if (row.size() != n) throw InvalidArgument("group table has wrong shape");
    for (auto v : row) {
      if (v >= n) throw InvalidArgument("group table entry out of range");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[identity_][a] != a || table_[a][identity_] != a) throw InvalidArgument("identity is not neutral");
  }
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (table_[a][b] == identity_) inverse_[a] = b;
    }
    if (inverse_[a] == n || table_[inverse_[a]][a] != identity_) throw InvalidArgument("element without inverse");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw InvalidArgument("table is not associative");
      }
    }
  }
}

FiniteGroupTable FiniteGroupTable::cyclic(std::size_t n) {
  if (n == 0) throw InvalidArgument("cyclic group order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "1" : n == 2 ? "a" : "a" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return FiniteGroupTable(std::move(names), std::move(table), 0);
}

}  // namespace cgauto
