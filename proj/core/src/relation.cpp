#include "cgauto/relation.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "cgauto/error.hpp"
#include "cgauto/explore.hpp"
#include "cgauto/product.hpp"

namespace cgauto {

struct RegularRelation::Cache {
  std::once_flag once;
  Nfa nfa;
};

RegularRelation::RegularRelation(Alphabet base, std::size_t arity, const Nfa& automaton)
    : RegularRelation(std::move(base), arity, determinize(automaton)) {}

RegularRelation::RegularRelation(Alphabet base, std::size_t arity, const Dfa& automaton)
    : base_(std::move(base)), arity_(arity), cache_(std::make_shared<Cache>()) {
  require_same_alphabet(base_.power(arity_), automaton.alphabet(), "relation");
  dfa_ = minimize(automaton);
}

RegularRelation RegularRelation::reinterpret(Alphabet base, std::size_t arity) const {
  require_same_alphabet(base.power(arity), alphabet(), "reinterpret");
  RegularRelation out = *this;
  out.base_ = std::move(base);
  out.arity_ = arity;
  return out;
}

const Nfa& RegularRelation::nfa() const {
  if (!cache_) throw InvalidArgument("empty relation object");
  std::call_once(cache_->once, [this] { cache_->nfa = dfa_.to_nfa(); });
  return cache_->nfa;
}

bool RegularRelation::contains(std::span<const Word> tuple) const {
  if (tuple.size() != arity_) throw ArityError("tuple size differs from relation arity");
  for (const auto& w : tuple) require_same_alphabet(base_, w.alphabet, "relation membership");
  if (arity_ == 0) return dfa_.is_accepting(dfa_.initial());
  return dfa_.accepts(convolve(tuple).symbols);
}

std::vector<std::size_t> RegularRelation::component_tracks(const Alphabet& base,
                                                           std::span<const std::size_t> components) {
  const std::size_t k = base.track_count();
  std::vector<std::size_t> tracks;
  tracks.reserve(components.size() * k);
  for (auto c : components) {
    for (std::size_t j = 0; j < k; ++j) tracks.push_back(c * k + j);
  }
  return tracks;
}

Symbol column(const Alphabet& base, std::span<const Symbol> components) {
  const Symbol radix = base.size() + 1;
  Symbol s = 0, mult = 1;
  for (Symbol c : components) {
    s += c * mult;
    mult *= radix;
  }
  return s;
}

Symbol component(const Alphabet& base, Symbol column, std::size_t i) {
  const Symbol radix = base.size() + 1;
  for (std::size_t j = 0; j < i; ++j) column /= radix;
  return column % radix;
}

Word convolve(std::span<const Word> tuple) {
  if (tuple.empty()) throw ArityError("convolution of an empty tuple");
  const Alphabet& base = tuple[0].alphabet;
  std::size_t len = 0;
  for (const auto& w : tuple) {
    require_same_alphabet(base, w.alphabet, "convolve");
    len = std::max(len, w.size());
  }
  Word out(base.power(tuple.size()));
  std::vector<Symbol> col(tuple.size());
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t c = 0; c < tuple.size(); ++c) col[c] = i < tuple[c].size() ? tuple[c][i] : base.size();
    out.symbols.push_back(column(base, col));
  }
  return out;
}

std::vector<Word> deconvolve(const Word& w, const Alphabet& base, std::size_t arity) {
  require_same_alphabet(base.power(arity), w.alphabet, "deconvolve");
  std::vector<Word> out(arity, Word(base));
  std::vector<bool> ended(arity, false);
  for (Symbol s : w.symbols) {
    for (std::size_t c = 0; c < arity; ++c) {
      const Symbol x = component(base, s, c);
      if (x == base.size()) {
        ended[c] = true;
      } else if (ended[c]) {
        throw InvalidConvolution("component " + std::to_string(c) + " resumes after padding");
      } else {
        out[c].symbols.push_back(x);
      }
    }
  }
  return out;
}

Dfa valid_convolution(const Alphabet& base, std::size_t arity) {
  if (arity == 0 || arity > 16) throw ArityError("valid_convolution needs 1 <= arity <= 16");
  const Alphabet out = base.power(arity);
  const std::size_t masks = std::size_t{1} << arity;
  const State dead = static_cast<State>(masks);
  std::vector<bool> accepting(masks + 1, true);
  accepting[dead] = false;
  std::vector<std::vector<Edge>> edges(masks + 1);
  std::vector<State> fallback(masks + 1, dead);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    for (Symbol s = 0; s < out.size(); ++s) {
      std::size_t pads = 0;
      for (std::size_t c = 0; c < arity; ++c) {
        if (component(base, s, c) == base.size()) pads |= std::size_t{1} << c;
      }
      if ((mask & ~pads) == 0) edges[mask].push_back({s, static_cast<State>(mask | pads)});
    }
  }
  return Dfa(out, 0, std::move(accepting), std::move(edges), std::move(fallback));
}

bool is_valid_relation(const RegularRelation& r) {
  if (r.arity() == 0) return true;
  return is_empty(combine(r.dfa(), valid_convolution(r.base(), r.arity()), BoolOp::AndNot)).empty;
}

namespace {

void require_compatible(const RegularRelation& r, const RegularRelation& s, const char* where) {
  require_same_alphabet(r.base(), s.base(), where);
  if (r.arity() != s.arity()) throw ArityError(std::string(where) + ": arity mismatch");
}

std::vector<std::size_t> iota_vector(std::size_t n, std::size_t start = 0) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), start);
  return v;
}

Nfa join_nfa(const Alphabet& base, std::size_t arity, std::span<const JoinOperand> operands,
             std::span<const JoinExclusion> exclusions) {
  const Alphabet out = base.power(arity);
  std::vector<PositiveOperand> pos;
  std::vector<NegativeOperand> neg;
  std::vector<bool> covered(arity, false);
  for (const auto& op : operands) {
    require_same_alphabet(base, op.relation->base(), "join");
    if (op.components.size() != op.relation->arity()) throw ArityError("join operand wiring has wrong arity");
    for (auto c : op.components) {
      if (c >= arity) throw ArityError("join operand wired past the result arity");
      covered[c] = true;
    }
    pos.push_back({&op.relation->nfa(), RegularRelation::component_tracks(base, op.components)});
  }
  for (const auto& ex : exclusions) {
    require_same_alphabet(base, ex.relation->base(), "join");
    if (ex.components.size() != ex.relation->arity()) throw ArityError("join exclusion wiring has wrong arity");
    for (auto c : ex.components) {
      if (c >= arity) throw ArityError("join exclusion wired past the result arity");
    }
    neg.push_back({&ex.relation->dfa(), RegularRelation::component_tracks(base, ex.components)});
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw ArityError("join leaves a component unconstrained");
  }
  return synchronous_product(out, pos, neg);
}

RegularRelation universal_unary(const Alphabet& base) { return from_language(universal_nfa(base)); }

}  // namespace

RegularRelation join(const Alphabet& base, std::size_t arity, std::span<const JoinOperand> operands,
                     std::span<const JoinExclusion> exclusions) {
  return RegularRelation(base, arity, join_nfa(base, arity, operands, exclusions));
}

RegularRelation join_project(const Alphabet& base, std::size_t arity, std::span<const JoinOperand> operands,
                             std::span<const JoinExclusion> exclusions, std::span<const std::size_t> keep) {
  const Nfa joined = join_nfa(base, arity, operands, exclusions);
  const auto tracks = RegularRelation::component_tracks(base, keep);
  return RegularRelation(base, keep.size(), erase_tracks(joined, tracks));
}

RegularRelation rel_intersect(const RegularRelation& r, const RegularRelation& s) {
  require_compatible(r, s, "rel_intersect");
  return RegularRelation(r.base(), r.arity(), combine(r.dfa(), s.dfa(), BoolOp::And));
}

RegularRelation rel_union(const RegularRelation& r, const RegularRelation& s) {
  require_compatible(r, s, "rel_union");
  return RegularRelation(r.base(), r.arity(), combine(r.dfa(), s.dfa(), BoolOp::Or));
}

RegularRelation rel_difference(const RegularRelation& r, const RegularRelation& s) {
  require_compatible(r, s, "rel_difference");
  return RegularRelation(r.base(), r.arity(), combine(r.dfa(), s.dfa(), BoolOp::AndNot));
}

RegularRelation rel_complement(const RegularRelation& r) {
  if (r.arity() == 0) return RegularRelation(r.base(), 0, complement(r.dfa()));
  const RegularRelation any = universal_unary(r.base());
  std::vector<JoinOperand> ops;
  for (std::size_t c = 0; c < r.arity(); ++c) ops.push_back({&any, {c}});
  const JoinExclusion ex[] = {{&r, iota_vector(r.arity())}};
  return join(r.base(), r.arity(), ops, ex);
}

bool rel_equal(const RegularRelation& r, const RegularRelation& s) {
  require_compatible(r, s, "rel_equal");
  return equivalent(r.dfa(), s.dfa());
}

bool rel_subset(const RegularRelation& r, const RegularRelation& s) {
  require_compatible(r, s, "rel_subset");
  return is_empty(combine(r.dfa(), s.dfa(), BoolOp::AndNot)).empty;
}

RegularRelation cylindrify(const RegularRelation& r, std::size_t position) {
  if (position > r.arity()) throw ArityError("cylindrify position out of range");
  const RegularRelation any = universal_unary(r.base());
  std::vector<std::size_t> wiring;
  for (std::size_t c = 0; c <= r.arity(); ++c) {
    if (c != position) wiring.push_back(c);
  }
  const JoinOperand ops[] = {{&r, wiring}, {&any, {position}}};
  return join(r.base(), r.arity() + 1, ops);
}

RegularRelation permute(const RegularRelation& r, std::span<const std::size_t> target) {
  const std::size_t n = r.arity();
  if (target.size() != n) throw ArityError("permutation size differs from arity");
  std::vector<bool> seen(n, false);
  for (auto t : target) {
    if (t >= n || seen[t]) throw ArityError("not a permutation");
    seen[t] = true;
  }
  const std::size_t k = r.base().track_count();
  std::vector<std::size_t> leaf_target(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) leaf_target[i * k + j] = target[i] * k + j;
  }
  return RegularRelation(r.base(), n, permute_tracks(r.dfa(), leaf_target));
}

RegularRelation transpose(const RegularRelation& r) {
  if (r.arity() != 2) throw ArityError("transpose needs a binary relation");
  const std::size_t swap[] = {1, 0};
  return permute(r, swap);
}

RegularRelation project_onto(const RegularRelation& r, std::span<const std::size_t> keep) {
  std::vector<bool> seen(r.arity(), false);
  for (auto c : keep) {
    if (c >= r.arity() || seen[c]) throw ArityError("projection components out of range or repeated");
    seen[c] = true;
  }
  const auto tracks = RegularRelation::component_tracks(r.base(), keep);
  return RegularRelation(r.base(), keep.size(), erase_tracks(r.nfa(), tracks));
}

RegularRelation project(const RegularRelation& r, std::size_t track) {
  if (r.arity() < 2) throw ArityError("project needs arity at least 2");
  if (track >= r.arity()) throw ArityError("projected track out of range");
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < r.arity(); ++c) {
    if (c != track) keep.push_back(c);
  }
  return project_onto(r, keep);
}

RegularRelation compose(const RegularRelation& r, const RegularRelation& s) {
  if (r.arity() != 2 || s.arity() != 2) throw ArityError("compose needs binary relations");
  require_same_alphabet(r.base(), s.base(), "compose");
  const JoinOperand ops[] = {{&r, {0, 1}}, {&s, {1, 2}}};
  const std::size_t keep[] = {0, 2};
  return join_project(r.base(), 3, ops, {}, keep);
}

Nfa as_language(const RegularRelation& r) {
  if (r.arity() != 1) throw ArityError("as_language needs a unary relation");
  return r.nfa();
}

RegularRelation from_language(const Nfa& language) {
  return RegularRelation(language.alphabet(), 1, language);
}

RegularRelation equality_relation(const Nfa& domain) {
  const Alphabet& base = domain.alphabet();
  NfaBuilder b(base.power(2), domain.state_count());
  for (State q = 0; q < domain.state_count(); ++q) {
    b.set_accepting(q, domain.is_accepting(q));
    for (const auto& e : domain.edges(q)) {
      const Symbol col[] = {e.symbol, e.symbol};
      b.add_edge(q, column(base, col), e.target);
    }
  }
  for (State q : domain.initial()) b.add_initial(q);
  return RegularRelation(base, 2, b.build());
}

RegularRelation equality_relation(const Alphabet& base) { return equality_relation(universal_nfa(base)); }

namespace {

// Binary relation from a state machine over pairs of base symbols (padding =
// base.size()). `step(state, a, b)` returns the next state or -1.
template <class Step, class Accept>
RegularRelation pair_machine(const Alphabet& base, int initial, Step step, Accept accept) {
  const Symbol pad = base.size();
  return RegularRelation(
      base, 2,
      explore<int>(base.power(2), {initial},
                   [&](int q, auto emit) {
                     for (Symbol a = 0; a <= pad; ++a) {
                       for (Symbol b = 0; b <= pad; ++b) {
                         if (a == pad && b == pad) continue;
                         const int next = step(q, a, b, pad);
                         const Symbol col[] = {a, b};
                         if (next >= 0) emit(column(base, col), next);
                       }
                     }
                   },
                   accept));
}

}  // namespace

RegularRelation prefix_order(const Alphabet& base) {
  // 0: equal so far, 1: u ended
  return pair_machine(
      base, 0,
      [](int q, Symbol a, Symbol b, Symbol pad) {
        if (q == 0 && a == b) return 0;
        if (a == pad && b != pad) return 1;
        return -1;
      },
      [](int) { return true; });
}

RegularRelation lex_order(const Alphabet& base) {
  // 0: equal so far, 1: u ended first, 2: decided u<v both running, 3: decided, u ended, 4: decided, v ended
  return pair_machine(
      base, 0,
      [](int q, Symbol a, Symbol b, Symbol pad) {
        switch (q) {
          case 0:
            if (a == b) return 0;
            if (a == pad) return 1;
            if (b == pad) return -1;
            return a < b ? 2 : -1;
          case 1:
          case 3:
            return a == pad ? q : -1;
          case 2:
            if (a == pad) return 3;
            if (b == pad) return 4;
            return 2;
          case 4:
            return b == pad ? 4 : -1;
        }
        return -1;
      },
      [](int) { return true; });
}

RegularRelation llex_order(const Alphabet& base) {
  // 0: equal, 1: first difference u<v, 2: first difference u>v, 3: u shorter
  return pair_machine(
      base, 0,
      [](int q, Symbol a, Symbol b, Symbol pad) {
        if (b == pad) return -1;
        if (a == pad) return (q == 3 || a != b) ? 3 : -1;
        if (q == 3) return -1;
        if (q == 0) return a == b ? 0 : (a < b ? 1 : 2);
        return q;
      },
      [](int q) { return q != 2; });
}

RegularRelation equal_length(const Alphabet& base) {
  return pair_machine(
      base, 0, [](int, Symbol a, Symbol b, Symbol pad) { return (a == pad || b == pad) ? -1 : 0; },
      [](int) { return true; });
}

RegularRelation full_relation(const Nfa& domain, std::size_t arity) {
  if (arity == 0) throw ArityError("full_relation needs arity at least 1");
  const RegularRelation d = from_language(domain);
  std::vector<JoinOperand> ops;
  for (std::size_t c = 0; c < arity; ++c) ops.push_back({&d, {c}});
  return join(domain.alphabet(), arity, ops);
}

RegularRelation full_relation(const Alphabet& base, std::size_t arity) {
  return full_relation(universal_nfa(base), arity);
}

}  // namespace cgauto
