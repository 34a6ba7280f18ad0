#include "cgauto/fa.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "cgauto/error.hpp"
#include "cgauto/limits.hpp"
#include "cgauto/product.hpp"

namespace cgauto {

namespace {

constexpr State kNone = std::numeric_limits<State>::max();

struct VecHash {
  template <class T>
  std::size_t operator()(const std::vector<T>& v) const noexcept {
    std::size_t h = 1469598103934665603ull ^ v.size();
    for (const auto& x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

bool covers_alphabet(const Dfa& d, State q) { return d.edges(q).size() == d.alphabet().size(); }

// Smallest symbol without an explicit edge, if any.
std::optional<Symbol> first_gap(std::span<const Edge> edges, Symbol size) {
  Symbol s = 0;
  for (const auto& e : edges) {
    if (e.symbol != s) break;
    ++s;
  }
  if (s < size) return s;
  return std::nullopt;
}

std::vector<State> reachable_states(const Dfa& d) {
  std::vector<bool> seen(d.state_count(), false);
  std::vector<State> order{d.initial()};
  seen[d.initial()] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State q = order[i];
    auto visit = [&](State t) {
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    };
    for (const auto& e : d.edges(q)) visit(e.target);
    if (!covers_alphabet(d, q)) visit(d.fallback(q));
  }
  return order;
}

// The move function of a state, rewritten against a class map: the default
// class is the most frequent one (ties to the class met first in symbol order)
// and exceptions list the other symbols.
struct ClassRow {
  std::uint32_t default_class = 0;
  std::vector<std::pair<Symbol, std::uint32_t>> exceptions;
};

ClassRow class_row(const Dfa& d, State q, const std::vector<std::uint32_t>& cls) {
  ClassRow row;
  const auto edges = d.edges(q);
  const Symbol size = d.alphabet().size();
  const auto gap = first_gap(edges, size);
  if (edges.empty()) {
    row.default_class = cls[d.fallback(q)];
    return row;
  }
  struct Tally {
    Symbol count = 0;
    Symbol first = std::numeric_limits<Symbol>::max();
  };
  std::unordered_map<std::uint32_t, Tally> tally;
  for (const auto& e : edges) {
    auto& t = tally[cls[e.target]];
    ++t.count;
    t.first = std::min(t.first, e.symbol);
  }
  const std::uint32_t fb = cls[d.fallback(q)];
  if (gap) {
    auto& t = tally[fb];
    t.count += size - edges.size();
    t.first = std::min(t.first, *gap);
  }
  std::uint32_t best = 0;
  Tally best_tally{0, 0};
  bool first = true;
  for (const auto& [c, t] : tally) {
    if (first || t.count > best_tally.count || (t.count == best_tally.count && t.first < best_tally.first)) {
      best = c;
      best_tally = t;
      first = false;
    }
  }
  row.default_class = best;
  if (gap && fb != best) {
    // every symbol without an explicit edge is an exception
    std::size_t i = 0;
    for (Symbol s = 0; s < size; ++s) {
      if (i < edges.size() && edges[i].symbol == s) {
        if (cls[edges[i].target] != best) row.exceptions.push_back({s, cls[edges[i].target]});
        ++i;
      } else {
        row.exceptions.push_back({s, fb});
      }
    }
  } else {
    for (const auto& e : edges) {
      if (cls[e.target] != best) row.exceptions.push_back({e.symbol, cls[e.target]});
    }
  }
  return row;
}

}  // namespace

Dfa determinize(const Nfa& a) {
  const Alphabet& alphabet = a.alphabet();
  std::unordered_map<std::vector<State>, State, VecHash> ids;
  std::vector<std::vector<State>> subsets;
  std::vector<bool> accepting;
  std::vector<std::vector<Edge>> edges;
  std::vector<State> fallback;
  State dead = kNone;

  auto intern = [&](std::vector<State> subset) {
    auto it = ids.find(subset);
    if (it != ids.end()) return it->second;
    check_state_budget(subsets.size() + 1, "determinize");
    const State id = static_cast<State>(subsets.size());
    bool acc = false;
    for (State q : subset) acc = acc || a.is_accepting(q);
    ids.emplace(subset, id);
    subsets.push_back(std::move(subset));
    accepting.push_back(acc);
    edges.emplace_back();
    fallback.push_back(id);
    return id;
  };

  const State init = intern(a.initial());
  std::vector<Edge> pool;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    pool.clear();
    for (State q : subsets[i]) {
      const auto e = a.edges(q);
      pool.insert(pool.end(), e.begin(), e.end());
    }
    std::sort(pool.begin(), pool.end());
    std::vector<Edge> out;
    for (std::size_t j = 0; j < pool.size();) {
      std::size_t k = j;
      std::vector<State> target;
      while (k < pool.size() && pool[k].symbol == pool[j].symbol) {
        if (target.empty() || target.back() != pool[k].target) target.push_back(pool[k].target);
        ++k;
      }
      out.push_back({pool[j].symbol, intern(std::move(target))});
      j = k;
    }
    if (out.size() < alphabet.size()) {
      if (subsets[i].empty()) {
        dead = static_cast<State>(i);
      } else if (dead == kNone) {
        dead = intern({});
      }
      fallback[i] = dead;
    }
    edges[i] = std::move(out);
  }
  return Dfa(alphabet, init, std::move(accepting), std::move(edges), std::move(fallback));
}

Dfa minimize(const Dfa& d) {
  const std::vector<State> live = reachable_states(d);
  const std::size_t n = d.state_count();
  std::vector<std::uint32_t> cls(n, 0);
  std::size_t classes = 0;
  {
    bool has_acc = false, has_rej = false;
    for (State q : live) (d.is_accepting(q) ? has_acc : has_rej) = true;
    for (State q : live) cls[q] = (has_acc && has_rej && d.is_accepting(q)) ? 1 : 0;
    classes = (has_acc && has_rej) ? 2 : 1;
  }
  std::vector<ClassRow> rows(n);
  while (true) {
    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VecHash> sig_ids;
    std::vector<std::uint32_t> next(n, 0);
    std::vector<std::uint64_t> sig;
    for (State q : live) {
      rows[q] = class_row(d, q, cls);
      sig.clear();
      sig.push_back(cls[q]);
      sig.push_back(rows[q].default_class);
      for (const auto& [s, c] : rows[q].exceptions) {
        sig.push_back(s);
        sig.push_back(c);
      }
      auto [it, inserted] = sig_ids.emplace(sig, static_cast<std::uint32_t>(sig_ids.size()));
      next[q] = it->second;
    }
    const std::size_t count = sig_ids.size();
    cls = std::move(next);
    if (count == classes) break;
    classes = count;
  }
  // rows are consistent with the final partition
  std::vector<State> rep(classes, kNone);
  for (State q : live) {
    if (rep[cls[q]] == kNone) rep[cls[q]] = q;
    rows[q] = class_row(d, q, cls);
  }
  // canonical numbering: BFS, exceptions in symbol order, default last
  std::vector<State> number(classes, kNone);
  std::vector<std::uint32_t> order{cls[d.initial()]};
  number[order[0]] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ClassRow& row = rows[rep[order[i]]];
    auto visit = [&](std::uint32_t c) {
      if (number[c] == kNone) {
        number[c] = static_cast<State>(order.size());
        order.push_back(c);
      }
    };
    for (const auto& [s, c] : row.exceptions) visit(c);
    visit(row.default_class);
  }
  std::vector<bool> accepting(order.size());
  std::vector<std::vector<Edge>> edges(order.size());
  std::vector<State> fallback(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State q = rep[order[i]];
    accepting[i] = d.is_accepting(q);
    const ClassRow& row = rows[q];
    fallback[i] = number[row.default_class];
    for (const auto& [s, c] : row.exceptions) edges[i].push_back({s, number[c]});
  }
  return Dfa(d.alphabet(), 0, std::move(accepting), std::move(edges), std::move(fallback));
}

Dfa complement(const Dfa& d) {
  std::vector<bool> accepting(d.accepting());
  accepting.flip();
  std::vector<std::vector<Edge>> edges(d.state_count());
  std::vector<State> fallback(d.state_count());
  for (State q = 0; q < d.state_count(); ++q) {
    const auto e = d.edges(q);
    edges[q].assign(e.begin(), e.end());
    fallback[q] = d.fallback(q);
  }
  return Dfa(d.alphabet(), d.initial(), std::move(accepting), std::move(edges), std::move(fallback));
}

namespace {

std::vector<std::size_t> identity_tracks(const Alphabet& a) {
  std::vector<std::size_t> t(a.track_count());
  std::iota(t.begin(), t.end(), 0);
  return t;
}

}  // namespace

Nfa intersect(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "intersect");
  if (a.alphabet().track_count() == 0) {
    // only λ exists
    const bool both = !is_empty(a).empty && !is_empty(b).empty;
    return both ? universal_nfa(a.alphabet()) : empty_nfa(a.alphabet());
  }
  const auto tracks = identity_tracks(a.alphabet());
  const PositiveOperand ops[] = {{&a, tracks}, {&b, tracks}};
  return synchronous_product(a.alphabet(), ops);
}

Nfa unite(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "union");
  NfaBuilder builder(a.alphabet(), a.state_count() + b.state_count());
  const State shift = static_cast<State>(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    builder.set_accepting(q, a.is_accepting(q));
    for (const auto& e : a.edges(q)) builder.add_edge(q, e.symbol, e.target);
  }
  for (State q = 0; q < b.state_count(); ++q) {
    builder.set_accepting(q + shift, b.is_accepting(q));
    for (const auto& e : b.edges(q)) builder.add_edge(q + shift, e.symbol, e.target + shift);
  }
  for (State q : a.initial()) builder.add_initial(q);
  for (State q : b.initial()) builder.add_initial(q + shift);
  return builder.build();
}

Nfa difference(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "difference");
  if (a.alphabet().track_count() == 0) {
    const bool keep = !is_empty(a).empty && is_empty(b).empty;
    return keep ? universal_nfa(a.alphabet()) : empty_nfa(a.alphabet());
  }
  const Dfa nb = minimal_dfa(b);
  const auto tracks = identity_tracks(a.alphabet());
  const PositiveOperand pos[] = {{&a, tracks}};
  const NegativeOperand neg[] = {{&nb, tracks}};
  return synchronous_product(a.alphabet(), pos, neg);
}

Dfa combine(const Dfa& a, const Dfa& b, BoolOp op) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "combine");
  const Symbol size = a.alphabet().size();
  auto key = [](State p, State q) { return (static_cast<std::uint64_t>(p) << 32) | q; };
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs;
  std::vector<bool> accepting;
  auto intern = [&](State p, State q) {
    auto [it, inserted] = ids.emplace(key(p, q), static_cast<State>(pairs.size()));
    if (inserted) {
      check_state_budget(pairs.size() + 1, "dfa product");
      pairs.push_back({p, q});
      const bool x = a.is_accepting(p), y = b.is_accepting(q);
      bool acc = false;
      switch (op) {
        case BoolOp::And: acc = x && y; break;
        case BoolOp::Or: acc = x || y; break;
        case BoolOp::AndNot: acc = x && !y; break;
        case BoolOp::Xor: acc = x != y; break;
      }
      accepting.push_back(acc);
    }
    return it->second;
  };
  intern(a.initial(), b.initial());
  std::vector<std::vector<Edge>> edges;
  std::vector<State> fallback;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    const auto ea = a.edges(p);
    const auto eb = b.edges(q);
    std::vector<Symbol> symbols;
    symbols.reserve(ea.size() + eb.size());
    for (const auto& e : ea) symbols.push_back(e.symbol);
    for (const auto& e : eb) symbols.push_back(e.symbol);
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    std::vector<Edge> out;
    out.reserve(symbols.size());
    for (Symbol s : symbols) out.push_back({s, intern(a.next(p, s), b.next(q, s))});
    const State fb = symbols.size() < size ? intern(a.fallback(p), b.fallback(q)) : static_cast<State>(i);
    edges.push_back(std::move(out));
    fallback.push_back(fb);
  }
  return Dfa(a.alphabet(), 0, std::move(accepting), std::move(edges), std::move(fallback));
}

Emptiness is_empty(const Nfa& a) {
  const std::size_t n = a.state_count();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q) {
    for (const auto& e : a.edges(q)) rev[e.target].push_back(q);
  }
  std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
  std::deque<State> queue;
  for (State q = 0; q < n; ++q) {
    if (a.is_accepting(q)) {
      dist[q] = 0;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (State p : rev[q]) {
      if (dist[p] == std::numeric_limits<std::size_t>::max()) {
        dist[p] = dist[q] + 1;
        queue.push_back(p);
      }
    }
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (State q : a.initial()) best = std::min(best, dist[q]);
  if (best == std::numeric_limits<std::size_t>::max()) return {};
  std::vector<State> current;
  for (State q : a.initial()) {
    if (dist[q] == best) current.push_back(q);
  }
  Word w(a.alphabet());
  for (std::size_t r = best; r > 0; --r) {
    Symbol pick = std::numeric_limits<Symbol>::max();
    for (State q : current) {
      for (const auto& e : a.edges(q)) {
        if (e.symbol >= pick) break;
        if (dist[e.target] == r - 1) pick = e.symbol;
      }
    }
    std::vector<State> next;
    for (State q : current) {
      for (const auto& e : a.edges(q, pick)) {
        if (dist[e.target] == r - 1) next.push_back(e.target);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
    w.symbols.push_back(pick);
  }
  return {false, std::move(w)};
}

Emptiness is_empty(const Dfa& d) {
  const std::size_t n = d.state_count();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q) {
    for (const auto& e : d.edges(q)) rev[e.target].push_back(q);
    if (!covers_alphabet(d, q)) rev[d.fallback(q)].push_back(q);
  }
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n, kInf);
  std::deque<State> queue;
  for (State q = 0; q < n; ++q) {
    if (d.is_accepting(q)) {
      dist[q] = 0;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (State p : rev[q]) {
      if (dist[p] == kInf) {
        dist[p] = dist[q] + 1;
        queue.push_back(p);
      }
    }
  }
  State q = d.initial();
  if (dist[q] == kInf) return {};
  Word w(d.alphabet());
  while (dist[q] > 0) {
    const std::size_t r = dist[q];
    Symbol pick = std::numeric_limits<Symbol>::max();
    for (const auto& e : d.edges(q)) {
      if (dist[e.target] == r - 1) {
        pick = e.symbol;
        break;
      }
    }
    if (dist[d.fallback(q)] == r - 1) {
      if (auto gap = first_gap(d.edges(q), d.alphabet().size())) pick = std::min(pick, *gap);
    }
    w.symbols.push_back(pick);
    q = d.next(q, pick);
  }
  return {false, std::move(w)};
}

bool equivalent(const Dfa& a, const Dfa& b) { return is_empty(combine(a, b, BoolOp::Xor)).empty; }

bool equivalent(const Nfa& a, const Nfa& b) { return equivalent(determinize(a), determinize(b)); }

Nfa trim(const Nfa& a) {
  const std::size_t n = a.state_count();
  std::vector<bool> fwd(n, false), bwd(n, false);
  std::vector<State> stack(a.initial().begin(), a.initial().end());
  for (State q : stack) fwd[q] = true;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (const auto& e : a.edges(q)) {
      if (!fwd[e.target]) {
        fwd[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q) {
    for (const auto& e : a.edges(q)) rev[e.target].push_back(q);
  }
  for (State q = 0; q < n; ++q) {
    if (a.is_accepting(q)) {
      bwd[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State p : rev[q]) {
      if (!bwd[p]) {
        bwd[p] = true;
        stack.push_back(p);
      }
    }
  }
  std::vector<State> remap(n, kNone);
  NfaBuilder b(a.alphabet());
  for (State q = 0; q < n; ++q) {
    if (fwd[q] && bwd[q]) remap[q] = b.add_state(a.is_accepting(q));
  }
  for (State q : a.initial()) {
    if (remap[q] != kNone) b.add_initial(remap[q]);
  }
  for (State q = 0; q < n; ++q) {
    if (remap[q] == kNone) continue;
    for (const auto& e : a.edges(q)) {
      if (remap[e.target] != kNone) b.add_edge(remap[q], e.symbol, remap[e.target]);
    }
  }
  return b.build();
}

namespace {

// Longest accepted length of a trimmed automaton, or nullopt when infinite.
std::optional<std::size_t> longest_word(const Nfa& t) {
  const std::size_t n = t.state_count();
  std::vector<std::size_t> indeg(n, 0);
  for (State q = 0; q < n; ++q) {
    for (const auto& e : t.edges(q)) ++indeg[e.target];
  }
  std::vector<State> topo;
  for (State q = 0; q < n; ++q) {
    if (indeg[q] == 0) topo.push_back(q);
  }
  for (std::size_t i = 0; i < topo.size(); ++i) {
    for (const auto& e : t.edges(topo[i])) {
      if (--indeg[e.target] == 0) topo.push_back(e.target);
    }
  }
  if (topo.size() < n) return std::nullopt;
  std::vector<long> best(n, -1);
  for (State q : t.initial()) best[q] = 0;
  std::size_t longest = 0;
  for (State q : topo) {
    if (best[q] < 0) continue;
    if (t.is_accepting(q)) longest = std::max(longest, static_cast<std::size_t>(best[q]));
    for (const auto& e : t.edges(q)) best[e.target] = std::max(best[e.target], best[q] + 1);
  }
  return longest;
}

}  // namespace

bool is_finite(const Nfa& a) { return longest_word(trim(a)).has_value(); }

std::vector<Word> enumerate(const Nfa& a, EnumerateLimit limit) {
  const Nfa t = trim(a);
  std::vector<Word> out;
  if (t.state_count() == 0 || limit.max_count == std::size_t{0}) return out;
  const auto longest = longest_word(t);
  std::size_t top;
  if (limit.max_length) {
    top = longest ? std::min(*limit.max_length, *longest) : *limit.max_length;
  } else if (longest) {
    top = *longest;
  } else if (limit.max_count) {
    top = std::numeric_limits<std::size_t>::max();
  } else {
    throw InvalidArgument("enumerating an infinite language needs a limit");
  }
  const std::size_t n = t.state_count();
  // good[r][q]: q reaches acceptance in exactly r steps
  std::vector<std::vector<bool>> good{t.accepting()};
  auto layer = [&](std::size_t r) -> const std::vector<bool>& {
    while (good.size() <= r) {
      const auto& prev = good.back();
      std::vector<bool> cur(n, false);
      for (State q = 0; q < n; ++q) {
        for (const auto& e : t.edges(q)) {
          if (prev[e.target]) {
            cur[q] = true;
            break;
          }
        }
      }
      good.push_back(std::move(cur));
    }
    return good[r];
  };
  std::vector<Symbol> prefix;
  bool done = false;
  auto full = [&] { return limit.max_count && out.size() >= *limit.max_count; };
  std::function<void(const std::vector<State>&, std::size_t)> walk = [&](const std::vector<State>& set,
                                                                        std::size_t r) {
    if (done) return;
    if (r == 0) {
      out.emplace_back(t.alphabet(), prefix);
      done = full();
      return;
    }
    const auto& next_good = layer(r - 1);
    std::vector<Edge> pool;
    for (State q : set) {
      for (const auto& e : t.edges(q)) {
        if (next_good[e.target]) pool.push_back(e);
      }
    }
    std::sort(pool.begin(), pool.end());
    for (std::size_t i = 0; i < pool.size() && !done;) {
      std::size_t j = i;
      std::vector<State> next;
      while (j < pool.size() && pool[j].symbol == pool[i].symbol) {
        if (next.empty() || next.back() != pool[j].target) next.push_back(pool[j].target);
        ++j;
      }
      prefix.push_back(pool[i].symbol);
      walk(next, r - 1);
      prefix.pop_back();
      i = j;
    }
  };
  for (std::size_t len = 0; len <= top && !done; ++len) {
    const auto& g = layer(len);
    std::vector<State> start;
    for (State q : t.initial()) {
      if (g[q]) start.push_back(q);
    }
    if (!start.empty()) walk(start, len);
    if (len == std::numeric_limits<std::size_t>::max()) break;
  }
  return out;
}

Nfa reverse(const Nfa& a) {
  NfaBuilder b(a.alphabet(), a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.is_accepting(q)) b.add_initial(q);
    for (const auto& e : a.edges(q)) b.add_edge(e.target, e.symbol, q);
  }
  for (State q : a.initial()) b.set_accepting(q);
  return b.build();
}

bool accepts(const Nfa& a, const Word& w) {
  require_same_alphabet(a.alphabet(), w.alphabet, "accepts");
  std::vector<State> current(a.initial());
  for (Symbol s : w.symbols) {
    std::vector<State> next;
    for (State q : current) {
      for (const auto& e : a.edges(q, s)) next.push_back(e.target);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(), [&](State q) { return a.is_accepting(q); });
}

bool accepts(const Dfa& d, const Word& w) {
  require_same_alphabet(d.alphabet(), w.alphabet, "accepts");
  return d.accepts(w.symbols);
}

Nfa universal_nfa(const Alphabet& alphabet) {
  NfaBuilder b(alphabet, 1);
  b.set_accepting(0);
  b.add_initial(0);
  for (Symbol s = 0; s < alphabet.size(); ++s) b.add_edge(0, s, 0);
  return b.build();
}

Nfa empty_nfa(const Alphabet& alphabet) {
  NfaBuilder b(alphabet, 1);
  b.add_initial(0);
  return b.build();
}

Nfa word_nfa(const Word& w) {
  NfaBuilder b(w.alphabet, w.size() + 1);
  b.add_initial(0);
  b.set_accepting(static_cast<State>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    b.add_edge(static_cast<State>(i), w[i], static_cast<State>(i + 1));
  }
  return b.build();
}

}  // namespace cgauto
