#include "cgauto/product.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <memory>
#include <unordered_map>

#include "cgauto/error.hpp"
#include "cgauto/limits.hpp"

namespace cgauto {

namespace {

constexpr State kDone = std::numeric_limits<State>::max() - 1;  // all tracks ended while accepting
constexpr State kSink = std::numeric_limits<State>::max();      // negative operand has rejected

struct TupleHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (State s : v) {
      h ^= s;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct PositiveInfo {
  const Nfa* nfa;
  std::vector<std::size_t> tracks;     // out position per operand track
  std::vector<std::size_t> key_leaves;  // operand tracks fixed before this operand runs
  std::vector<Symbol> key_mult;
  bool all_key = false;
  // lazily built: state -> (key -> edges)
  std::vector<std::unique_ptr<std::unordered_map<Symbol, std::vector<Edge>>>> index;
};

struct NegativeInfo {
  const Dfa* dfa;
  std::vector<std::size_t> tracks;
  std::vector<bool> dead;
};

void check_wiring(const Alphabet& out, const Alphabet& in, const std::vector<std::size_t>& tracks) {
  if (tracks.size() != in.track_count()) throw ArityError("operand wiring does not match its track count");
  for (std::size_t j = 0; j < tracks.size(); ++j) {
    if (tracks[j] >= out.track_count()) throw ArityError("operand wired to a missing output track");
    if (!(in.leaf(j) == out.leaf(tracks[j]))) {
      throw AlphabetMismatch("operand track alphabet differs from output track alphabet");
    }
  }
}

class ProductRun {
 public:
  ProductRun(const Alphabet& out, std::span<const PositiveOperand> pos, std::span<const NegativeOperand> neg)
      : out_(out), builder_(out) {
    for (const auto& p : pos) check_wiring(out, p.automaton->alphabet(), p.tracks);
    for (const auto& n : neg) check_wiring(out, n.automaton->alphabet(), n.tracks);
    order_positives(pos);
    for (const auto& n : neg) {
      NegativeInfo info{n.automaton, n.tracks, std::vector<bool>(n.automaton->state_count())};
      for (State q = 0; q < n.automaton->state_count(); ++q) info.dead[q] = n.automaton->is_dead(q);
      negatives_.push_back(std::move(info));
    }
    digits_.assign(out.track_count(), kUnset);
  }

  Nfa run() {
    // initial tuples: cartesian product of positive initial sets
    std::vector<std::vector<State>> inits{{}};
    for (const auto& p : positives_) {
      std::vector<std::vector<State>> next;
      for (const auto& partial : inits) {
        for (State q : p.nfa->initial()) {
          auto t = partial;
          t.push_back(q);
          next.push_back(std::move(t));
        }
      }
      inits = std::move(next);
    }
    for (auto& t : inits) {
      for (const auto& n : negatives_) t.push_back(n.dead[n.dfa->initial()] ? kSink : n.dfa->initial());
      builder_.add_initial(intern(std::move(t)));
    }
    while (!queue_.empty()) {
      const State id = queue_.front();
      queue_.pop_front();
      current_ = tuples_[id];
      current_id_ = id;
      next_.assign(current_.size(), 0);
      enumerate(0);
    }
    return builder_.build();
  }

 private:
  static constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

  void order_positives(std::span<const PositiveOperand> pos) {
    std::vector<bool> used(pos.size(), false), covered(out_.track_count(), false);
    for (std::size_t step = 0; step < pos.size(); ++step) {
      std::size_t best = pos.size();
      long best_score = std::numeric_limits<long>::min();
      for (std::size_t i = 0; i < pos.size(); ++i) {
        if (used[i]) continue;
        long shared = 0;
        for (auto t : pos[i].tracks) shared += covered[t] ? 1 : 0;
        const long fresh = static_cast<long>(pos[i].tracks.size()) - shared;
        // prefer operands constrained by what is already fixed, then wide ones
        const long score = step == 0 ? fresh : shared * 1000 - fresh;
        if (score > best_score) {
          best_score = score;
          best = i;
        }
      }
      used[best] = true;
      PositiveInfo info;
      info.nfa = pos[best].automaton;
      info.tracks = pos[best].tracks;
      Symbol mult = 1;
      for (std::size_t j = 0; j < info.tracks.size(); ++j) {
        if (covered[info.tracks[j]]) {
          info.key_leaves.push_back(j);
          info.key_mult.push_back(mult);
          mult *= info.nfa->alphabet().radix(j);
        }
      }
      info.all_key = !info.tracks.empty() && info.key_leaves.size() == info.tracks.size();
      for (auto t : info.tracks) covered[t] = true;
      info.index.resize(info.nfa->state_count());
      positives_.push_back(std::move(info));
    }
    for (std::size_t t = 0; t < out_.track_count(); ++t) {
      if (!covered[t]) throw ArityError("output track not constrained by any positive operand");
    }
  }

  State intern(std::vector<State> tuple) {
    auto it = ids_.find(tuple);
    if (it != ids_.end()) return it->second;
    bool accepting = true;
    for (std::size_t i = 0; i < positives_.size() && accepting; ++i) {
      const State q = tuple[i];
      accepting = q == kDone || positives_[i].nfa->is_accepting(q);
    }
    for (std::size_t k = 0; k < negatives_.size() && accepting; ++k) {
      const State q = tuple[positives_.size() + k];
      accepting = q == kSink || (q != kDone && !negatives_[k].dfa->is_accepting(q));
    }
    check_state_budget(tuples_.size() + 1, "synchronous product");
    const State id = builder_.add_state(accepting);
    ids_.emplace(tuple, id);
    tuples_.push_back(std::move(tuple));
    queue_.push_back(id);
    return id;
  }

  // Assigns operand digits; returns false on conflict. Records changed positions.
  bool assign(const std::vector<std::size_t>& tracks, const Alphabet& a, Symbol s, bool all_pad,
              std::vector<std::size_t>& changed) {
    for (std::size_t j = 0; j < tracks.size(); ++j) {
      const std::size_t d = all_pad ? a.pad_digit(j) : a.digit(s, j);
      std::size_t& slot = digits_[tracks[j]];
      if (slot == kUnset) {
        slot = d;
        changed.push_back(tracks[j]);
      } else if (slot != d) {
        return false;
      }
    }
    return true;
  }

  void undo(const std::vector<std::size_t>& changed) {
    for (auto t : changed) digits_[t] = kUnset;
  }

  const std::vector<Edge>& indexed(PositiveInfo& p, State q, Symbol key) {
    auto& slot = p.index[q];
    if (!slot) {
      slot = std::make_unique<std::unordered_map<Symbol, std::vector<Edge>>>();
      const Alphabet& a = p.nfa->alphabet();
      for (const auto& e : p.nfa->edges(q)) {
        Symbol k = 0;
        for (std::size_t i = 0; i < p.key_leaves.size(); ++i) k += a.digit(e.symbol, p.key_leaves[i]) * p.key_mult[i];
        (*slot)[k].push_back(e);
      }
    }
    auto it = slot->find(key);
    return it == slot->end() ? empty_ : it->second;
  }

  void enumerate(std::size_t i) {
    if (i == positives_.size()) {
      emit();
      return;
    }
    PositiveInfo& p = positives_[i];
    const Alphabet& a = p.nfa->alphabet();
    const State q = current_[i];
    std::vector<std::size_t> changed;
    if (q == kDone || p.nfa->is_accepting(q)) {
      if (assign(p.tracks, a, 0, true, changed)) {
        next_[i] = kDone;
        enumerate(i + 1);
      }
      undo(changed);
      changed.clear();
    }
    if (q == kDone) return;

    auto try_edge = [&](const Edge& e) {
      if (assign(p.tracks, a, e.symbol, false, changed)) {
        next_[i] = e.target;
        enumerate(i + 1);
      }
      undo(changed);
      changed.clear();
    };

    if (p.all_key) {
      std::vector<std::size_t> d(p.tracks.size());
      for (std::size_t j = 0; j < p.tracks.size(); ++j) d[j] = digits_[p.tracks[j]];
      const Symbol s = a.compose(d);
      if (s >= a.size()) return;  // all padding, handled by the done move
      for (const auto& e : p.nfa->edges(q, s)) try_edge(e);
    } else if (!p.key_leaves.empty()) {
      Symbol key = 0;
      for (std::size_t k = 0; k < p.key_leaves.size(); ++k) key += digits_[p.tracks[p.key_leaves[k]]] * p.key_mult[k];
      // copy: recursion may rehash other states' maps but never this one's vector
      const auto& edges = indexed(p, q, key);
      for (const auto& e : edges) try_edge(e);
    } else {
      for (const auto& e : p.nfa->edges(q)) try_edge(e);
    }
  }

  void emit() {
    const Symbol s = out_.compose(digits_);
    if (s >= out_.size()) return;  // all-padding column is not a symbol
    for (std::size_t k = 0; k < negatives_.size(); ++k) {
      const NegativeInfo& n = negatives_[k];
      const State q = current_[positives_.size() + k];
      State nq;
      if (q == kSink) {
        nq = kSink;
      } else {
        const Alphabet& a = n.dfa->alphabet();
        std::vector<std::size_t> d(n.tracks.size());
        bool all_pad = true;
        for (std::size_t j = 0; j < n.tracks.size(); ++j) {
          d[j] = digits_[n.tracks[j]];
          all_pad = all_pad && d[j] == a.pad_digit(j);
        }
        if (q == kDone) {
          nq = all_pad ? kDone : kSink;
        } else if (all_pad) {
          nq = n.dfa->is_accepting(q) ? kDone : kSink;
        } else {
          nq = n.dfa->next(q, a.compose(d));
          if (n.dead[nq]) nq = kSink;
        }
      }
      next_[positives_.size() + k] = nq;
    }
    std::vector<State> target(next_.begin(), next_.end());
    const State t = intern(std::move(target));
    builder_.add_edge(current_id_, s, t);
  }

  const Alphabet& out_;
  NfaBuilder builder_;
  std::vector<PositiveInfo> positives_;
  std::vector<NegativeInfo> negatives_;
  std::unordered_map<std::vector<State>, State, TupleHash> ids_;
  std::vector<std::vector<State>> tuples_;
  std::deque<State> queue_;
  std::vector<State> current_;
  State current_id_ = 0;
  std::vector<State> next_;
  std::vector<std::size_t> digits_;
  const std::vector<Edge> empty_;
};

}  // namespace

Nfa synchronous_product(const Alphabet& out, std::span<const PositiveOperand> positives,
                        std::span<const NegativeOperand> negatives) {
  ProductRun run(out, positives, negatives);
  return run.run();
}

Nfa erase_tracks(const Nfa& a, std::span<const std::size_t> keep) {
  const Alphabet& in = a.alphabet();
  std::vector<std::shared_ptr<const Leaf>> leaves;
  for (auto t : keep) {
    if (t >= in.track_count()) throw ArityError("kept track out of range");
    leaves.push_back(in.leaf_ptr(t));
  }
  const Alphabet out = Alphabet::from_leaves(std::move(leaves));
  const std::size_t n = a.state_count();

  auto project = [&](Symbol s, bool& all_pad) {
    std::vector<std::size_t> d(keep.size());
    all_pad = true;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      d[i] = in.digit(s, keep[i]);
      all_pad = all_pad && d[i] == in.pad_digit(keep[i]);
    }
    return out.compose(d);
  };

  // saturation: reach acceptance through columns that pad every kept track
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q) {
    for (const auto& e : a.edges(q)) {
      bool pad = false;
      project(e.symbol, pad);
      if (pad) rev[e.target].push_back(q);
    }
  }
  std::vector<bool> accepting(a.accepting());
  std::vector<State> stack;
  for (State q = 0; q < n; ++q) {
    if (accepting[q]) stack.push_back(q);
  }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State p : rev[q]) {
      if (!accepting[p]) {
        accepting[p] = true;
        stack.push_back(p);
      }
    }
  }

  NfaBuilder b(out, n);
  for (State q = 0; q < n; ++q) {
    b.set_accepting(q, accepting[q]);
    for (const auto& e : a.edges(q)) {
      bool pad = false;
      const Symbol s = project(e.symbol, pad);
      if (!pad) b.add_edge(q, s, e.target);
    }
  }
  for (State q : a.initial()) b.add_initial(q);
  return b.build();
}

namespace {

std::vector<Symbol> permuted_symbols_checked(const Alphabet& in, std::span<const std::size_t> target,
                                             Alphabet& out) {
  const std::size_t k = in.track_count();
  if (target.size() != k) throw ArityError("permutation size differs from track count");
  std::vector<std::shared_ptr<const Leaf>> leaves(k);
  std::vector<bool> seen(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (target[i] >= k || seen[target[i]]) throw ArityError("not a permutation");
    seen[target[i]] = true;
    leaves[target[i]] = in.leaf_ptr(i);
  }
  out = Alphabet::from_leaves(std::move(leaves));
  return {};
}

Symbol permute_symbol(const Alphabet& in, const Alphabet& out, std::span<const std::size_t> target, Symbol s) {
  std::vector<std::size_t> d(in.track_count());
  for (std::size_t i = 0; i < d.size(); ++i) d[target[i]] = in.digit(s, i);
  return out.compose(d);
}

}  // namespace

Nfa permute_tracks(const Nfa& a, std::span<const std::size_t> target) {
  Alphabet out;
  permuted_symbols_checked(a.alphabet(), target, out);
  NfaBuilder b(out, a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    b.set_accepting(q, a.is_accepting(q));
    for (const auto& e : a.edges(q)) b.add_edge(q, permute_symbol(a.alphabet(), out, target, e.symbol), e.target);
  }
  for (State q : a.initial()) b.add_initial(q);
  return b.build();
}

Dfa permute_tracks(const Dfa& a, std::span<const std::size_t> target) {
  Alphabet out;
  permuted_symbols_checked(a.alphabet(), target, out);
  std::vector<std::vector<Edge>> edges(a.state_count());
  std::vector<State> fallback(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    for (const auto& e : a.edges(q)) {
      edges[q].push_back({permute_symbol(a.alphabet(), out, target, e.symbol), e.target});
    }
    fallback[q] = a.fallback(q);
  }
  return Dfa(out, a.initial(), a.accepting(), std::move(edges), std::move(fallback));
}

}  // namespace cgauto
