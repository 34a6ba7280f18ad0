#include "cgauto/automaton.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "cgauto/error.hpp"
#include "cgauto/limits.hpp"

namespace cgauto {

namespace {
// Dense expansion of fallback moves is refused above this many symbols.
constexpr Symbol kDenseExpansionLimit = 1u << 22;
}  // namespace

std::span<const Edge> Nfa::edges(State q, Symbol s) const {
  const auto& e = edges_.at(q);
  auto lo = std::lower_bound(e.begin(), e.end(), Edge{s, 0});
  auto hi = std::upper_bound(lo, e.end(), Edge{s, std::numeric_limits<State>::max()});
  return {lo, hi};
}

std::size_t Nfa::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  return n;
}

NfaBuilder::NfaBuilder(Alphabet alphabet, std::size_t states)
    : alphabet_(std::move(alphabet)), accepting_(states, false), edges_(states) {}

State NfaBuilder::add_state(bool accepting) {
  check_state_budget(accepting_.size() + 1, "nfa");
  accepting_.push_back(accepting);
  edges_.emplace_back();
  return static_cast<State>(accepting_.size() - 1);
}

void NfaBuilder::add_initial(State q) {
  if (q >= accepting_.size()) throw InvalidArgument("initial state out of range");
  initial_.push_back(q);
}

void NfaBuilder::set_accepting(State q, bool accepting) { accepting_.at(q) = accepting; }

void NfaBuilder::add_edge(State from, Symbol symbol, State to) {
  if (from >= accepting_.size() || to >= accepting_.size()) {
    throw InvalidArgument("transition state out of range");
  }
  if (!alphabet_.contains(symbol)) throw AlphabetMismatch("transition symbol outside alphabet");
  edges_[from].push_back({symbol, to});
}

Nfa NfaBuilder::build() {
  Nfa a;
  a.alphabet_ = std::move(alphabet_);
  std::sort(initial_.begin(), initial_.end());
  initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
  a.initial_ = std::move(initial_);
  a.accepting_ = std::move(accepting_);
  for (auto& e : edges_) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  a.edges_ = std::move(edges_);
  return a;
}

Dfa::Dfa(Alphabet alphabet, State initial, std::vector<bool> accepting,
         std::vector<std::vector<Edge>> edges, std::vector<State> fallback)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      accepting_(std::move(accepting)),
      edges_(std::move(edges)),
      fallback_(std::move(fallback)) {
  const std::size_t n = accepting_.size();
  if (n == 0) throw InvalidArgument("dfa needs at least one state");
  if (edges_.size() != n || fallback_.size() != n || initial_ >= n) {
    throw InvalidArgument("inconsistent dfa tables");
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (fallback_[q] >= n) throw InvalidArgument("dfa fallback out of range");
    auto& e = edges_[q];
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i].target >= n) throw InvalidArgument("dfa transition out of range");
      if (!alphabet_.contains(e[i].symbol)) throw AlphabetMismatch("dfa symbol outside alphabet");
      if (i && e[i].symbol == e[i - 1].symbol) throw InvalidArgument("dfa has two moves on one symbol");
    }
  }
}

State Dfa::next(State q, Symbol s) const {
  const auto& e = edges_[q];
  auto it = std::lower_bound(e.begin(), e.end(), Edge{s, 0});
  if (it != e.end() && it->symbol == s) return it->target;
  return fallback_[q];
}

std::size_t Dfa::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  return n;
}

bool Dfa::is_dead(State q) const {
  if (accepting_[q] || fallback_[q] != q) return false;
  return std::all_of(edges_[q].begin(), edges_[q].end(), [q](const Edge& e) { return e.target == q; });
}

bool Dfa::accepts(std::span<const Symbol> word) const {
  State q = initial_;
  for (Symbol s : word) {
    if (!alphabet_.contains(s)) throw AlphabetMismatch("word symbol outside automaton alphabet");
    q = next(q, s);
  }
  return accepting_[q];
}

Nfa Dfa::to_nfa() const {
  const std::size_t n = state_count();
  std::vector<bool> dead(n);
  for (std::size_t q = 0; q < n; ++q) dead[q] = is_dead(static_cast<State>(q));
  // states that cannot reach acceptance are also dead for language purposes
  std::vector<std::vector<State>> rev(n);
  std::vector<bool> live(n, false);
  for (std::size_t q = 0; q < n; ++q) {
    for (const auto& e : edges_[q]) rev[e.target].push_back(static_cast<State>(q));
    rev[fallback_[q]].push_back(static_cast<State>(q));
  }
  std::vector<State> stack;
  for (std::size_t q = 0; q < n; ++q) {
    if (accepting_[q]) {
      live[q] = true;
      stack.push_back(static_cast<State>(q));
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : rev[q]) {
      if (!live[p]) {
        live[p] = true;
        stack.push_back(p);
      }
    }
  }
  std::vector<State> remap(n, std::numeric_limits<State>::max());
  NfaBuilder b(alphabet_);
  for (std::size_t q = 0; q < n; ++q) {
    if (live[q]) remap[q] = b.add_state(accepting_[q]);
  }
  if (live[initial_]) b.add_initial(remap[initial_]);
  for (std::size_t q = 0; q < n; ++q) {
    if (!live[q]) continue;
    for (const auto& e : edges_[q]) {
      if (live[e.target]) b.add_edge(remap[q], e.symbol, remap[e.target]);
    }
    if (live[fallback_[q]]) {
      if (alphabet_.size() > kDenseExpansionLimit) {
        throw StateLimitExceeded("cannot expand a co-finite transition over a huge alphabet");
      }
      const auto& e = edges_[q];
      std::size_t i = 0;
      for (Symbol s = 0; s < alphabet_.size(); ++s) {
        if (i < e.size() && e[i].symbol == s) {
          ++i;
          continue;
        }
        b.add_edge(remap[q], s, remap[fallback_[q]]);
      }
    }
  }
  return b.build();
}

}  // namespace cgauto
