#include "cgauto/decision.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cgauto/compiler.hpp"
#include "cgauto/error.hpp"

namespace cgauto {

namespace {

struct Node {
  State state;
  std::uint32_t parent;
  Symbol out;
  bool ambiguous;
};

}  // namespace

Word eval_function(const RegularRelation& r, std::span<const Word> inputs, std::size_t* transitions) {
  const std::size_t n = inputs.size();
  if (r.arity() != n + 1) throw ArityError("eval_function: relation arity must be the input count plus one");
  const Alphabet& base = r.base();
  std::size_t len = 0;
  for (const auto& w : inputs) {
    require_same_alphabet(base, w.alphabet, "eval_function");
    len = std::max(len, w.size());
  }
  const Dfa& d = r.dfa();
  const Symbol pad = base.size();
  Symbol out_stride = 1;
  for (std::size_t i = 0; i < n; ++i) out_stride *= pad + 1;
  std::size_t steps = 0;

  std::vector<std::vector<Node>> layers;
  layers.push_back({Node{d.initial(), 0, 0, false}});
  std::vector<std::int64_t> seen(d.state_count(), -1);
  auto dead = [&](State q) { return d.is_dead(q); };

  for (std::size_t pos = 0; pos < len; ++pos) {
    Symbol in = 0, mult = 1;
    for (const auto& w : inputs) {
      in += (pos < w.size() ? w[pos] : pad) * mult;
      mult *= pad + 1;
    }
    const auto& cur = layers.back();
    std::vector<Node> next;
    for (std::uint32_t i = 0; i < cur.size(); ++i) {
      for (Symbol o = 0; o <= pad; ++o) {
        const State q = d.next(cur[i].state, in + o * out_stride);
        ++steps;
        if (dead(q)) continue;
        if (seen[q] >= 0) {
          next[static_cast<std::size_t>(seen[q])].ambiguous = true;
          continue;
        }
        seen[q] = static_cast<std::int64_t>(next.size());
        next.push_back(Node{q, i, o, cur[i].ambiguous});
      }
    }
    for (const auto& node : next) seen[node.state] = -1;
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  if (layers.size() != len + 1) {
    if (transitions) *transitions += steps;
    throw InvalidArgument("eval_function: no output for these inputs");
  }

  std::optional<std::uint32_t> found;
  for (std::uint32_t i = 0; i < layers.back().size(); ++i) {
    const Node& node = layers.back()[i];
    if (!d.is_accepting(node.state)) continue;
    if (found || node.ambiguous) throw FunctionalityError("eval_function: relation is not functional");
    found = i;
  }
  if (!found) {
    // the output outlives the inputs
    const Symbol in = out_stride - 1;
    std::set<State> visited;
    for (const auto& node : layers.back()) visited.insert(node.state);
    for (std::size_t extra = 0; extra < d.state_count() && !found; ++extra) {
      const auto& cur = layers.back();
      std::vector<Node> next;
      for (std::uint32_t i = 0; i < cur.size() && !found; ++i) {
        for (Symbol o = 0; o < pad; ++o) {
          const State q = d.next(cur[i].state, in + o * out_stride);
          ++steps;
          if (dead(q) || !visited.insert(q).second) continue;
          next.push_back(Node{q, i, o, cur[i].ambiguous});
          if (d.is_accepting(q)) {
            found = static_cast<std::uint32_t>(next.size() - 1);
            break;
          }
        }
      }
      if (next.empty()) break;
      layers.push_back(std::move(next));
    }
  }
  if (transitions) *transitions += steps;
  if (!found) throw InvalidArgument("eval_function: no output for these inputs");
  if (layers.back()[*found].ambiguous) throw FunctionalityError("eval_function: relation is not functional");

  std::vector<Symbol> out;
  std::uint32_t idx = *found;
  for (std::size_t l = layers.size() - 1; l > 0; --l) {
    const Node& node = layers[l][idx];
    if (node.out != pad) out.push_back(node.out);
    idx = node.parent;
  }
  std::reverse(out.begin(), out.end());
  return Word(base, std::move(out));
}

Word right_multiply(const GraphAutomaticPresentation& p, const Word& u, const GroupWord& w, EvalTrace* trace) {
  p.require_generators(w);
  require_same_alphabet(p.base(), u.alphabet, "right_multiply");
  if (!accepts(p.domain(), u)) throw InvalidArgument("right_multiply: word is not in the domain");
  if (trace) trace->input = w;
  Word cur = u;
  for (const auto& letter : w) {
    cur = eval_function(p.right(letter), cur, trace ? &trace->transitions : nullptr);
    if (trace) trace->steps.push_back(cur);
  }
  return cur;
}

Word canonical_rep(const GraphAutomaticPresentation& p, const GroupWord& w, EvalTrace* trace) {
  return right_multiply(p, p.identity(), w, trace);
}

bool words_equal(const GraphAutomaticPresentation& p, const GroupWord& a, const GroupWord& b) {
  return canonical_rep(p, a) == canonical_rep(p, b);
}

bool is_identity(const GraphAutomaticPresentation& p, const GroupWord& w) { return canonical_rep(p, w) == p.identity(); }

bool relator_holds(const GraphAutomaticPresentation& p, const GroupWord& w) {
  if (w.empty()) throw InvalidArgument("relator_holds needs a non-empty word");
  return rel_equal(p.word_relation(w), p.equality());
}

namespace {

struct SymbolsHash {
  std::size_t operator()(const std::vector<Symbol>& v) const noexcept {
    std::size_t h = v.size();
    for (auto s : v) h ^= std::hash<Symbol>{}(s) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::vector<GroupLetter> all_letters(const GraphAutomaticPresentation& p) {
  std::vector<GroupLetter> letters;
  for (const auto& g : p.generators()) {
    letters.push_back({g.name, 1});
    letters.push_back({g.name, -1});
  }
  return letters;
}

// Breadth-first search by shells; `edge` sees every edge leaving shells below `radius`.
template <class OnEdge>
std::vector<std::vector<Word>> shells(const GraphAutomaticPresentation& p, std::size_t radius, OnEdge edge) {
  const auto letters = all_letters(p);
  std::unordered_set<std::vector<Symbol>, SymbolsHash> seen{p.identity().symbols};
  std::vector<std::vector<Word>> out{{p.identity()}};
  for (std::size_t r = 0; r < radius; ++r) {
    std::vector<Word> next;
    for (const auto& u : out.back()) {
      for (std::size_t i = 0; i < letters.size(); ++i) {
        Word v = eval_function(p.right(letters[i]), u);
        edge(i, u, v);
        if (seen.insert(v.symbols).second) next.push_back(std::move(v));
      }
    }
    std::sort(next.begin(), next.end(), [](const Word& a, const Word& b) { return llex_less(a, b); });
    out.push_back(std::move(next));
  }
  return out;
}

std::string letter_name(const GroupLetter& l) { return l.sign < 0 ? l.generator + "^-1" : l.generator; }

}  // namespace

std::vector<Word> ball(const GraphAutomaticPresentation& p, std::size_t radius) {
  std::vector<Word> out;
  for (auto& shell : shells(p, radius, [](std::size_t, const Word&, const Word&) {})) {
    for (auto& w : shell) out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::vector<Word>> spheres(const GraphAutomaticPresentation& p, std::size_t radius) {
  return shells(p, radius, [](std::size_t, const Word&, const Word&) {});
}

std::size_t growth_constant(const RegularRelation& r, const Dfa& domain) {
  return r.state_count() * domain.state_count();
}

GrowthReport growth_profile(const GraphAutomaticPresentation& p, std::size_t radius) {
  GrowthReport report;
  const auto letters = all_letters(p);
  std::vector<std::size_t> constants;
  std::size_t c_max = p.identity().size();
  for (const auto& l : letters) {
    constants.push_back(growth_constant(p.right(l), p.domain()));
    report.constants.push_back({letter_name(l), constants.back()});
    c_max = std::max(c_max, constants.back());
  }
  report.C = c_max + 1;
  report.alphabet_size = p.base().size();
  const auto sh = shells(p, radius, [&](std::size_t i, const Word& u, const Word& v) {
    if (v.size() > u.size() + constants[i]) report.violations.push_back({letter_name(letters[i]), u, v});
  });
  std::size_t total = 0;
  for (std::size_t n = 0; n < sh.size(); ++n) {
    total += sh[n].size();
    report.sizes.push_back(total);
    double bound = 0;
    if (n > 0) {
      const double cn = static_cast<double>(report.C) * static_cast<double>(n);
      bound = report.alphabet_size > 1 ? cn * std::log2(static_cast<double>(report.alphabet_size)) : std::log2(cn);
    }
    report.log2_bounds.push_back(bound);
    if (std::log2(static_cast<double>(total)) > bound + 1e-9) report.within_bound = false;
  }
  return report;
}

bool PresentationReport::ok() const {
  return identity_in_domain && domain_nonempty &&
         std::all_of(relations.begin(), relations.end(), [](const RelationCheck& c) { return c.ok(); });
}

std::string PresentationReport::to_text() const {
  std::ostringstream out;
  auto mark = [](bool b) { return b ? "ok" : "FAIL"; };
  out << "identity in domain: " << mark(identity_in_domain) << "\n";
  out << "domain non-empty: " << mark(domain_nonempty) << "\n";
  for (const auto& c : relations) {
    out << (c.left ? "left " : "right ") << c.name << ": contained " << mark(c.contained) << ", total "
        << mark(c.total) << ", functional " << mark(c.functional) << ", injective " << mark(c.injective)
        << ", surjective " << mark(c.surjective) << ", C = " << c.growth_constant << "\n";
  }
  out << (ok() ? "presentation valid" : "presentation INVALID") << "\n";
  return out.str();
}

namespace {

RelationCheck check_relation(const GraphAutomaticPresentation& p, const std::string& name, bool left,
                             const RegularRelation& e) {
  RelationCheck c;
  c.name = name;
  c.left = left;
  c.growth_constant = growth_constant(e, p.domain());
  c.contained = rel_subset(e, full_relation(p.domain_relation().nfa(), 2));
  const AutomaticStructure s = AutomaticStructure("check", p.domain()).with_relation("E", e, false);
  c.total = decide(s, parse_formula("A u E v (E(u,v))"));
  c.functional = decide(s, parse_formula("A u A v A w (E(u,v) & E(u,w) -> v = w)"));
  c.injective = decide(s, parse_formula("A u A v A w (E(u,w) & E(v,w) -> u = v)"));
  c.surjective = decide(s, parse_formula("A v E u (E(u,v))"));
  return c;
}

}  // namespace

PresentationReport check_presentation(const GraphAutomaticPresentation& p) {
  PresentationReport report;
  report.identity_in_domain = accepts(p.domain(), p.identity());
  report.domain_nonempty = !p.domain_relation().empty();
  for (const auto& g : p.generators()) {
    report.relations.push_back(check_relation(p, g.name, false, g.right));
    if (g.left) report.relations.push_back(check_relation(p, g.name, true, *g.left));
  }
  return report;
}

ConjugacyResult conjugate(const GraphAutomaticPresentation& p, const GroupWord& a, const GroupWord& b) {
  p.require_generators(a);
  p.require_generators(b);
  for (const auto& l : b) {
    if (!p.generator(l.generator).left) {
      throw UnsupportedPresentation("conjugacy needs left relations for '" + l.generator + "'");
    }
  }
  const RegularRelation both = rel_intersect(p.word_relation(a), p.left_word_relation(b));
  const std::size_t keep[] = {0};
  const RegularRelation s = project_onto(both, keep);
  const Emptiness e = is_empty(s.dfa());
  ConjugacyResult result;
  result.conjugate = !e.empty;
  if (e.witness) result.witness = Word(p.base(), e.witness->symbols);
  return result;
}

MonoidGrowthReport monoid_growth_bound_check(const AutomaticStructure& s, const std::string& operation,
                                             std::span<const Word> elements) {
  if (elements.empty()) throw InvalidArgument("monoid_growth_bound_check needs at least one element");
  const RegularRelation& op = s.relation(operation);
  if (op.arity() != 3) throw ArityError("the operation must be a ternary relation");
  MonoidGrowthReport report;
  report.C = growth_constant(op, s.domain());
  for (const auto& m : elements) report.max_input_length = std::max(report.max_input_length, m.size());
  auto product = [&](auto&& self, std::size_t lo, std::size_t hi) -> Word {
    if (hi - lo == 1) return elements[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    const Word args[] = {self(self, lo, mid), self(self, mid, hi)};
    return eval_function(op, args);
  };
  report.product = product(product, 0, elements.size());
  std::size_t log_n = 0;
  while ((std::size_t{1} << log_n) < elements.size()) ++log_n;
  report.bound = report.max_input_length + report.C * log_n;
  report.holds = report.product.size() <= report.bound;
  return report;
}

}  // namespace cgauto
