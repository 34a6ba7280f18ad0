#include <algorithm>
#include <set>

#include "cgauto/decision.hpp"
#include "cgauto/error.hpp"
#include "cgauto/groups.hpp"
#include "group_support.hpp"

namespace cgauto {

namespace {

using detail::Part;

// Generator names of two factors; clashing names are tagged with the factor.
std::pair<std::vector<std::string>, std::vector<std::string>> factor_names(const GraphAutomaticPresentation& p,
                                                                           const GraphAutomaticPresentation& q) {
  std::set<std::string> a, b;
  for (const auto& g : p.generators()) a.insert(g.name);
  for (const auto& g : q.generators()) b.insert(g.name);
  std::vector<std::string> x, y;
  for (const auto& g : p.generators()) x.push_back(b.count(g.name) ? "1." + g.name : g.name);
  for (const auto& g : q.generators()) y.push_back(a.count(g.name) ? "2." + g.name : g.name);
  return {x, y};
}

Alphabet concat_alphabets(const Alphabet& a, const Alphabet& b) {
  std::vector<std::shared_ptr<const Leaf>> leaves = a.leaves();
  leaves.insert(leaves.end(), b.leaves().begin(), b.leaves().end());
  return Alphabet::from_leaves(std::move(leaves));
}

// {(u, v)} on two blocks of tracks: `first` on tracks [0, k1) and `second` on [k1, k1 + k2).
RegularRelation block_pair(const Alphabet& sigma, const RegularRelation& first, const RegularRelation& second) {
  const std::size_t k1 = first.base().track_count(), k2 = second.base().track_count();
  const std::size_t w = sigma.track_count();
  const auto m1 = detail::iota(0, k1), m2 = detail::iota(k1, k2);
  return detail::assemble(sigma, 2, {detail::place(first, m1, w), detail::place(second, m2, w)});
}

Dfa block_domain(const Alphabet& sigma, const GraphAutomaticPresentation& p, const GraphAutomaticPresentation& q) {
  const std::size_t k1 = p.base().track_count(), k2 = q.base().track_count();
  return detail::assemble(sigma, 1,
                          {detail::place(p.domain_relation().nfa(), detail::iota(0, k1)),
                           detail::place(q.domain_relation().nfa(), detail::iota(k1, k2))})
      .dfa();
}

Word block_word(const Alphabet& sigma, const Word& a, const Word& b) {
  const std::size_t k1 = a.alphabet.track_count(), k2 = b.alphabet.track_count();
  return detail::merge_words(sigma, {{&a, detail::iota(0, k1)}, {&b, detail::iota(k1, k2)}});
}

void require_bijection(const RegularRelation& r, const RegularRelation& domain, const char* what) {
  const RegularRelation& eq = equality_relation(domain.nfa());
  const std::size_t first[] = {0}, second[] = {1};
  const bool ok = rel_equal(project_onto(r, first), domain) && rel_equal(project_onto(r, second), domain) &&
                  rel_subset(compose(transpose(r), r), eq) && rel_subset(compose(r, transpose(r)), eq);
  if (!ok) throw InvalidArgument(std::string(what) + " is not a bijection of the domain");
}

}  // namespace

GraphAutomaticPresentation direct_product(const GraphAutomaticPresentation& p, const GraphAutomaticPresentation& q) {
  const Alphabet sigma = concat_alphabets(p.base(), q.base());
  const auto [xn, yn] = factor_names(p, q);
  const bool left = p.has_left() && q.has_left();
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < p.generators().size(); ++i) {
    const auto& g = p.generators()[i];
    Generator out{xn[i], block_pair(sigma, g.right, q.equality()), std::nullopt};
    if (left) out.left = block_pair(sigma, *g.left, q.equality());
    gens.push_back(std::move(out));
  }
  for (std::size_t i = 0; i < q.generators().size(); ++i) {
    const auto& g = q.generators()[i];
    Generator out{yn[i], block_pair(sigma, p.equality(), g.right), std::nullopt};
    if (left) out.left = block_pair(sigma, p.equality(), *g.left);
    gens.push_back(std::move(out));
  }
  return GraphAutomaticPresentation(sigma, block_domain(sigma, p, q), block_word(sigma, p.identity(), q.identity()),
                                    std::move(gens), "(" + p.meta() + ") x (" + q.meta() + ")");
}

GraphAutomaticPresentation semidirect(const GraphAutomaticPresentation& p, const GraphAutomaticPresentation& q,
                                      const std::map<std::string, RegularRelation>& action) {
  // elements s r with s from q (first tracks) and r from p
  const Alphabet sigma = concat_alphabets(q.base(), p.base());
  const auto [xn, yn] = factor_names(p, q);
  for (const auto& [name, r] : action) {
    if (!q.has_generator(name)) throw InvalidArgument("action given for unknown generator '" + name + "'");
    if (r.arity() != 2 || r.base() != p.base()) throw InvalidArgument("action must be a binary relation over the normal factor");
  }
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < p.generators().size(); ++i) {
    gens.push_back(Generator{xn[i], block_pair(sigma, q.equality(), p.generators()[i].right), std::nullopt});
  }
  for (std::size_t i = 0; i < q.generators().size(); ++i) {
    const auto& g = q.generators()[i];
    auto it = action.find(g.name);
    if (it == action.end()) throw InvalidArgument("no action given for generator '" + g.name + "'");
    const RegularRelation& tau = it->second;
    require_bijection(tau, p.domain_relation(), "action");
    const Word pair[] = {p.identity(), p.identity()};
    if (!tau.contains(pair)) throw InvalidArgument("action must fix the identity");
    gens.push_back(Generator{yn[i], block_pair(sigma, g.right, tau), std::nullopt});
  }
  return GraphAutomaticPresentation(sigma, block_domain(sigma, q, p), block_word(sigma, q.identity(), p.identity()),
                                    std::move(gens), "(" + p.meta() + ") x| (" + q.meta() + ")");
}

// ---------------------------------------------------------------------------
// Free product: normal forms g1 | g2 | ... | gn over one flat track whose
// letters are the factor symbols tagged "1." / "2." plus the separator.

namespace {

struct Flat {
  Alphabet alphabet;
  Symbol offset[2];
  Symbol separator;
};

Flat flat_alphabet(const Alphabet& a, const Alphabet& b) {
  std::vector<std::string> names;
  for (Symbol s = 0; s < a.size(); ++s) names.push_back("1." + a.symbol_name(s));
  for (Symbol s = 0; s < b.size(); ++s) names.push_back("2." + b.symbol_name(s));
  names.push_back("|");
  return Flat{Alphabet(names), {0, a.size()}, a.size() + b.size()};
}

// Syllables of a factor: non-empty domain words other than the identity.
Nfa syllables(const GraphAutomaticPresentation& p) {
  Nfa nonempty = difference(p.domain_relation().nfa(), word_nfa(Word(p.base())));
  return difference(nonempty, word_nfa(p.identity()));
}

// Copies an automaton over a factor alphabet into the flat alphabet (or its
// square for a binary relation).
Nfa flatten(const Nfa& a, const Flat& f, int side, std::size_t arity, const Alphabet& factor) {
  const Alphabet target = f.alphabet.power(arity);
  NfaBuilder b(target, a.state_count());
  for (auto q : a.initial()) b.add_initial(q);
  for (State q = 0; q < a.state_count(); ++q) {
    b.set_accepting(q, a.is_accepting(q));
    for (const auto& e : a.edges(q)) {
      std::vector<Symbol> comps;
      for (std::size_t i = 0; i < arity; ++i) {
        const Symbol c = arity == 1 ? e.symbol : component(factor, e.symbol, i);
        comps.push_back(c == factor.size() ? f.alphabet.size() : c + f.offset[side]);
      }
      b.add_edge(q, column(f.alphabet, comps), e.target);
    }
  }
  return b.build();
}

Nfa normal_forms(const Flat& f, const Nfa& s0, const Nfa& s1) {
  // start, an entry state per side (after '|'), then the syllable automata
  const Nfa* parts[2] = {&s0, &s1};
  const State entry[2] = {1, 2};
  const State base[2] = {3, static_cast<State>(3 + s0.state_count())};
  NfaBuilder b(f.alphabet, base[1] + s1.state_count());
  b.add_initial(0);
  b.set_accepting(0);
  for (int side = 0; side < 2; ++side) {
    const Nfa& s = *parts[side];
    for (auto i : s.initial()) {
      for (const auto& e : s.edges(i)) {
        b.add_edge(0, e.symbol, base[side] + e.target);
        b.add_edge(entry[side], e.symbol, base[side] + e.target);
      }
    }
    for (State q = 0; q < s.state_count(); ++q) {
      for (const auto& e : s.edges(q)) b.add_edge(base[side] + q, e.symbol, base[side] + e.target);
      if (s.is_accepting(q)) {
        b.set_accepting(base[side] + q);
        b.add_edge(base[side] + q, f.separator, entry[1 - side]);
      }
    }
  }
  return trim(b.build());
}

Symbol flat_pair(const Flat& f, Symbol u, Symbol v) {
  const Symbol comps[] = {u, v};
  return column(f.alphabet, comps);
}

// Flat word of a factor word.
std::vector<Symbol> flat_symbols(const Word& w, const Flat& f, int side) {
  std::vector<Symbol> out;
  for (auto s : w.symbols) out.push_back(s + f.offset[side]);
  return out;
}

// E_x for a generator of the factor on `side`.
RegularRelation free_product_edge(const Flat& f, const Nfa& domain, const GraphAutomaticPresentation& factor,
                                  int side, const Generator& g) {
  const Symbol pad = f.alphabet.size();
  const Alphabet pair = f.alphabet.power(2);
  auto is_side = [&](Symbol s, int which) {
    const Symbol lo = f.offset[which];
    const Symbol hi = which == 0 ? f.offset[1] : f.separator;
    return s >= lo && s < hi;
  };
  const Word x_word = eval_function(g.right, factor.identity());
  const GroupLetter inv{g.name, -1};
  const Word y_word = eval_function(factor.right(inv), factor.identity());
  const auto x = flat_symbols(x_word, f, side);
  const auto y = flat_symbols(y_word, f, side);
  if (x_word == factor.identity()) return equality_relation(domain);

  NfaBuilder b(pair);
  // lambda -> x
  {
    State q = b.add_state();
    b.add_initial(q);
    for (auto s : x) {
      const State t = b.add_state();
      b.add_edge(q, flat_pair(f, pad, s), t);
      q = t;
    }
    b.set_accepting(q);
  }
  // w ending in a syllable of the other side -> w | x
  {
    const State copy = b.add_state(), ended = b.add_state();
    b.add_initial(copy);
    for (Symbol s = 0; s < f.alphabet.size(); ++s) {
      b.add_edge(copy, flat_pair(f, s, s), copy);
      if (is_side(s, 1 - side)) b.add_edge(copy, flat_pair(f, s, s), ended);
    }
    State q = b.add_state();
    b.add_edge(ended, flat_pair(f, pad, f.separator), q);
    for (auto s : x) {
      const State t = b.add_state();
      b.add_edge(q, flat_pair(f, pad, s), t);
      q = t;
    }
    b.set_accepting(q);
  }
  // a prefix ending in '|' (or nothing), then the last syllable s
  const State prefix = b.add_state(), after_sep = b.add_state();
  b.add_initial(prefix);
  for (Symbol s = 0; s < f.alphabet.size(); ++s) b.add_edge(prefix, flat_pair(f, s, s), prefix);
  b.add_edge(prefix, flat_pair(f, f.separator, f.separator), after_sep);
  // s x stays a syllable
  {
    const Nfa& rel = g.right.nfa();
    const Nfa moved = flatten(rel, f, side, 2, factor.base());
    const State off = static_cast<State>(b.state_count());
    for (State q = 0; q < moved.state_count(); ++q) b.add_state(moved.is_accepting(q));
    for (State q = 0; q < moved.state_count(); ++q) {
      for (const auto& e : moved.edges(q)) b.add_edge(off + q, e.symbol, off + e.target);
    }
    for (auto i : moved.initial()) {
      b.add_initial(off + i);
      for (const auto& e : moved.edges(i)) b.add_edge(after_sep, e.symbol, off + e.target);
    }
  }
  // s x is the identity: the syllable and its separator disappear
  {
    State q = b.add_state();
    b.add_initial(q);
    const State from_sep = b.add_state();
    const State copy = b.add_state();
    b.add_initial(copy);
    for (Symbol s = 0; s < f.alphabet.size(); ++s) b.add_edge(copy, flat_pair(f, s, s), copy);
    b.add_edge(copy, flat_pair(f, f.separator, pad), from_sep);
    auto chain = [&](State start) {
      State cur = start;
      for (auto s : y) {
        const State t = b.add_state();
        b.add_edge(cur, flat_pair(f, s, pad), t);
        cur = t;
      }
      b.set_accepting(cur);
    };
    chain(q);
    chain(from_sep);
  }
  const Nfa rel = b.build();
  return detail::assemble(f.alphabet, 2,
                          {detail::place(rel, {0, 1}), detail::place(domain, {0}), detail::place(domain, {1})});
}

}  // namespace

GraphAutomaticPresentation free_product(const GraphAutomaticPresentation& p, const GraphAutomaticPresentation& q) {
  const Flat f = flat_alphabet(p.base(), q.base());
  const Nfa s0 = flatten(syllables(p), f, 0, 1, p.base());
  const Nfa s1 = flatten(syllables(q), f, 1, 1, q.base());
  const Nfa domain = normal_forms(f, s0, s1);
  const auto [xn, yn] = factor_names(p, q);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < p.generators().size(); ++i) {
    gens.push_back(Generator{xn[i], free_product_edge(f, domain, p, 0, p.generators()[i]), std::nullopt});
  }
  for (std::size_t i = 0; i < q.generators().size(); ++i) {
    gens.push_back(Generator{yn[i], free_product_edge(f, domain, q, 1, q.generators()[i]), std::nullopt});
  }
  return GraphAutomaticPresentation(f.alphabet, determinize(domain), Word(f.alphabet), std::move(gens),
                                    "(" + p.meta() + ") * (" + q.meta() + ")");
}

// ---------------------------------------------------------------------------

GraphAutomaticPresentation finite_extension(const FiniteExtensionData& data) {
  const GraphAutomaticPresentation& h = data.base;
  const std::size_t r = data.coset_names.size() + 1;
  if (r == 1) return h;
  const std::size_t nh = h.generators().size();
  auto square = [&](const auto& m, std::size_t cols) {
    if (m.size() != r) return false;
    return std::all_of(m.begin(), m.end(), [&](const auto& row) { return row.size() == cols; });
  };
  if (!square(data.coset_product, r) || !square(data.correction, r) || !square(data.conjugation, nh)) {
    throw InvalidArgument("finite extension data has wrong shape");
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t s = 0; s < r; ++s) {
      if (data.coset_product[i][s] >= r) throw InvalidArgument("coset index out of range");
      h.require_generators(data.correction[i][s]);
    }
    for (std::size_t j = 0; j < nh; ++j) h.require_generators(data.conjugation[i][j]);
  }
  for (std::size_t s = 0; s < r; ++s) {
    if (data.coset_product[0][s] != s || data.coset_product[s][0] != s) {
      throw InvalidArgument("coset 0 must act as the identity");
    }
    if (!is_identity(h, data.correction[0][s]) || !is_identity(h, data.correction[s][0])) {
      throw InvalidArgument("corrections involving coset 0 must be trivial");
    }
  }
  for (std::size_t j = 0; j < nh; ++j) {
    if (!words_equal(h, data.conjugation[0][j], GroupWord{{h.generators()[j].name, 1}})) {
      throw InvalidArgument("conjugation by coset 0 must fix each generator");
    }
  }
  std::set<std::string> names;
  for (const auto& g : h.generators()) names.insert(g.name);
  for (const auto& n : data.coset_names) {
    if (n.empty() || !names.insert(n).second) throw InvalidArgument("coset name '" + n + "' is taken");
  }

  std::vector<std::string> letters;
  for (std::size_t i = 0; i < r; ++i) letters.push_back(std::to_string(i));
  std::vector<std::shared_ptr<const Leaf>> leaves = h.base().leaves();
  leaves.push_back(std::make_shared<const Leaf>(letters));
  const Alphabet sigma = Alphabet::from_leaves(leaves);
  const std::size_t k = h.base().track_count();
  const std::size_t w = k + 1;
  const Alphabet coset = sigma.slice(k, 1);
  const Alphabet coset_pair = coset.power(2);
  auto coset_move = [&](std::size_t from, std::size_t to) {
    NfaBuilder b(coset_pair, 2);
    b.add_initial(0);
    b.set_accepting(1);
    const std::size_t digits[] = {from, to};
    b.add_edge(0, coset_pair.compose(digits), 1);
    return b.build();
  };
  const auto h_tracks = detail::iota(0, k);
  const std::vector<std::size_t> c_tracks{k, w + k};
  auto edge = [&](auto word_for, auto target) {
    std::optional<RegularRelation> out;
    for (std::size_t i = 0; i < r; ++i) {
      const RegularRelation hw = h.word_relation(word_for(i));
      RegularRelation piece = detail::assemble(
          sigma, 2, {detail::place(hw, h_tracks, w), detail::place(coset_move(i, target(i)), c_tracks)});
      out = out ? rel_union(*out, piece) : piece;
    }
    return *out;
  };
  std::vector<Generator> gens;
  for (std::size_t j = 0; j < nh; ++j) {
    gens.push_back(Generator{h.generators()[j].name,
                             edge([&](std::size_t i) { return data.conjugation[i][j]; },
                                  [](std::size_t i) { return i; }),
                             std::nullopt});
  }
  for (std::size_t s = 1; s < r; ++s) {
    gens.push_back(Generator{data.coset_names[s - 1],
                             edge([&](std::size_t i) { return data.correction[i][s]; },
                                  [&](std::size_t i) { return data.coset_product[i][s]; }),
                             std::nullopt});
  }
  const Dfa domain = detail::assemble(sigma, 1,
                                      {detail::place(h.domain_relation().nfa(), h_tracks),
                                       detail::place(detail::single_letter(coset), {k})})
                         .dfa();
  const Word zero(coset, {0});
  const Word identity = detail::merge_words(sigma, {{&h.identity(), h_tracks}, {&zero, {k}}});
  return GraphAutomaticPresentation(sigma, domain, identity, std::move(gens),
                                    "extension of " + h.meta() + " of index " + std::to_string(r));
}

GraphAutomaticPresentation restrict_to_regular_subgroup(const GraphAutomaticPresentation& p, const Dfa& subgroup,
                                                        const std::vector<std::string>& generators) {
  require_same_alphabet(p.base(), subgroup.alphabet(), "restrict_to_regular_subgroup");
  const RegularRelation d(p.base(), 1, subgroup);
  if (!rel_subset(d, p.domain_relation())) throw InvalidArgument("subgroup is not inside the domain");
  if (!accepts(subgroup, p.identity())) throw InvalidArgument("subgroup does not contain the identity");
  const RegularRelation square = full_relation(d.nfa(), 2);
  const std::size_t from[] = {0}, to[] = {1};
  std::vector<Generator> gens;
  for (const auto& name : generators) {
    const Generator& g = p.generator(name);
    for (const auto* r : {&g.right, g.left ? &*g.left : nullptr}) {
      if (!r) continue;
      const RegularRelation restricted = rel_intersect(*r, cylindrify(d, 1));
      const RegularRelation back = rel_intersect(*r, cylindrify(d, 0));
      if (!rel_subset(project_onto(restricted, to), d) || !rel_subset(project_onto(back, from), d)) {
        throw InvalidArgument("subgroup is not closed under '" + name + "'");
      }
    }
    Generator out{g.name, rel_intersect(g.right, square), std::nullopt};
    if (g.left) out.left = rel_intersect(*g.left, square);
    gens.push_back(std::move(out));
  }
  return GraphAutomaticPresentation(p.base(), subgroup, p.identity(), std::move(gens), "subgroup of " + p.meta());
}

GraphAutomaticPresentation extend_generator(const GraphAutomaticPresentation& p, const std::string& name,
                                            const GroupWord& w) {
  if (w.empty()) throw InvalidArgument("extend_generator needs a non-empty word");
  if (p.has_generator(name)) throw InvalidArgument("generator '" + name + "' already exists");
  p.require_generators(w);
  std::vector<Generator> gens = p.generators();
  Generator g{name, p.word_relation(w), std::nullopt};
  if (p.has_left()) g.left = p.left_word_relation(w);
  gens.push_back(std::move(g));
  return GraphAutomaticPresentation(p.base(), p.domain(), p.identity(), std::move(gens), p.meta());
}

AutomaticStructure fa_abelian_multiplication(std::size_t n, const std::vector<std::int64_t>& torsion) {
  if (n + torsion.size() == 0) throw InvalidArgument("abelian group needs at least one coordinate");
  std::vector<std::int64_t> orders(n, 0);
  for (auto w : torsion) {
    if (w < 2) throw InvalidArgument("torsion orders must be at least 2");
    orders.push_back(w);
  }
  const CoordinateSpace space(orders);
  const Alphabet& sigma = space.alphabet();
  const std::size_t d = orders.size();
  const Nfa& add = addition_relation().nfa();
  std::vector<Part> parts;
  for (std::size_t t = 0; t < d; ++t) {
    const std::vector<std::size_t> tracks{t, d + t, 2 * d + t};
    if (orders[t] == 0) {
      parts.push_back(detail::place(add, tracks));
      continue;
    }
    const Alphabet triple = sigma.slice(t, 1).power(3);
    NfaBuilder b(triple, 2);
    b.add_initial(0);
    b.set_accepting(1);
    const auto w = static_cast<std::size_t>(orders[t]);
    for (std::size_t x = 0; x < w; ++x) {
      for (std::size_t y = 0; y < w; ++y) {
        const std::size_t digits[] = {x, y, (x + y) % w};
        b.add_edge(0, triple.compose(digits), 1);
      }
    }
    parts.push_back(detail::place(b.build(), tracks));
  }
  const RegularRelation mult = detail::assemble(sigma, 3, parts);
  return AutomaticStructure("abelian multiplication", space.domain()).with_relation("Mult", mult, false);
}

}  // namespace cgauto
