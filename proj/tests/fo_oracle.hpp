#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cgauto/compiler.hpp"
#include "cgauto/fa.hpp"
#include "support.hpp"

namespace testing_support {

// A finite structure kept twice: as explicit tuple sets and as automata.
struct FiniteModel {
  std::vector<cgauto::Word> domain;
  std::map<std::string, std::pair<std::size_t, std::set<std::vector<int>>>> relations;
  cgauto::AutomaticStructure structure;
};

inline cgauto::Nfa words_nfa(const cgauto::Alphabet& a, const std::vector<cgauto::Word>& words) {
  cgauto::Nfa acc = cgauto::empty_nfa(a);
  for (const auto& w : words) acc = cgauto::unite(acc, cgauto::word_nfa(w));
  return acc;
}

inline FiniteModel random_model(std::mt19937_64& rng, std::size_t max_len = 2) {
  const Alphabet ab{"a", "b"};
  FiniteModel m;
  m.domain = all_words(ab, max_len);
  const int n = static_cast<int>(m.domain.size());
  m.structure = cgauto::AutomaticStructure("finite", words_nfa(ab, m.domain));
  std::bernoulli_distribution coin(0.35);
  const std::vector<std::pair<std::string, std::size_t>> shapes = {{"P", 1}, {"Q", 1}, {"R", 2}, {"S", 2}, {"T", 3}};
  for (const auto& [name, arity] : shapes) {
    std::set<std::vector<int>> tuples;
    std::vector<cgauto::Word> convs;
    std::vector<int> t(arity, 0);
    while (true) {
      if (coin(rng) && (arity < 3 || coin(rng))) {
        tuples.insert(t);
        std::vector<cgauto::Word> ws;
        for (int i : t) ws.push_back(m.domain[i]);
        convs.push_back(cgauto::convolve(ws));
      }
      std::size_t k = 0;
      while (k < arity && ++t[k] == n) t[k++] = 0;
      if (k == arity) break;
    }
    cgauto::RegularRelation r(ab, arity, words_nfa(ab.power(arity), convs));
    m.structure = m.structure.with_relation(name, r);
    m.relations[name] = {arity, std::move(tuples)};
  }
  return m;
}

inline cgauto::FormulaPtr random_formula(std::mt19937_64& rng, const FiniteModel& m, int depth) {
  static const std::vector<std::string> vars = {"x", "y", "z"};
  auto pick_var = [&] { return vars[std::uniform_int_distribution<std::size_t>(0, 2)(rng)]; };
  const int leaf_kinds = 2;
  const int kinds = depth <= 0 ? leaf_kinds : 9;
  const int k = std::uniform_int_distribution<int>(0, kinds - 1)(rng);
  switch (k) {
    case 0: {
      auto it = m.relations.begin();
      std::advance(it, std::uniform_int_distribution<std::size_t>(0, m.relations.size() - 1)(rng));
      std::vector<std::string> args;
      for (std::size_t i = 0; i < it->second.first; ++i) args.push_back(pick_var());
      return cgauto::atom(it->first, args);
    }
    case 1:
      return cgauto::var_equal(pick_var(), pick_var());
    case 2:
      return cgauto::negate(random_formula(rng, m, depth - 1));
    case 3:
      return cgauto::conj(random_formula(rng, m, depth - 1), random_formula(rng, m, depth - 1));
    case 4:
      return cgauto::disj(random_formula(rng, m, depth - 1), random_formula(rng, m, depth - 1));
    case 5:
      return cgauto::implies(random_formula(rng, m, depth - 1), random_formula(rng, m, depth - 1));
    case 6:
    case 7:
      return cgauto::exists(pick_var(), random_formula(rng, m, depth - 1));
    default:
      return cgauto::forall(pick_var(), random_formula(rng, m, depth - 1));
  }
}

inline bool model_check(const FiniteModel& m, const cgauto::Formula& f, std::map<std::string, int>& env) {
  using cgauto::FormulaKind;
  switch (f.kind) {
    case FormulaKind::Atom: {
      std::vector<int> t;
      for (const auto& v : f.vars) t.push_back(env.at(v));
      return m.relations.at(f.name).second.count(t) != 0;
    }
    case FormulaKind::VarEqual:
      return env.at(f.vars[0]) == env.at(f.vars[1]);
    case FormulaKind::Not:
      return !model_check(m, *f.children[0], env);
    case FormulaKind::And:
      return model_check(m, *f.children[0], env) && model_check(m, *f.children[1], env);
    case FormulaKind::Or:
      return model_check(m, *f.children[0], env) || model_check(m, *f.children[1], env);
    case FormulaKind::Implies:
      return !model_check(m, *f.children[0], env) || model_check(m, *f.children[1], env);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      const bool want = f.kind == FormulaKind::Exists;
      auto saved = env.find(f.name) != env.end() ? std::optional<int>(env[f.name]) : std::nullopt;
      bool result = !want;
      for (int i = 0; i < static_cast<int>(m.domain.size()); ++i) {
        env[f.name] = i;
        if (model_check(m, *f.children[0], env) == want) {
          result = want;
          break;
        }
      }
      if (saved) {
        env[f.name] = *saved;
      } else {
        env.erase(f.name);
      }
      return result;
    }
  }
  return false;
}

// Compares compiled membership with model checking for every assignment of the
// free variables. Returns the number of disagreements.
inline std::size_t soundness_mismatches(const FiniteModel& m, const cgauto::Formula& f) {
  const auto free = cgauto::free_variables(f);
  const std::vector<std::string> order(free.begin(), free.end());
  const cgauto::RegularRelation r = cgauto::compile(m.structure, f, order);
  std::size_t bad = 0;
  std::vector<int> idx(order.size(), 0);
  const int n = static_cast<int>(m.domain.size());
  while (true) {
    std::map<std::string, int> env;
    std::vector<cgauto::Word> tuple;
    for (std::size_t i = 0; i < order.size(); ++i) {
      env[order[i]] = idx[i];
      tuple.push_back(m.domain[idx[i]]);
    }
    if (r.contains(tuple) != model_check(m, f, env)) ++bad;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return bad;
}

}  // namespace testing_support
