#include "cgauto/compiler.hpp"

#include <algorithm>
#include <memory>

#include "cgauto/error.hpp"

namespace cgauto {

namespace {

// A compiled subformula: relation whose component i is variable vars[i];
// vars is sorted and duplicate free.
struct Compiled {
  std::vector<std::string> vars;
  std::shared_ptr<const RegularRelation> rel;
};

std::size_t position(const std::vector<std::string>& vars, const std::string& v) {
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  return static_cast<std::size_t>(it - vars.begin());
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> wiring(const std::vector<std::string>& from, const std::vector<std::string>& into) {
  std::vector<std::size_t> w;
  for (const auto& v : from) w.push_back(position(into, v));
  return w;
}

class Compiler {
 public:
  explicit Compiler(const AutomaticStructure& s)
      : s_(s), domain_(std::shared_ptr<const RegularRelation>(&s.domain_relation(), [](const auto*) {})) {}

  Compiled node(const Formula& f) {
    switch (f.kind) {
      case FormulaKind::Atom:
        return atom_node(f);
      case FormulaKind::VarEqual:
        if (f.vars[0] == f.vars[1]) return {{f.vars[0]}, domain_};
        return {sorted({f.vars[0], f.vars[1]}),
                std::shared_ptr<const RegularRelation>(&s_.equality(), [](const auto*) {})};
      case FormulaKind::Not:
        return not_node(f);
      case FormulaKind::And: {
        std::vector<const Formula*> items;
        flatten_and(f, items);
        return conjunction(items, {});
      }
      case FormulaKind::Or:
        return disjunction(f);
      case FormulaKind::Implies: {
        // ¬(a ∧ ¬b)
        std::vector<const Formula*> items;
        flatten_and(f, items, true);
        return complement_node(conjunction(items, {}));
      }
      case FormulaKind::Exists:
        return exists_node(f);
      case FormulaKind::Forall: {
        // ¬∃x¬φ
        auto inner = exists_node_of({f.name}, f.children[0].get(), true);
        return complement_node(inner);
      }
    }
    throw FormulaError("unknown formula node");
  }

 private:
  static std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  Compiled atom_node(const Formula& f) {
    const RegularRelation& r = s_.relation(f.name);
    if (r.arity() != f.vars.size()) {
      throw FormulaError("relation '" + f.name + "' has arity " + std::to_string(r.arity()) + ", used with " +
                         std::to_string(f.vars.size()) + " arguments");
    }
    auto vars = sorted(f.vars);
    std::shared_ptr<const RegularRelation> shared(&r, [](const auto*) {});
    if (vars == f.vars) return {vars, shared};
    const JoinOperand ops[] = {{&r, wiring(f.vars, vars)}};
    return {vars, std::make_shared<const RegularRelation>(join(s_.base(), vars.size(), ops))};
  }

  Compiled complement_node(const Compiled& c) {
    if (c.vars.empty()) {
      return {{}, std::make_shared<const RegularRelation>(s_.base(), 0, complement(c.rel->dfa()))};
    }
    std::vector<JoinOperand> ops;
    for (std::size_t i = 0; i < c.vars.size(); ++i) ops.push_back({domain_.get(), {i}});
    std::vector<std::size_t> all(c.vars.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const JoinExclusion ex[] = {{c.rel.get(), all}};
    return {c.vars, std::make_shared<const RegularRelation>(join(s_.base(), c.vars.size(), ops, ex))};
  }

  Compiled not_node(const Formula& f) {
    const Formula& g = *f.children[0];
    switch (g.kind) {
      case FormulaKind::Not:
        return node(*g.children[0]);
      case FormulaKind::Or:
      case FormulaKind::Implies: {
        std::vector<const Formula*> items;
        flatten_and(f, items);
        return conjunction(items, {});
      }
      case FormulaKind::Forall:
        return exists_node_of({g.name}, g.children[0].get(), true);
      default:
        return complement_node(node(g));
    }
  }

  // Collects the conjuncts of `f`; negated conjuncts are kept as Not nodes.
  // With `implication`, f is a -> b and contributes a and ¬b.
  void flatten_and(const Formula& f, std::vector<const Formula*>& out, bool implication = false) {
    if (implication) {
      flatten_and(*f.children[0], out);
      push_negated(*f.children[1], out);
      return;
    }
    if (f.kind == FormulaKind::And) {
      for (const auto& c : f.children) flatten_and(*c, out);
      return;
    }
    if (f.kind == FormulaKind::Not) {
      const Formula& g = *f.children[0];
      if (g.kind == FormulaKind::Not) return flatten_and(*g.children[0], out);
      if (g.kind == FormulaKind::Or) {
        for (const auto& c : g.children) push_negated(*c, out);
        return;
      }
      if (g.kind == FormulaKind::Implies) return flatten_and(g, out, true);
      if (g.kind == FormulaKind::Forall) return push_negated(g, out);
    }
    out.push_back(&f);
  }

  void push_negated(const Formula& f, std::vector<const Formula*>& out) {
    if (f.kind == FormulaKind::Not) return flatten_and(*f.children[0], out);
    if (f.kind == FormulaKind::Implies) return flatten_and(f, out, true);
    if (f.kind == FormulaKind::Or) {
      for (const auto& c : f.children) push_negated(*c, out);
      return;
    }
    if (f.kind == FormulaKind::Forall) {
      negations_.push_back(exists(f.name, negate(f.children[0])));
      out.push_back(negations_.back().get());
      return;
    }
    negations_.push_back(negate(std::make_shared<const Formula>(f)));
    out.push_back(negations_.back().get());
  }

  Compiled conjunction(const std::vector<const Formula*>& items, const std::set<std::string>& drop) {
    std::vector<Compiled> pos, neg;
    for (const Formula* item : items) {
      if (item->kind == FormulaKind::Not) {
        neg.push_back(node(*item->children[0]));
      } else {
        pos.push_back(node(*item));
      }
    }
    std::vector<std::string> all;
    for (const auto& c : pos) all = merge_vars(all, c.vars);
    std::vector<std::string> covered = all;
    for (const auto& c : neg) all = merge_vars(all, c.vars);
    for (const auto& v : all) {
      if (!std::binary_search(covered.begin(), covered.end(), v)) pos.push_back({{v}, domain_});
    }
    // greedy fold: start wide, then join the operand sharing most variables
    std::sort(pos.begin(), pos.end(), [](const Compiled& a, const Compiled& b) { return a.vars.size() > b.vars.size(); });
    auto needed_later = [&](const std::string& v, std::size_t from) {
      for (std::size_t i = from; i < pos.size(); ++i) {
        if (std::binary_search(pos[i].vars.begin(), pos[i].vars.end(), v)) return true;
      }
      for (const auto& c : neg) {
        if (std::binary_search(c.vars.begin(), c.vars.end(), v)) return true;
      }
      return false;
    };
    while (pos.size() > 2) {
      std::size_t best = 1;
      long best_score = -1;
      for (std::size_t i = 1; i < pos.size(); ++i) {
        long shared = 0;
        for (const auto& v : pos[i].vars) shared += std::binary_search(pos[0].vars.begin(), pos[0].vars.end(), v);
        const long score = shared * 64 - static_cast<long>(pos[i].vars.size() - shared);
        if (score > best_score) {
          best_score = score;
          best = i;
        }
      }
      std::swap(pos[1], pos[best]);
      const auto vars = merge_vars(pos[0].vars, pos[1].vars);
      std::vector<std::string> keep_vars;
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!drop.count(vars[i]) || needed_later(vars[i], 2)) {
          keep_vars.push_back(vars[i]);
          keep.push_back(i);
        }
      }
      const JoinOperand ops[] = {{pos[0].rel.get(), wiring(pos[0].vars, vars)},
                                 {pos[1].rel.get(), wiring(pos[1].vars, vars)}};
      Compiled merged{keep_vars, std::make_shared<const RegularRelation>(
                                     join_project(s_.base(), vars.size(), ops, {}, keep))};
      pos.erase(pos.begin(), pos.begin() + 2);
      pos.insert(pos.begin(), std::move(merged));
    }
    std::vector<std::string> vars;
    for (const auto& c : pos) vars = merge_vars(vars, c.vars);
    std::vector<JoinOperand> ops;
    for (const auto& c : pos) ops.push_back({c.rel.get(), wiring(c.vars, vars)});
    std::vector<JoinExclusion> exs;
    for (const auto& c : neg) exs.push_back({c.rel.get(), wiring(c.vars, vars)});
    std::vector<std::string> keep_vars;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!drop.count(vars[i])) {
        keep_vars.push_back(vars[i]);
        keep.push_back(i);
      }
    }
    if (ops.size() == 1 && exs.empty() && keep.size() == vars.size()) return pos[0];
    return {keep_vars,
            std::make_shared<const RegularRelation>(join_project(s_.base(), vars.size(), ops, exs, keep))};
  }

  Compiled extend(const Compiled& c, const std::vector<std::string>& vars) {
    if (c.vars == vars) return c;
    std::vector<JoinOperand> ops{{c.rel.get(), wiring(c.vars, vars)}};
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!std::binary_search(c.vars.begin(), c.vars.end(), vars[i])) ops.push_back({domain_.get(), {i}});
    }
    return {vars, std::make_shared<const RegularRelation>(join(s_.base(), vars.size(), ops))};
  }

  void flatten_or(const Formula& f, std::vector<const Formula*>& out) {
    if (f.kind == FormulaKind::Or) {
      for (const auto& c : f.children) flatten_or(*c, out);
      return;
    }
    out.push_back(&f);
  }

  Compiled disjunction(const Formula& f) {
    std::vector<const Formula*> items;
    flatten_or(f, items);
    std::vector<Compiled> parts;
    std::vector<std::string> vars;
    for (const Formula* item : items) {
      parts.push_back(node(*item));
      vars = merge_vars(vars, parts.back().vars);
    }
    Compiled acc = extend(parts[0], vars);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const Compiled next = extend(parts[i], vars);
      acc = {vars, std::make_shared<const RegularRelation>(rel_union(*acc.rel, *next.rel))};
    }
    return acc;
  }

  Compiled exists_node(const Formula& f) {
    std::vector<std::string> bound;
    const Formula* body = &f;
    while (body->kind == FormulaKind::Exists) {
      bound.push_back(body->name);
      body = body->children[0].get();
    }
    return exists_node_of(bound, body, false);
  }

  // ∃bound body, or ∃bound ¬body when `negated_body`.
  Compiled exists_node_of(const std::vector<std::string>& bound, const Formula* body, bool negated_body) {
    std::set<std::string> drop(bound.begin(), bound.end());
    const auto free = free_variables(*body);
    bool vacuous = false;
    for (const auto& v : bound) vacuous = vacuous || !free.count(v);
    if (vacuous && s_.domain_empty()) {
      // ∃x over an empty domain
      std::vector<std::string> rest;
      for (const auto& v : free) {
        if (!drop.count(v)) rest.push_back(v);
      }
      return empty_relation(rest);
    }
    std::vector<const Formula*> items;
    if (negated_body) {
      push_negated(*body, items);
    } else {
      flatten_and(*body, items);
    }
    return conjunction(items, drop);
  }

  Compiled empty_relation(const std::vector<std::string>& vars) {
    if (vars.empty()) {
      return {{}, std::make_shared<const RegularRelation>(s_.base(), 0, empty_nfa(s_.base().power(0)))};
    }
    return {vars, std::make_shared<const RegularRelation>(s_.base(), vars.size(),
                                                          empty_nfa(s_.base().power(vars.size())))};
  }

  const AutomaticStructure& s_;
  std::shared_ptr<const RegularRelation> domain_;
  std::vector<FormulaPtr> negations_;
};

}  // namespace

RegularRelation compile(const AutomaticStructure& s, const Formula& f, const VariableOrder& order) {
  const auto free = free_variables(f);
  std::set<std::string> listed;
  for (const auto& v : order) {
    if (!listed.insert(v).second) throw FormulaError("variable '" + v + "' repeated in the variable order");
  }
  for (const auto& v : free) {
    if (!listed.count(v)) throw FormulaError("free variable '" + v + "' missing from the variable order");
  }
  for (const auto& v : listed) {
    if (!free.count(v)) throw FormulaError("variable '" + v + "' is not free in the formula");
  }
  check_formula(f, s);
  Compiler compiler(s);
  const Compiled c = compiler.node(f);
  std::vector<std::size_t> target;
  for (const auto& v : c.vars) target.push_back(static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin()));
  bool identity = true;
  for (std::size_t i = 0; i < target.size(); ++i) identity = identity && target[i] == i;
  if (identity) return *c.rel;
  return permute(*c.rel, target);
}

bool decide(const AutomaticStructure& s, const Formula& sentence) {
  const auto free = free_variables(sentence);
  if (!free.empty()) throw FormulaError("sentence has free variable '" + *free.begin() + "'");
  const auto used = all_variables(sentence);
  std::string z = "z";
  while (used.count(z)) z += "'";
  auto f = conj(std::make_shared<const Formula>(sentence), var_equal(z, z));
  return !compile(s, *f, {z}).empty();
}

AutomaticStructure define_relation(const AutomaticStructure& s, const std::string& name, const Formula& f,
                                   const VariableOrder& order) {
  if (s.has_relation(name)) throw FormulaError("relation '" + name + "' already defined");
  return s.with_relation(name, compile(s, f, order), false);
}

}  // namespace cgauto
