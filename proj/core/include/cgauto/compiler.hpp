#pragma once

#include <string>
#include <vector>

#include "cgauto/formula.hpp"
#include "cgauto/structure.hpp"

namespace cgauto {

/// Track assignment for the free variables of a formula.
using VariableOrder = std::vector<std::string>;

/// The relation defined by `f` in `s`, with component i holding variable
/// `order[i]`. Quantifiers range over the domain. `order` must list exactly the
/// free variables of `f`, without repetition.
RegularRelation compile(const AutomaticStructure& s, const Formula& f, const VariableOrder& order);
inline RegularRelation compile(const AutomaticStructure& s, const FormulaPtr& f, const VariableOrder& order) {
  return compile(s, *f, order);
}

/// Truth of a sentence: the conjunction with `z = z` for a fresh z is compiled
/// and tested for emptiness (so an empty domain makes every sentence false).
bool decide(const AutomaticStructure& s, const Formula& sentence);
inline bool decide(const AutomaticStructure& s, const FormulaPtr& sentence) { return decide(s, *sentence); }

/// `s` extended by the compiled relation under `name`.
AutomaticStructure define_relation(const AutomaticStructure& s, const std::string& name, const Formula& f,
                                   const VariableOrder& order);
inline AutomaticStructure define_relation(const AutomaticStructure& s, const std::string& name,
                                          const FormulaPtr& f, const VariableOrder& order) {
  return define_relation(s, name, *f, order);
}

}  // namespace cgauto
