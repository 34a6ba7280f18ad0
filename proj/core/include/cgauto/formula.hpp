#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cgauto {

class AutomaticStructure;

enum class FormulaKind { Atom, VarEqual, Not, And, Or, Implies, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// First-order formula. `name` is the relation of an Atom or the bound
/// variable of a quantifier; `vars` are the arguments of Atom and VarEqual.
struct Formula {
  FormulaKind kind;
  std::string name;
  std::vector<std::string> vars;
  std::vector<FormulaPtr> children;
};

FormulaPtr atom(std::string relation, std::vector<std::string> vars);
FormulaPtr var_equal(std::string x, std::string y);
FormulaPtr negate(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(std::string x, FormulaPtr body);
FormulaPtr forall(std::string x, FormulaPtr body);

std::set<std::string> free_variables(const Formula& f);
/// Every variable name occurring in `f`, bound or free.
std::set<std::string> all_variables(const Formula& f);
bool same_formula(const Formula& a, const Formula& b);

/// Text in the grammar accepted by parse_formula, with minimal parentheses.
std::string to_string(const Formula& f);

/// Grammar: `E x φ`, `A x φ`, `φ & ψ`, `φ | ψ`, `φ -> ψ` (right associative),
/// `!φ`, `R(x,...)`, `x = y`, `x != y`, parentheses. `&` binds tighter than `|`,
/// which binds tighter than `->`; a quantifier scopes over one unary formula.
/// Throws ParseError with the byte offset of the problem.
FormulaPtr parse_formula(std::string_view text);
/// Also checks relation names and arities against `s` (FormulaError).
FormulaPtr parse_formula(std::string_view text, const AutomaticStructure& s);
void check_formula(const Formula& f, const AutomaticStructure& s);

}  // namespace cgauto
