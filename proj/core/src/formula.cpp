#include "cgauto/formula.hpp"

#include <cctype>

#include "cgauto/error.hpp"
#include "cgauto/structure.hpp"

namespace cgauto {

namespace {

FormulaPtr make(FormulaKind kind, std::string name, std::vector<std::string> vars,
                std::vector<FormulaPtr> children) {
  for (const auto& c : children) {
    if (!c) throw FormulaError("null subformula");
  }
  return std::make_shared<const Formula>(Formula{kind, std::move(name), std::move(vars), std::move(children)});
}

}  // namespace

FormulaPtr atom(std::string relation, std::vector<std::string> vars) {
  return make(FormulaKind::Atom, std::move(relation), std::move(vars), {});
}
FormulaPtr var_equal(std::string x, std::string y) {
  return make(FormulaKind::VarEqual, "", {std::move(x), std::move(y)}, {});
}
FormulaPtr negate(FormulaPtr f) { return make(FormulaKind::Not, "", {}, {std::move(f)}); }
FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return make(FormulaKind::And, "", {}, {std::move(a), std::move(b)}); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return make(FormulaKind::Or, "", {}, {std::move(a), std::move(b)}); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return make(FormulaKind::Implies, "", {}, {std::move(a), std::move(b)});
}
FormulaPtr exists(std::string x, FormulaPtr body) {
  return make(FormulaKind::Exists, std::move(x), {}, {std::move(body)});
}
FormulaPtr forall(std::string x, FormulaPtr body) {
  return make(FormulaKind::Forall, std::move(x), {}, {std::move(body)});
}

std::set<std::string> free_variables(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Atom:
    case FormulaKind::VarEqual:
      return {f.vars.begin(), f.vars.end()};
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      auto v = free_variables(*f.children[0]);
      v.erase(f.name);
      return v;
    }
    default: {
      std::set<std::string> v;
      for (const auto& c : f.children) {
        auto cv = free_variables(*c);
        v.insert(cv.begin(), cv.end());
      }
      return v;
    }
  }
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> v(f.vars.begin(), f.vars.end());
  if (f.kind == FormulaKind::Exists || f.kind == FormulaKind::Forall) v.insert(f.name);
  for (const auto& c : f.children) {
    auto cv = all_variables(*c);
    v.insert(cv.begin(), cv.end());
  }
  return v;
}

bool same_formula(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.name != b.name || a.vars != b.vars || a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_formula(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

namespace {

// precedence: 0 implies, 1 or, 2 and, 3 unary
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Implies: return 0;
    case FormulaKind::Or: return 1;
    case FormulaKind::And: return 2;
    default: return 3;
  }
}

std::string print(const Formula& f, int context) {
  std::string out;
  switch (f.kind) {
    case FormulaKind::Atom: {
      out = f.name + "(";
      for (std::size_t i = 0; i < f.vars.size(); ++i) out += (i ? "," : "") + f.vars[i];
      out += ")";
      break;
    }
    case FormulaKind::VarEqual:
      out = f.vars[0] + " = " + f.vars[1];
      break;
    case FormulaKind::Not:
      out = "!" + print(*f.children[0], 3);
      break;
    case FormulaKind::And:
      out = print(*f.children[0], 2) + " & " + print(*f.children[1], 3);
      break;
    case FormulaKind::Or:
      out = print(*f.children[0], 1) + " | " + print(*f.children[1], 2);
      break;
    case FormulaKind::Implies:
      out = print(*f.children[0], 1) + " -> " + print(*f.children[1], 0);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out = std::string(f.kind == FormulaKind::Exists ? "E " : "A ") + f.name + " (" + print(*f.children[0], 0) + ")";
      break;
  }
  if (precedence(f.kind) < context) return "(" + out + ")";
  return out;
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaPtr parse() {
    auto f = parse_implies();
    skip();
    if (pos_ < text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return f;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) throw ParseError("expected '" + std::string(tok) + "'", pos_);
  }

  bool at_ident() {
    skip();
    return pos_ < text_.size() && ident_char(text_[pos_]);
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) throw ParseError("expected an identifier", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  FormulaPtr parse_implies() {
    auto lhs = parse_or();
    if (eat("->")) return implies(lhs, parse_implies());
    return lhs;
  }

  FormulaPtr parse_or() {
    auto f = parse_and();
    while (eat("|")) f = disj(f, parse_and());
    return f;
  }

  FormulaPtr parse_and() {
    auto f = parse_unary();
    while (eat("&")) f = conj(f, parse_unary());
    return f;
  }

  FormulaPtr parse_unary() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of formula", pos_);
    if (text_[pos_] == '!' && text_.substr(pos_, 2) != "!=") {
      ++pos_;
      return negate(parse_unary());
    }
    if (eat("(")) {
      auto f = parse_implies();
      expect(")");
      return f;
    }
    const std::size_t start = pos_;
    std::string name = ident();
    if (name == "E" || name == "A") {
      // a quantifier when an identifier follows; otherwise a relation or variable called E/A
      const std::size_t after = pos_;
      if (at_ident()) {
        std::string var = ident();
        auto body = parse_unary();
        return name == "E" ? exists(var, body) : forall(var, body);
      }
      pos_ = after;
    }
    if (eat("(")) {
      std::vector<std::string> args;
      if (!eat(")")) {
        do {
          args.push_back(ident());
        } while (eat(","));
        expect(")");
      }
      return atom(name, args);
    }
    if (eat("!=")) return negate(var_equal(name, ident()));
    if (eat("=")) return var_equal(name, ident());
    throw ParseError("expected '(' or '=' after '" + name + "'", start + name.size());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Formula& f) { return print(f, 0); }

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

void check_formula(const Formula& f, const AutomaticStructure& s) {
  if (f.kind == FormulaKind::Atom) {
    if (!s.has_relation(f.name)) throw FormulaError("unknown relation '" + f.name + "'");
    const std::size_t arity = s.relation(f.name).arity();
    if (arity != f.vars.size()) {
      throw FormulaError("relation '" + f.name + "' has arity " + std::to_string(arity) + ", used with " +
                         std::to_string(f.vars.size()) + " arguments");
    }
  }
  for (const auto& c : f.children) check_formula(*c, s);
}

FormulaPtr parse_formula(std::string_view text, const AutomaticStructure& s) {
  auto f = parse_formula(text);
  check_formula(*f, s);
  return f;
}

}  // namespace cgauto
