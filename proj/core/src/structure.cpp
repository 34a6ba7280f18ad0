#include "cgauto/structure.hpp"

#include "cgauto/error.hpp"

namespace cgauto {

AutomaticStructure::AutomaticStructure(std::string name, const Dfa& domain)
    : name_(std::move(name)),
      domain_(std::make_shared<const RegularRelation>(domain.alphabet(), 1, domain)),
      equality_(std::make_shared<const RegularRelation>(equality_relation(domain_->nfa()))) {}

AutomaticStructure::AutomaticStructure(std::string name, const Nfa& domain)
    : AutomaticStructure(std::move(name), determinize(domain)) {}

const RegularRelation& AutomaticStructure::equality() const {
  if (!equality_) throw InvalidArgument("structure has no domain");
  return *equality_;
}

const RegularRelation& AutomaticStructure::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw FormulaError("unknown relation '" + name + "'");
  return *it->second;
}

std::vector<std::string> AutomaticStructure::relation_names() const {
  std::vector<std::string> out;
  for (const auto& [n, r] : relations_) out.push_back(n);
  return out;
}

AutomaticStructure AutomaticStructure::with_relation(const std::string& name, RegularRelation r,
                                                     bool validate) const {
  if (name.empty()) throw FormulaError("relation name must not be empty");
  if (has_relation(name)) throw FormulaError("relation '" + name + "' already defined");
  require_same_alphabet(base(), r.base(), "structure relation");
  if (validate && r.arity() > 0) {
    if (!rel_subset(r, full_relation(domain_nfa(), r.arity()))) {
      throw FormulaError("relation '" + name + "' has tuples outside the domain");
    }
  }
  AutomaticStructure s = *this;
  s.relations_[name] = std::make_shared<const RegularRelation>(std::move(r));
  return s;
}

}  // namespace cgauto
