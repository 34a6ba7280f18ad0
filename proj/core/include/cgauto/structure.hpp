#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cgauto/relation.hpp"

namespace cgauto {

/// A domain language plus named regular relations over it. Copies share the
/// relation storage; adding a relation returns a new structure.
class AutomaticStructure {
 public:
  AutomaticStructure() = default;
  AutomaticStructure(std::string name, const Dfa& domain);
  AutomaticStructure(std::string name, const Nfa& domain);

  const std::string& name() const noexcept { return name_; }
  const Alphabet& base() const noexcept { return domain_->dfa().alphabet(); }
  const Dfa& domain() const noexcept { return domain_->dfa(); }
  const Nfa& domain_nfa() const { return domain_->nfa(); }
  /// The domain as a unary relation.
  const RegularRelation& domain_relation() const noexcept { return *domain_; }
  /// {(w,w) : w in the domain}, built once.
  const RegularRelation& equality() const;
  bool domain_empty() const { return domain_->empty(); }

  bool has_relation(const std::string& name) const { return relations_.count(name) != 0; }
  const RegularRelation& relation(const std::string& name) const;
  std::vector<std::string> relation_names() const;

  /// Adds `r` under `name`. With `validate`, checks that every tuple lies in
  /// domain^n. Throws FormulaError on a name collision or a tuple outside the domain.
  AutomaticStructure with_relation(const std::string& name, RegularRelation r, bool validate = true) const;

 private:
  std::string name_;
  std::shared_ptr<const RegularRelation> domain_;
  std::shared_ptr<const RegularRelation> equality_;
  std::map<std::string, std::shared_ptr<const RegularRelation>> relations_;
};

}  // namespace cgauto
