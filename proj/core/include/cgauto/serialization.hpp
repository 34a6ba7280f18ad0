#pragma once

#include <string>
#include <string_view>

#include "cgauto/automaton.hpp"
#include "cgauto/groups.hpp"
#include "cgauto/relation.hpp"
#include "cgauto/structure.hpp"

namespace cgauto {

/// Automaton text:
///
///     nfa <symbols> <state count>
///     initial: i1 i2 ...
///     accepting: f1 f2 ...
///     q symbol q'
///
/// A single-track alphabet lists its symbol names; any other alphabet is
/// written as its signature ("[0,1][a,b]"). An Nfa is written with its own
/// state numbers, so parsing gives back the same automaton.
std::string to_text(const Nfa& a);
/// Canonical form of a Dfa: states that cannot reach acceptance are dropped
/// and the rest are numbered in breadth-first order from the initial state,
/// edges taken by increasing symbol. Equal minimal automata give equal text.
std::string to_text(const Dfa& d);
Nfa parse_automaton(std::string_view text);

/// "relation <arity> over <base signature>" followed by the canonical text of
/// the relation's automaton.
std::string to_text(const RegularRelation& r);
RegularRelation parse_relation(std::string_view text);

/// Graphviz digraph; accepting states are double circles and parallel edges
/// are merged into one comma separated label.
std::string to_dot(const Nfa& a);
/// Canonical numbering as in to_text(const Dfa&).
std::string to_dot(const Dfa& d);

/// JSON document with fields alphabet (signature), domain (automaton text),
/// identity (word), generators (name -> relation text, or an object with
/// "right" and "left" relation texts) and meta.
std::string save_presentation(const GraphAutomaticPresentation& p);
/// Throws ParseError on malformed documents.
GraphAutomaticPresentation load_presentation(std::string_view json);

/// JSON document with fields structure (name), alphabet, domain and
/// relations (name -> relation text).
std::string save_structure(const AutomaticStructure& s);
/// Also accepts a presentation document, read as its structure().
AutomaticStructure load_structure(std::string_view json);

}  // namespace cgauto
