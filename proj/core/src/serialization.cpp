#include "cgauto/serialization.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <sstream>

#include "cgauto/error.hpp"
#include "cgauto/fa.hpp"

namespace cgauto {

namespace {

using Json = nlohmann::ordered_json;

constexpr Symbol kExpansionLimit = 1u << 20;

std::string alphabet_header(const Alphabet& a) {
  if (a.track_count() != 1) return a.signature();
  std::string out;
  for (std::size_t i = 0; i < a.leaf(0).size(); ++i) {
    if (i) out += ' ';
    out += a.leaf(0).name(i);
  }
  return out;
}

struct Numbered {
  std::size_t states = 0;
  bool has_initial = false;
  std::vector<bool> accepting;
  // (from, symbol, to), sorted
  std::vector<std::tuple<State, Symbol, State>> edges;
};

// Live part of d renumbered breadth first.
Numbered canonical(const Dfa& d) {
  const std::size_t n = d.state_count();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q) {
    for (const auto& e : d.edges(q)) rev[e.target].push_back(q);
    rev[d.fallback(q)].push_back(q);
  }
  std::vector<bool> live(n, false);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q) {
    if (d.is_accepting(q)) {
      live[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State p : rev[q]) {
      if (!live[p]) {
        live[p] = true;
        stack.push_back(p);
      }
    }
  }

  Numbered out;
  if (n == 0 || !live[d.initial()]) return out;
  constexpr State kNone = std::numeric_limits<State>::max();
  std::vector<State> number(n, kNone);
  std::vector<State> order{d.initial()};
  number[d.initial()] = 0;
  auto visit = [&](State q) {
    if (number[q] == kNone) {
      number[q] = static_cast<State>(order.size());
      order.push_back(q);
    }
    return number[q];
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State q = order[i];
    const auto explicit_edges = d.edges(q);
    std::vector<std::pair<Symbol, State>> moves;
    for (const auto& e : explicit_edges) {
      if (live[e.target]) moves.emplace_back(e.symbol, e.target);
    }
    if (live[d.fallback(q)] && explicit_edges.size() < d.alphabet().size()) {
      if (d.alphabet().size() > kExpansionLimit) {
        throw StateLimitExceeded("automaton text: alphabet too large to list default moves");
      }
      std::vector<bool> listed(d.alphabet().size(), false);
      for (const auto& e : explicit_edges) listed[e.symbol] = true;
      for (Symbol s = 0; s < d.alphabet().size(); ++s) {
        if (!listed[s]) moves.emplace_back(s, d.fallback(q));
      }
    }
    std::sort(moves.begin(), moves.end());
    for (const auto& [s, t] : moves) out.edges.emplace_back(static_cast<State>(i), s, visit(t));
  }
  out.states = order.size();
  out.has_initial = true;
  out.accepting.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out.accepting[i] = d.is_accepting(order[i]);
  return out;
}

Numbered numbered(const Nfa& a) {
  Numbered out;
  out.states = a.state_count();
  out.accepting = a.accepting();
  for (State q = 0; q < a.state_count(); ++q) {
    for (const auto& e : a.edges(q)) out.edges.emplace_back(q, e.symbol, e.target);
  }
  return out;
}

std::string write_text(const Alphabet& alphabet, const Numbered& a, const std::vector<State>& initial) {
  std::ostringstream out;
  const std::string symbols = alphabet_header(alphabet);
  out << "nfa " << symbols << (symbols.empty() ? "" : " ") << a.states << "\ninitial:";
  for (State q : initial) out << ' ' << q;
  out << "\naccepting:";
  for (std::size_t q = 0; q < a.states; ++q) {
    if (a.accepting[q]) out << ' ' << q;
  }
  out << '\n';
  for (const auto& [p, s, q] : a.edges) out << p << ' ' << alphabet.symbol_name(s) << ' ' << q << '\n';
  return out.str();
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string write_dot(const Alphabet& alphabet, const Numbered& a, const std::vector<State>& initial) {
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t q = 0; q < a.states; ++q) {
    out << "  " << q;
    if (a.accepting[q]) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (std::size_t i = 0; i < initial.size(); ++i) {
    out << "  start" << i << " [shape=point];\n  start" << i << " -> " << initial[i] << ";\n";
  }
  std::map<std::pair<State, State>, std::string> labels;
  for (const auto& [p, s, q] : a.edges) {
    auto& label = labels[{p, q}];
    if (!label.empty()) label += ", ";
    label += alphabet.symbol_name(s);
  }
  for (const auto& [pq, label] : labels) {
    out << "  " << pq.first << " -> " << pq.second << " [label=\"" << escape_dot(label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

// Line oriented reader that tracks byte offsets for error messages.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    while (pos_ < text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      line = text_.substr(pos_, end - pos_);
      line_start_ = pos_;
      pos_ = end + 1;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
      if (!line.empty()) return true;
    }
    return false;
  }
  std::size_t line_start() const { return line_start_; }
  std::size_t offset() const { return std::min(pos_, text_.size()); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
};

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::size_t parse_number(std::string_view s, std::size_t at) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("expected a number, got '" + std::string(s) + "'", at);
  return v;
}

Nfa read_automaton(LineReader& in) {
  std::string_view line;
  if (!in.next(line)) throw ParseError("missing 'nfa' header", in.offset());
  const std::size_t header_at = in.line_start();
  auto head = tokens(line);
  if (head.size() < 2 || head[0] != "nfa") throw ParseError("expected 'nfa <symbols> <state count>'", header_at);
  const std::size_t states = parse_number(head.back(), header_at);
  Alphabet alphabet;
  if (head.size() == 3 && head[1].front() == '[') {
    alphabet = Alphabet::parse_signature(head[1]);
  } else if (head.size() > 2) {
    alphabet = Alphabet(std::vector<std::string>(head.begin() + 1, head.end() - 1));
  }

  NfaBuilder b(alphabet, states);
  auto state = [&](std::string_view tok, std::size_t at) {
    const std::size_t q = parse_number(tok, at);
    if (q >= states) throw ParseError("state " + std::string(tok) + " out of range", at);
    return static_cast<State>(q);
  };
  auto state_list = [&](const char* key) {
    if (!in.next(line)) throw ParseError(std::string("missing '") + key + "' line", in.offset());
    auto toks = tokens(line);
    if (toks.empty() || toks[0] != key) throw ParseError(std::string("expected '") + key + "'", in.line_start());
    std::vector<State> out;
    for (std::size_t i = 1; i < toks.size(); ++i) out.push_back(state(toks[i], in.line_start()));
    return out;
  };
  for (State q : state_list("initial:")) b.add_initial(q);
  for (State q : state_list("accepting:")) b.set_accepting(q);
  while (in.next(line)) {
    auto toks = tokens(line);
    if (toks.size() != 3) throw ParseError("expected 'q symbol q''", in.line_start());
    const auto s = alphabet.find_symbol(toks[1]);
    if (!s) throw ParseError("unknown symbol '" + std::string(toks[1]) + "'", in.line_start());
    b.add_edge(state(toks[0], in.line_start()), *s, state(toks[2], in.line_start()));
  }
  return b.build();
}

RegularRelation read_relation(std::string_view text) {
  LineReader in(text);
  std::string_view line;
  if (!in.next(line)) throw ParseError("missing 'relation' header", 0);
  auto head = tokens(line);
  if (head.size() != 4 || head[0] != "relation" || head[2] != "over") {
    throw ParseError("expected 'relation <arity> over <alphabet>'", in.line_start());
  }
  const std::size_t arity = parse_number(head[1], in.line_start());
  const Alphabet base = Alphabet::parse_signature(head[3]);
  const Nfa a = read_automaton(in);
  if (a.alphabet() != base.power(arity)) {
    throw ParseError("automaton alphabet does not match the relation header", in.line_start());
  }
  return RegularRelation(base, arity, a);
}

}  // namespace

std::string to_text(const Nfa& a) { return write_text(a.alphabet(), numbered(a), a.initial()); }

std::string to_text(const Dfa& d) {
  const Numbered c = canonical(d);
  return write_text(d.alphabet(), c, c.has_initial ? std::vector<State>{0} : std::vector<State>{});
}

Nfa parse_automaton(std::string_view text) {
  LineReader in(text);
  return read_automaton(in);
}

std::string to_text(const RegularRelation& r) {
  return "relation " + std::to_string(r.arity()) + " over " + r.base().signature() + "\n" + to_text(r.dfa());
}

RegularRelation parse_relation(std::string_view text) { return read_relation(text); }

std::string to_dot(const Nfa& a) { return write_dot(a.alphabet(), numbered(a), a.initial()); }

std::string to_dot(const Dfa& d) {
  const Numbered c = canonical(d);
  return write_dot(d.alphabet(), c, c.has_initial ? std::vector<State>{0} : std::vector<State>{});
}

std::string save_presentation(const GraphAutomaticPresentation& p) {
  Json doc;
  doc["alphabet"] = p.base().signature();
  doc["domain"] = to_text(p.domain());
  doc["identity"] = p.identity().to_string(" ");
  Json gens = Json::object();
  for (const auto& g : p.generators()) {
    if (g.left) {
      gens[g.name] = Json{{"right", to_text(g.right)}, {"left", to_text(*g.left)}};
    } else {
      gens[g.name] = to_text(g.right);
    }
  }
  doc["generators"] = std::move(gens);
  doc["meta"] = p.meta();
  return doc.dump(2) + "\n";
}

namespace {

Json parse_json(std::string_view json) {
  try {
    return Json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
  return obj.at(key);
}

std::string string_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string", 0);
  return v.get<std::string>();
}

Nfa read_domain(const Json& doc, const Alphabet& base) {
  const Nfa domain = parse_automaton(string_field(doc, "domain"));
  if (domain.alphabet() != base) throw ParseError("domain alphabet does not match 'alphabet'", 0);
  return domain;
}

GraphAutomaticPresentation read_presentation(const Json& doc) {
  const Alphabet base = Alphabet::parse_signature(string_field(doc, "alphabet"));
  const Nfa domain = read_domain(doc, base);
  const std::string identity_text = string_field(doc, "identity");
  const Word identity = identity_text == "λ" ? Word(base) : parse_word(base, identity_text);

  const Json& gens = field(doc, "generators");
  if (!gens.is_object()) throw ParseError("field 'generators' must be an object", 0);
  std::vector<Generator> generators;
  for (const auto& [name, value] : gens.items()) {
    Generator g;
    g.name = name;
    if (value.is_string()) {
      g.right = parse_relation(value.get<std::string>());
    } else {
      g.right = parse_relation(string_field(value, "right"));
      if (value.contains("left")) g.left = parse_relation(string_field(value, "left"));
    }
    generators.push_back(std::move(g));
  }
  std::string meta;
  if (doc.contains("meta")) meta = doc["meta"].is_string() ? doc["meta"].get<std::string>() : doc["meta"].dump();
  return GraphAutomaticPresentation(base, minimal_dfa(domain), identity, std::move(generators), std::move(meta));
}

}  // namespace

GraphAutomaticPresentation load_presentation(std::string_view json) { return read_presentation(parse_json(json)); }

std::string save_structure(const AutomaticStructure& s) {
  Json doc;
  doc["structure"] = s.name();
  doc["alphabet"] = s.base().signature();
  doc["domain"] = to_text(s.domain());
  Json rels = Json::object();
  for (const auto& name : s.relation_names()) rels[name] = to_text(s.relation(name));
  doc["relations"] = std::move(rels);
  return doc.dump(2) + "\n";
}

AutomaticStructure load_structure(std::string_view json) {
  const Json doc = parse_json(json);
  if (doc.is_object() && doc.contains("generators")) return read_presentation(doc).structure();
  const Alphabet base = Alphabet::parse_signature(string_field(doc, "alphabet"));
  AutomaticStructure s(doc.contains("structure") ? string_field(doc, "structure") : std::string(),
                       minimal_dfa(read_domain(doc, base)));
  const Json& rels = field(doc, "relations");
  if (!rels.is_object()) throw ParseError("field 'relations' must be an object", 0);
  for (const auto& [name, value] : rels.items()) {
    if (!value.is_string()) throw ParseError("relation '" + name + "' must be a string", 0);
    s = s.with_relation(name, parse_relation(value.get<std::string>()));
  }
  return s;
}

}  // namespace cgauto
