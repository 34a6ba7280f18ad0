#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <variant>

#include "cgauto/compiler.hpp"
#include "cgauto/decision.hpp"
#include "cgauto/error.hpp"
#include "cgauto/fa.hpp"
#include "cgauto/formula.hpp"
#include "cgauto/groups.hpp"
#include "cgauto/limits.hpp"
#include "cgauto/presburger.hpp"
#include "cgauto/serialization.hpp"

namespace cgauto::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised after a validation report has been printed.
class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Built = std::variant<GraphAutomaticPresentation, AutomaticStructure>;

struct Options {
  // global
  std::optional<std::uint64_t> seed;
  std::size_t max_states = 1000000;
  bool no_check = false;

  // build
  std::string builder;
  std::vector<std::string> inputs;
  std::string out_path;
  std::optional<std::int64_t> n, m, p;
  std::vector<std::int64_t> torsion;
  std::optional<std::size_t> order;
  std::string matrix, spec, table, data, region, formula, word, name;
  std::vector<std::string> actions, action_files, generators, vars;

  // commands on a presentation
  std::string file;
  std::vector<std::string> words;
  std::size_t radius = 0;
  bool list = false;
  std::size_t count = 10, length = 10;

  // fo
  std::string structure, formula_text, formula_file, compile_out;
  bool decide = false;
  std::optional<std::size_t> enumerate_count;

  // export
  std::string dot_dir, text_dir;

  // int
  std::vector<std::string> int_args;
  bool int_decode = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw UsageError("cannot write '" + path + "'");
}

GraphAutomaticPresentation load_presentation_file(const std::string& path) {
  return load_presentation(read_file(path));
}

AutomaticStructure load_structure_arg(const std::string& arg) {
  if (arg == "presburger" && !fs::exists(arg)) return presburger_structure();
  return load_structure(read_file(arg));
}

GroupWord group_word(const GraphAutomaticPresentation& p, const std::string& text) {
  GroupWord w = parse_group_word(text);
  p.require_generators(w);
  return w;
}

std::string show(const Word& w) { return w.to_string(" "); }

// "2,1;1,1"
IntMatrix parse_matrix(const std::string& text) {
  IntMatrix m;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<std::int64_t> r;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        r.push_back(std::stoll(cell, &used));
        if (cell.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::logic_error&) {
        throw UsageError("bad matrix entry '" + cell + "' in '" + text + "'");
      }
    }
    m.push_back(std::move(r));
  }
  if (m.empty()) throw UsageError("empty matrix");
  return m;
}

Json read_json_arg(const std::string& arg) {
  const std::string text = fs::exists(arg) ? read_file(arg) : arg;
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
}

template <class T>
T json_get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw UsageError(std::string("bad field '") + key + "'");
  }
}

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("expected NAME=VALUE, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

std::size_t positive(const std::optional<std::int64_t>& v, const char* flag, std::int64_t fallback) {
  const std::int64_t x = v.value_or(fallback);
  if (x < 1) throw UsageError(std::string(flag) + " must be at least 1");
  return static_cast<std::size_t>(x);
}

const GraphAutomaticPresentation& single_input(const Options& o, std::vector<GraphAutomaticPresentation>& loaded,
                                               std::size_t count) {
  if (o.inputs.size() != count) throw UsageError("expected " + std::to_string(count) + " input presentation file(s)");
  for (const auto& f : o.inputs) loaded.push_back(load_presentation_file(f));
  return loaded.front();
}

Built build(const Options& o) {
  std::vector<GraphAutomaticPresentation> in;
  const std::string& b = o.builder;
  if (b == "zn") return zn(positive(o.n, "-n", 1));
  if (b == "abelian") {
    if (!o.n && o.torsion.empty()) throw UsageError("abelian needs -n and/or --torsion");
    return fg_abelian(static_cast<std::size_t>(std::max<std::int64_t>(0, o.n.value_or(0))), o.torsion);
  }
  if (b == "heisenberg") {
    const std::size_t n = positive(o.n, "-n", 3);
    if (n < 3) throw UsageError("-n must be at least 3");
    return heisenberg(n);
  }
  if (b == "ut") {
    const std::size_t n = positive(o.n, "-n", 3);
    return o.m ? ut_m(n, positive(o.m, "-m", 1)) : ut(n);
  }
  if (b == "bs1n") {
    if (!o.p) throw UsageError("bs1n needs -p");
    return bs1n(*o.p);
  }
  if (b == "free") return free_group(positive(o.n, "-n", 2));
  if (b == "gamma-free") return gamma_free(positive(o.n, "-n", 2));
  if (b == "presburger") return presburger_structure();
  if (b == "fa-abelian") {
    return fa_abelian_multiplication(static_cast<std::size_t>(std::max<std::int64_t>(0, o.n.value_or(0))), o.torsion);
  }
  if (b == "wreath") {
    if (!o.table.empty()) {
      const Json t = read_json_arg(o.table);
      return wreath_finite_by_z(FiniteGroupTable(json_get<std::vector<std::string>>(t, "names"),
                                                 json_get<std::vector<std::vector<std::size_t>>>(t, "table"),
                                                 t.contains("identity") ? json_get<std::size_t>(t, "identity") : 0));
    }
    if (!o.order) throw UsageError("wreath needs --order or --table");
    return wreath_finite_by_z(FiniteGroupTable::cyclic(*o.order));
  }
  if (b == "nilpotent2") {
    if (o.spec.empty()) throw UsageError("nilpotent2 needs --spec");
    const Json j = read_json_arg(o.spec);
    Nilpotent2Spec s;
    s.n = json_get<std::size_t>(j, "n");
    s.split = json_get<std::size_t>(j, "split");
    s.orders = json_get<std::vector<std::int64_t>>(j, "orders");
    if (j.contains("commutators")) {
      for (const auto& c : j.at("commutators")) {
        s.commutators[{json_get<std::size_t>(c, "j"), json_get<std::size_t>(c, "i")}] =
            json_get<std::vector<std::int64_t>>(c, "value");
      }
    }
    return nilpotent2(s);
  }
  if (b == "semidirect-zn-z") {
    if (o.matrix.empty()) throw UsageError("semidirect-zn-z needs --matrix");
    return semidirect_zn_z(parse_matrix(o.matrix));
  }
  if (b == "direct-product") {
    single_input(o, in, 2);
    return direct_product(in[0], in[1]);
  }
  if (b == "free-product") {
    single_input(o, in, 2);
    return free_product(in[0], in[1]);
  }
  if (b == "semidirect") {
    single_input(o, in, 2);
    std::map<std::string, RegularRelation> action;
    for (const auto& a : o.actions) {
      const auto [name, text] = split_assignment(a);
      const IntMatrix m = parse_matrix(text);
      action.emplace(name, CoordinateSpace::integers(m.size()).affine_map(m, std::vector<std::int64_t>(m.size(), 0)));
    }
    for (const auto& a : o.action_files) {
      const auto [name, path] = split_assignment(a);
      action.emplace(name, parse_relation(read_file(path)));
    }
    return semidirect(in[0], in[1], action);
  }
  if (b == "finite-extension") {
    single_input(o, in, 1);
    if (o.data.empty()) throw UsageError("finite-extension needs --data");
    const Json j = read_json_arg(o.data);
    FiniteExtensionData d;
    d.base = in[0];
    d.coset_names = json_get<std::vector<std::string>>(j, "cosets");
    d.coset_product = json_get<std::vector<std::vector<std::size_t>>>(j, "coset_product");
    auto words = [&](const char* key) {
      std::vector<std::vector<GroupWord>> out;
      for (const auto& row : json_get<std::vector<std::vector<std::string>>>(j, key)) {
        out.emplace_back();
        for (const auto& w : row) out.back().push_back(parse_group_word(w));
      }
      return out;
    };
    d.correction = words("correction");
    d.conjugation = words("conjugation");
    return finite_extension(d);
  }
  if (b == "restrict") {
    const auto& p = single_input(o, in, 1);
    if (o.generators.empty()) throw UsageError("restrict needs --generators");
    Dfa subgroup;
    if (!o.region.empty()) {
      subgroup = minimal_dfa(parse_automaton(read_file(o.region)));
    } else if (!o.formula.empty()) {
      // Presburger formula over the integer coordinates of p
      const std::size_t dim = p.base().track_count();
      if (o.vars.size() != dim) throw UsageError("--vars must name all " + std::to_string(dim) + " coordinates");
      const RegularRelation r = compile(presburger_structure(), parse_formula(o.formula), o.vars);
      const CoordinateSpace space = CoordinateSpace::integers(dim);
      if (space.alphabet() != p.base()) throw UsageError("--formula needs a presentation over integer coordinates");
      subgroup = space.region(r);
    } else {
      throw UsageError("restrict needs --region or --formula");
    }
    return restrict_to_regular_subgroup(p, subgroup, o.generators);
  }
  if (b == "extend-gen") {
    const auto& p = single_input(o, in, 1);
    if (o.name.empty() || o.word.empty()) throw UsageError("extend-gen needs --name and --word");
    return extend_generator(p, o.name, parse_group_word(o.word));
  }
  throw UsageError("unknown builder '" + b + "'");
}

int cmd_build(const Options& o, std::ostream& out, std::ostream& err) {
  const Built built = build(o);
  if (const auto* s = std::get_if<AutomaticStructure>(&built)) {
    write_output(o.out_path, save_structure(*s), out);
    return kTrue;
  }
  const auto& p = std::get<GraphAutomaticPresentation>(built);
  if (!o.no_check) {
    const PresentationReport report = check_presentation(p);
    if (!report.ok()) {
      err << report.to_text();
      throw ValidationFailure("presentation check failed");
    }
  }
  write_output(o.out_path, save_presentation(p), out);
  if (!o.out_path.empty() && o.out_path != "-") {
    out << "wrote " << o.out_path << " (" << p.generators().size() << " generators)\n";
  }
  return kTrue;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto p = load_presentation_file(o.file);
  out << show(canonical_rep(p, group_word(p, o.words.at(0)))) << "\n";
  return kTrue;
}

int cmd_equal(const Options& o, std::ostream& out) {
  const auto p = load_presentation_file(o.file);
  const bool eq = words_equal(p, group_word(p, o.words.at(0)), group_word(p, o.words.at(1)));
  out << (eq ? "equal" : "not equal") << "\n";
  return eq ? kTrue : kFalse;
}

int cmd_relator(const Options& o, std::ostream& out) {
  const auto p = load_presentation_file(o.file);
  const bool holds = relator_holds(p, group_word(p, o.words.at(0)));
  out << (holds ? "relator holds" : "relator fails") << "\n";
  return holds ? kTrue : kFalse;
}

int cmd_ball(const Options& o, std::ostream& out) {
  const auto p = load_presentation_file(o.file);
  const auto sh = spheres(p, o.radius);
  std::size_t total = 0;
  for (std::size_t r = 0; r < sh.size(); ++r) {
    total += sh[r].size();
    out << "radius " << r << ": " << total << "\n";
  }
  if (o.list) {
    for (std::size_t r = 0; r < sh.size(); ++r) {
      for (const auto& w : sh[r]) out << r << "\t" << show(w) << "\n";
    }
  }
  return kTrue;
}

int cmd_conj(const Options& o, std::ostream& out) {
  const auto p = load_presentation_file(o.file);
  const ConjugacyResult r = conjugate(p, group_word(p, o.words.at(0)), group_word(p, o.words.at(1)));
  if (r.conjugate) {
    out << "conjugate";
    if (r.witness) out << "\nwitness: " << show(*r.witness);
    out << "\n";
    return kTrue;
  }
  out << "not conjugate\n";
  return kFalse;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto p = load_presentation_file(o.file);
  const PresentationReport report = check_presentation(p);
  out << report.to_text();
  return report.ok() ? kTrue : kValidation;
}

int cmd_random(const Options& o, std::ostream& out) {
  const auto p = load_presentation_file(o.file);
  std::mt19937_64 rng(o.seed.value_or(1));
  std::uniform_int_distribution<std::size_t> len(0, o.length), gen(0, p.generators().size() - 1);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < o.count; ++i) {
    GroupWord w;
    const std::size_t n = len(rng);
    for (std::size_t k = 0; k < n; ++k) w.push_back({p.generators()[gen(rng)].name, coin(rng) ? 1 : -1});
    out << to_string(w) << "\t" << show(canonical_rep(p, w)) << "\n";
  }
  return kTrue;
}

int cmd_fo(const Options& o, std::ostream& out) {
  const AutomaticStructure s = load_structure_arg(o.structure);
  std::string text = o.formula_text;
  if (!o.formula_file.empty()) text = read_file(o.formula_file);
  if (text.empty()) throw UsageError("fo needs a formula");
  const FormulaPtr f = parse_formula(text, s);
  const auto free = free_variables(*f);
  if (o.decide) {
    if (!free.empty()) throw UsageError("--decide needs a sentence; free variable '" + *free.begin() + "'");
    const bool truth = cgauto::decide(s, f);
    out << (truth ? "true" : "false") << "\n";
    return truth ? kTrue : kFalse;
  }
  VariableOrder order = o.vars;
  if (order.empty()) order.assign(free.begin(), free.end());
  const RegularRelation r = compile(s, f, order);
  if (!o.compile_out.empty()) write_output(o.compile_out, to_text(r), out);
  if (o.enumerate_count) {
    const auto words = enumerate(r.nfa(), EnumerateLimit{std::nullopt, *o.enumerate_count});
    for (const auto& w : words) {
      const auto tuple = deconvolve(w, r.base(), r.arity());
      for (std::size_t i = 0; i < tuple.size(); ++i) out << (i ? "\t" : "") << show(tuple[i]);
      out << "\n";
    }
  }
  if (o.compile_out.empty() && !o.enumerate_count) {
    out << "relation over (";
    for (std::size_t i = 0; i < order.size(); ++i) out << (i ? ", " : "") << order[i];
    out << "): " << r.state_count() << " states, " << (r.empty() ? "empty" : "non-empty") << "\n";
  }
  return kTrue;
}

int cmd_export(const Options& o, std::ostream& out) {
  const AutomaticStructure s = load_structure_arg(o.file);
  std::optional<GraphAutomaticPresentation> p;
  if (o.file != "presburger" || fs::exists(o.file)) {
    const Json doc = Json::parse(read_file(o.file), nullptr, false);
    if (doc.is_object() && doc.contains("generators")) p = load_presentation_file(o.file);
  }
  // (file name, Dfa, relation or null)
  std::vector<std::pair<std::string, std::variant<const Dfa*, const RegularRelation*>>> items;
  items.emplace_back("domain", &s.domain());
  if (p) {
    for (const auto& g : p->generators()) {
      items.emplace_back(g.name + ".right", &g.right);
      if (g.left) items.emplace_back(g.name + ".left", &*g.left);
    }
  } else {
    for (const auto& name : s.relation_names()) items.emplace_back(name, &s.relation(name));
  }
  auto dfa_of = [](const auto& v) -> const Dfa& {
    return std::holds_alternative<const Dfa*>(v) ? *std::get<const Dfa*>(v) : std::get<const RegularRelation*>(v)->dfa();
  };
  if (o.dot_dir.empty() && o.text_dir.empty()) throw UsageError("export needs --dot DIR and/or --text DIR");
  for (const auto& dir : {o.dot_dir, o.text_dir}) {
    if (dir.empty()) continue;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create '" + dir + "'");
  }
  for (const auto& [name, v] : items) {
    if (!o.dot_dir.empty()) {
      const std::string path = (fs::path(o.dot_dir) / (name + ".dot")).string();
      write_output(path, to_dot(dfa_of(v)), out);
      out << path << "\n";
    }
    if (!o.text_dir.empty()) {
      const bool rel = std::holds_alternative<const RegularRelation*>(v);
      const std::string path = (fs::path(o.text_dir) / (name + (rel ? ".rel" : ".nfa"))).string();
      write_output(path, rel ? to_text(*std::get<const RegularRelation*>(v)) : to_text(dfa_of(v)), out);
      out << path << "\n";
    }
  }
  return kTrue;
}

int cmd_int(const Options& o, std::ostream& out) {
  bool decode = o.int_decode;
  std::string value = o.int_args.back();
  if (o.int_args.size() == 2) {
    const std::string& mode = o.int_args.front();
    if (mode != "encode" && mode != "decode") throw UsageError("expected 'encode' or 'decode', got '" + mode + "'");
    decode = decode || mode == "decode";
  }
  if (decode) {
    out << decode_int(parse_word(binary_alphabet(), value)) << "\n";
    return kTrue;
  }
  std::int64_t x = 0;
  try {
    std::size_t used = 0;
    x = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::logic_error&) {
    throw UsageError("not an integer: '" + value + "'");
  }
  out << encode_int(x).to_string("") << "\n";
  return kTrue;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Graph automatic groups and automatic structures"};
  app.name("cgauto");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", o.seed, "Seed for randomized commands");
  app.add_option("--max-states", o.max_states, "Abort when an automaton exceeds this many states");
  app.add_flag("--no-check", o.no_check, "Skip check_presentation after build");

  auto* build_cmd = app.add_subcommand("build", "Build a presentation or structure file");
  build_cmd->add_option("builder", o.builder,
                        "zn, abelian, heisenberg, ut, bs1n, free, gamma-free, wreath, nilpotent2, semidirect-zn-z, "
                        "direct-product, free-product, semidirect, finite-extension, restrict, extend-gen, "
                        "fa-abelian, presburger")
      ->required();
  build_cmd->add_option("inputs", o.inputs, "Input presentation files for combinators");
  build_cmd->add_option("-o,--out", o.out_path, "Output file (default stdout)");
  build_cmd->add_option("-n", o.n, "Rank, dimension or matrix size");
  build_cmd->add_option("-m", o.m, "Step for ut");
  build_cmd->add_option("-p", o.p, "Parameter of bs1n");
  build_cmd->add_option("--torsion", o.torsion, "Orders of cyclic factors")->delimiter(',');
  build_cmd->add_option("--order", o.order, "Order of the cyclic lamp group (wreath)");
  build_cmd->add_option("--table", o.table, "Finite group table JSON (wreath)");
  build_cmd->add_option("--matrix", o.matrix, "Integer matrix, rows separated by ';' (semidirect-zn-z)");
  build_cmd->add_option("--spec", o.spec, "Nilpotent2 specification JSON (nilpotent2)");
  build_cmd->add_option("--action", o.actions, "NAME=MATRIX action on integer coordinates (semidirect)");
  build_cmd->add_option("--action-file", o.action_files, "NAME=FILE action relation text (semidirect)");
  build_cmd->add_option("--data", o.data, "Coset data JSON (finite-extension)");
  build_cmd->add_option("--region", o.region, "Subgroup domain automaton text (restrict)");
  build_cmd->add_option("--formula", o.formula, "Presburger formula over the coordinates (restrict)");
  build_cmd->add_option("--vars", o.vars, "Coordinate variables for --formula")->delimiter(',');
  build_cmd->add_option("--generators", o.generators, "Generators of the subgroup (restrict)")->delimiter(',');
  build_cmd->add_option("--name", o.name, "New generator name (extend-gen)");
  build_cmd->add_option("--word", o.word, "Word of the new generator (extend-gen)");

  auto with_file = [&](CLI::App* cmd, std::size_t word_count) {
    cmd->add_option("presentation", o.file, "Presentation file")->required();
    if (word_count > 0) cmd->add_option("words", o.words, "Group words")->required()->expected(static_cast<int>(word_count));
    return cmd;
  };
  auto* eval_cmd = with_file(app.add_subcommand("eval", "Print the representative of a word"), 1);
  auto* equal_cmd = with_file(app.add_subcommand("equal", "Exit 0 iff two words are equal"), 2);
  auto* relator_cmd = with_file(app.add_subcommand("relator", "Exit 0 iff a word is trivial"), 1);
  auto* ball_cmd = with_file(app.add_subcommand("ball", "Ball sizes around the identity"), 0);
  ball_cmd->add_option("-r,--radius", o.radius, "Radius")->required();
  ball_cmd->add_flag("--list", o.list, "Print the elements with their distance");
  auto* conj_cmd = with_file(app.add_subcommand("conj", "Exit 0 iff two words are conjugate"), 2);
  auto* check_cmd = with_file(app.add_subcommand("check", "Verify the presentation"), 0);
  auto* random_cmd = with_file(app.add_subcommand("random", "Random words with their representatives"), 0);
  random_cmd->add_option("-c,--count", o.count, "Number of words");
  random_cmd->add_option("-l,--length", o.length, "Maximum word length");

  auto* fo_cmd = app.add_subcommand("fo", "Decide or compile a first-order formula");
  fo_cmd->add_option("structure", o.structure, "Structure or presentation file, or 'presburger'")->required();
  fo_cmd->add_option("formula", o.formula_text, "Formula text");
  fo_cmd->add_option("-f,--formula-file", o.formula_file, "Read the formula from a file");
  auto* decide_flag = fo_cmd->add_flag("--decide", o.decide, "Decide a sentence");
  fo_cmd->add_option("--compile", o.compile_out, "Write the relation text to a file ('-' for stdout)")
      ->excludes(decide_flag);
  fo_cmd->add_option("--vars", o.vars, "Component order of the free variables")->delimiter(',');
  fo_cmd->add_option("--enumerate", o.enumerate_count, "Print the first N tuples in llex order")
      ->excludes(decide_flag);

  auto* export_cmd = app.add_subcommand("export", "Write the automata of a file");
  export_cmd->add_option("file", o.file, "Presentation or structure file")->required();
  export_cmd->add_option("--dot", o.dot_dir, "Directory for DOT files");
  export_cmd->add_option("--text", o.text_dir, "Directory for automaton and relation text files");

  auto* int_cmd = app.add_subcommand("int", "Integer encoding");
  int_cmd->add_option("args", o.int_args, "[encode|decode] VALUE")->required()->expected(1, 2);
  int_cmd->add_flag("--decode", o.int_decode, "Decode a digit word");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kTrue : kUsage;
  }

  set_max_states(o.max_states);
  try {
    if (*build_cmd) return cmd_build(o, out, err);
    if (*eval_cmd) return cmd_eval(o, out);
    if (*equal_cmd) return cmd_equal(o, out);
    if (*relator_cmd) return cmd_relator(o, out);
    if (*ball_cmd) return cmd_ball(o, out);
    if (*conj_cmd) return cmd_conj(o, out);
    if (*check_cmd) return cmd_check(o, out);
    if (*random_cmd) return cmd_random(o, out);
    if (*fo_cmd) return cmd_fo(o, out);
    if (*export_cmd) return cmd_export(o, out);
    if (*int_cmd) return cmd_int(o, out);
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormulaError& e) {
    err << "formula error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const EncodingError& e) {
    err << "encoding error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArityError& e) {
    err << "arity error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}

}  // namespace cgauto::cli
