// Runs the acceptance criteria and prints one PASS/FAIL line for each.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "catalogue.hpp"
#include "cgauto/compiler.hpp"
#include "cgauto/decision.hpp"
#include "cgauto/fa.hpp"
#include "cgauto/formula.hpp"
#include "cgauto/groups.hpp"
#include "cgauto/presburger.hpp"
#include "cli.hpp"
#include "fo_oracle.hpp"
#include "group_oracles.hpp"

using namespace cgauto;
using namespace testing_support;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

GroupWord gw(const std::string& text) { return parse_group_word(text); }

int cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

std::vector<Matrix> heisenberg_generators() {
  return {Matrix::elementary(3, 0, 1, 1), Matrix::elementary(3, 0, 2, 1), Matrix::elementary(3, 1, 2, 1)};
}

Matrix inverse_unitriangular3(const Matrix& m) {
  Matrix out = Matrix::identity(3);
  out.a[1] = -m.at(0, 1);
  out.a[5] = -m.at(1, 2);
  out.a[2] = m.at(0, 1) * m.at(1, 2) - m.at(0, 2);
  return out;
}

Matrix heisenberg_eval(const GroupWord& w) {
  const auto gens = heisenberg_generators();
  Matrix m = Matrix::identity(3);
  for (const auto& l : w) {
    const Matrix& g = gens[l.generator == "A" ? 0 : l.generator == "B" ? 1 : 2];
    m = m * (l.sign > 0 ? g : inverse_unitriangular3(g));
  }
  return m;
}

Matrix heisenberg_point(const std::vector<std::int64_t>& abc) {
  Matrix m = Matrix::identity(3);
  m.a[1] = abc[0];
  m.a[2] = abc[1];
  m.a[5] = abc[2];
  return m;
}

Outcome heisenberg_relations() {
  const auto t0 = Clock::now();
  const fs::path dir = fs::temp_directory_path() / ("cgauto_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const std::string file = (dir / "h3.json").string();
  const int built = cli_run({"build", "heisenberg", "--out", file});
  const int rel = cli_run({"relator", file, "A C A^-1 C^-1 B^-1"});
  const int central_a = cli_run({"relator", file, "A B A^-1 B^-1"});
  const int central_c = cli_run({"relator", file, "C B C^-1 B^-1"});
  fs::remove_all(dir);

  const auto h = heisenberg();
  const auto gens = heisenberg_generators();
  const std::size_t size = compare_balls(h, 4, Matrix::identity(3), [&](const Matrix& e, std::size_t g, int sign) {
    return e * (sign > 0 ? gens[g] : inverse_unitriangular3(gens[g]));
  });
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "exit codes build " << built << ", relator " << rel << ", centrality " << central_a << "/" << central_c
    << "; radius-4 ball " << (size ? std::to_string(size) + " elements, isomorphic" : "differs") << "; " << t << " s";
  return {built == 0 && rel == 0 && central_a == 0 && central_c == 0 && size > 0 && t < 10, d.str()};
}

Outcome baumslag_solitar() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t mismatches = 0, words = 0;
  bool relators = true;
  for (std::int64_t p : {2, 3}) {
    const auto g = bs1n(p);
    GroupWord rel = gw("a^-1 b a");
    for (std::int64_t i = 0; i < p; ++i) rel.push_back({"b", -1});
    relators = relators && relator_holds(g, rel);
    const AffineOracle oracle{p};
    for (int i = 0; i < 1000; ++i) {
      const GroupWord w = random_group_word(g, 20, rng);
      AffineOracle::Element e;
      for (const auto& l : w) e = oracle.apply(e, l.generator == "a", l.sign);
      const BsElement got = bs1n_decode(p, canonical_rep(g, w));
      mismatches += !(got.n == e.n && got.m == e.num && got.k == e.k);
      ++words;
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "relators " << (relators ? "hold" : "FAIL") << "; " << mismatches << " mismatches in " << words
    << " random words; " << t << " s";
  return {relators && mismatches == 0 && t < 30, d.str()};
}

Outcome fo_soundness() {
  std::mt19937_64 rng(7);
  std::size_t formulas = 0, mismatches = 0;
  for (int round = 0; round < 10; ++round) {
    const FiniteModel m = random_model(rng);
    for (int i = 0; i < 50; ++i) {
      const auto f = random_formula(rng, m, 3);
      mismatches += soundness_mismatches(m, *f);
      ++formulas;
    }
  }
  std::ostringstream d;
  d << formulas << " formulas, " << mismatches << " mismatching assignments";
  return {formulas >= 500 && mismatches == 0, d.str()};
}

Outcome gamma_free_formulas() {
  const AutomaticStructure s = gamma_free(2);
  const RegularRelation less = compile(
      s, parse_formula("E z (Prefix(z,v) & z != v & EqLen(z,u))"), VariableOrder{"u", "v"});
  const auto reduced = enumerate(s.domain_nfa(), EnumerateLimit{4, std::nullopt});
  std::size_t wrong_less = 0;
  for (const auto& u : reduced) {
    for (const auto& v : reduced) {
      wrong_less += less.contains(std::vector<Word>{u, v}) != (u.size() < v.size());
    }
  }

  const RegularRelation positive = compile(
      s,
      parse_formula("A u A v ((Prefix(u,w) & (E_a(u,v) | E_b(u,v))) -> E z (Prefix(z,v) & z != v & EqLen(z,u)))"),
      VariableOrder{"w"});
  std::set<std::vector<Symbol>> got;
  for (const auto& w : enumerate(positive.nfa(), EnumerateLimit{6, std::nullopt})) got.insert(w.symbols);
  std::set<std::vector<Symbol>> expected;
  const Symbol a = *s.base().find_symbol("a"), b = *s.base().find_symbol("b");
  for (const auto& w : enumerate(s.domain_nfa(), EnumerateLimit{6, std::nullopt})) {
    if (std::all_of(w.symbols.begin(), w.symbols.end(), [&](Symbol x) { return x == a || x == b; })) {
      expected.insert(w.symbols);
    }
  }
  std::ostringstream d;
  d << "length order: " << wrong_less << " wrong pairs of " << reduced.size() * reduced.size()
    << "; positive words: " << got.size() << " accepted, " << expected.size() << " expected up to length 6";
  return {wrong_less == 0 && got == expected, d.str()};
}

Outcome word_problem_time() {
  const auto h = heisenberg();
  std::mt19937_64 rng(99);
  std::vector<double> medians;
  double worst = 0;
  for (std::size_t len : {100, 200, 400}) {
    std::vector<double> times;
    for (int i = 0; i < 15; ++i) {
      GroupWord w;
      std::uniform_int_distribution<std::size_t> gen(0, 2);
      std::bernoulli_distribution coin(0.5);
      for (std::size_t k = 0; k < len; ++k) w.push_back({h.generators()[gen(rng)].name, coin(rng) ? 1 : -1});
      const auto t0 = Clock::now();
      (void)canonical_rep(h, w);
      times.push_back(seconds_since(t0));
    }
    std::sort(times.begin(), times.end());
    medians.push_back(times[times.size() / 2]);
    worst = std::max(worst, times.back());
  }
  const double r1 = medians[1] / medians[0], r2 = medians[2] / medians[1];
  std::ostringstream d;
  d << "medians " << medians[0] * 1e3 << " / " << medians[1] * 1e3 << " / " << medians[2] * 1e3
    << " ms; ratios " << r1 << ", " << r2 << "; slowest word " << worst * 1e3 << " ms";
  return {r1 <= 5 && r2 <= 5 && worst < 1, d.str()};
}

struct GrowthRun {
  std::string name;
  GrowthReport report;
};

const std::vector<GrowthRun>& catalogue_growth() {
  static const std::vector<GrowthRun> runs = [] {
    std::vector<GrowthRun> out;
    for (const auto& entry : builder_catalogue()) out.push_back({entry.name, growth_profile(entry.build(), 6)});
    return out;
  }();
  return runs;
}

Outcome constant_growth() {
  std::size_t violations = 0, relations = 0;
  std::string first;
  for (const auto& run : catalogue_growth()) {
    violations += run.report.violations.size();
    relations += run.report.constants.size();
    if (!run.report.violations.empty() && first.empty()) first = run.name + " " + run.report.violations[0].letter;
  }
  std::ostringstream d;
  d << catalogue_growth().size() << " builders, " << relations << " edge relations, radius 6: " << violations
    << " violations" << (first.empty() ? "" : " (first: " + first + ")");
  return {violations == 0, d.str()};
}

Outcome growth_bound() {
  std::size_t over = 0;
  std::string first;
  for (const auto& run : catalogue_growth()) {
    if (!run.report.within_bound) {
      ++over;
      if (first.empty()) first = run.name;
    }
  }
  const auto free_sizes = growth_profile(free_group(2), 6).sizes;
  bool free_exact = free_sizes.size() == 7;
  std::size_t pow3 = 1;
  for (std::size_t n = 0; n < free_sizes.size(); ++n, pow3 *= 3) free_exact = free_exact && free_sizes[n] == 2 * pow3 - 1;
  std::ostringstream d;
  d << over << " builders above |Sigma|^(C n)" << (first.empty() ? "" : " (first: " + first + ")")
    << "; free_group(2) sizes";
  for (auto x : free_sizes) d << " " << x;
  return {over == 0 && free_exact, d.str()};
}

Outcome conjugacy() {
  const auto t0 = Clock::now();
  const auto h = heisenberg();
  const bool yes = conjugate(h, gw("A"), gw("A B")).conjugate;
  const bool no = !conjugate(h, gw("B"), gw("B B")).conjugate;
  const CoordinateSpace s3 = CoordinateSpace::integers(3);
  std::vector<Matrix> ball4;
  for (const auto& w : ball(h, 4)) ball4.push_back(heisenberg_point(s3.decode(w)));
  std::mt19937_64 rng(8);
  std::size_t disagree = 0, conjugate_pairs = 0;
  for (int i = 0; i < 50; ++i) {
    const GroupWord p = random_group_word(h, 3, rng);
    GroupWord q = random_group_word(h, 3, rng);
    if (i % 2 == 0) {
      const GroupWord v = random_group_word(h, 2, rng);
      q = concat(concat(inverse(v), p), v);
    }
    const Matrix P = heisenberg_eval(p), Q = heisenberg_eval(q);
    bool brute = false;
    for (const auto& U : ball4) brute = brute || U * P == Q * U;
    const ConjugacyResult r = conjugate(h, p, q);
    bool witness_ok = true;
    if (r.conjugate) {
      const Matrix U = heisenberg_point(s3.decode(*r.witness));
      witness_ok = U * P == Q * U;
    }
    disagree += brute != r.conjugate || !witness_ok;
    conjugate_pairs += brute;
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "A ~ AB " << (yes ? "yes" : "NO") << ", B ~ B^2 " << (no ? "no" : "YES") << "; 50 pairs (" << conjugate_pairs
    << " conjugate): " << disagree << " disagreements; " << t << " s";
  return {yes && no && disagree == 0 && t < 60, d.str()};
}

Outcome closure_constructions() {
  const auto z2 = zn(2);
  const std::size_t product = compare_balls(direct_product(zn(1), zn(1)), 4, z2.identity().symbols,
                                            [&](const std::vector<Symbol>& e, std::size_t g, int sign) {
                                              return right_multiply(z2, Word(z2.base(), e),
                                                                    GroupWord{{z2.generators()[g].name, sign}})
                                                  .symbols;
                                            });
  auto dihedral = [](const GraphAutomaticPresentation& p, std::vector<DihedralOracle::Element> gens) {
    return compare_balls(p, 5, DihedralOracle::Element{}, [&](const DihedralOracle::Element& e, std::size_t g, int sign) {
      DihedralOracle::Element x = gens[g];
      if (sign < 0) x = {x.eps, -x.eps * x.k};
      return DihedralOracle::then(e, x);
    });
  };
  const auto c2 = fg_abelian(0, {2});
  // s: x -> -x, t: x -> 1 - x
  const std::size_t free_prod = dihedral(free_product(c2, c2), {{-1, 0}, {-1, 1}});
  FiniteExtensionData data;
  data.base = zn(1);
  data.coset_names = {"s"};
  data.coset_product = {{0, 1}, {1, 0}};
  data.correction = {{{}, {}}, {{}, {}}};
  data.conjugation = {{gw("e1")}, {gw("e1^-1")}};
  // e1: x -> x + 1, s: x -> -x
  const std::size_t extension = dihedral(finite_extension(data), {{1, 1}, {-1, 0}});
  const auto w = wreath_finite_by_z(FiniteGroupTable::cyclic(2));
  const bool square = relator_holds(w, gw("a a"));
  const bool commute = relator_holds(w, gw("a t a t^-1 a^-1 t a^-1 t^-1"));
  std::ostringstream d;
  d << "Z x Z vs Z^2 radius 4: " << product << "; Z/2 * Z/2 vs D-infinity radius 5: " << free_prod
    << "; extension vs D-infinity radius 5: " << extension << "; wreath a^2 " << (square ? "holds" : "FAILS")
    << ", [a, t a t^-1] " << (commute ? "holds" : "FAILS");
  return {product == 41 && free_prod == 11 && extension == 20 && square && commute, d.str()};
}

Outcome presburger_backend() {
  const RegularRelation add = addition_relation();
  std::size_t wrong = 0;
  std::vector<Word> enc;
  for (std::int64_t x = -64; x <= 64; ++x) enc.push_back(encode_int(x));
  for (std::int64_t x = -64; x <= 64; ++x) {
    for (std::int64_t y = -64; y <= 64; ++y) {
      const Word& u = enc[x + 64];
      const Word& v = enc[y + 64];
      for (std::int64_t z = -64; z <= 64; ++z) {
        wrong += add.contains(std::vector<Word>{u, v, enc[z + 64]}) != (x + y == z);
      }
    }
  }
  std::size_t round_trip = 0;
  for (std::int64_t x = -10000; x <= 10000; ++x) round_trip += decode_int(encode_int(x)) != x;
  const RegularRelation affine = affine_relation({{2, 1}, {1, 1}}, std::vector<std::int64_t>{0, 0});
  std::size_t affine_wrong = 0;
  for (std::int64_t x = -16; x <= 16; ++x) {
    for (std::int64_t y = -16; y <= 16; ++y) {
      // the image and none of its neighbours
      for (std::int64_t du = -1; du <= 1; ++du) {
        for (std::int64_t dv = -1; dv <= 1; ++dv) {
          const std::vector<Word> t{encode_int(x), encode_int(y), encode_int(2 * x + y + du), encode_int(x + y + dv)};
          affine_wrong += affine.contains(t) != (du == 0 && dv == 0);
        }
      }
    }
  }
  std::ostringstream d;
  d << "addition on [-64,64]^3: " << wrong << " errors; round trip |x| <= 10^4: " << round_trip
    << " errors; affine map on [-16,16]^2: " << affine_wrong << " errors";
  return {wrong == 0 && round_trip == 0 && affine_wrong == 0, d.str()};
}

}  // namespace

int main() {
  std::cout << std::unitbuf;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"heisenberg relations and ball", heisenberg_relations},
      {"baumslag-solitar relator and oracle", baumslag_solitar},
      {"first-order compiler soundness", fo_soundness},
      {"formulas over the free group structure", gamma_free_formulas},
      {"word problem timing", word_problem_time},
      {"constant growth", constant_growth},
      {"growth bound", growth_bound},
      {"conjugacy", conjugacy},
      {"closure constructions", closure_constructions},
      {"presburger backend", presburger_backend},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " [" << (o.pass ? "PASS" : "FAIL") << "] " << criteria[i].first << ": "
              << o.detail << "\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
