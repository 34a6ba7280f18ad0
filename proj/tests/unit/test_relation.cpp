#include <doctest.h>

#include <functional>

#include "cgauto/error.hpp"
#include "cgauto/relation.hpp"
#include "support.hpp"

using namespace cgauto;
using namespace testing_support;

namespace {

const Alphabet ab{"a", "b"};

bool is_prefix(const Word& u, const Word& v) {
  return u.size() <= v.size() && std::equal(u.symbols.begin(), u.symbols.end(), v.symbols.begin());
}

bool lex_leq(const Word& u, const Word& v) {
  return !std::lexicographical_compare(v.symbols.begin(), v.symbols.end(), u.symbols.begin(), u.symbols.end());
}

using Pred2 = std::function<bool(const Word&, const Word&)>;

void check_binary(const RegularRelation& r, const Pred2& p, std::size_t len = 4) {
  const auto words = all_words(r.base(), len);
  for (const auto& u : words) {
    for (const auto& v : words) {
      const Word t[] = {u, v};
      CHECK_MESSAGE(r.contains(t) == p(u, v), u.to_string("") << " , " << v.to_string(""));
    }
  }
}

// {(w, w x) : w ∈ Σ*}
RegularRelation append(const Alphabet& base, Symbol x) {
  NfaBuilder b(base.power(2), 3);
  b.add_initial(0);
  b.set_accepting(2);
  for (Symbol s = 0; s < base.size(); ++s) {
    const Symbol col[] = {s, s};
    b.add_edge(0, column(base, col), 0);
  }
  const Symbol last[] = {base.size(), x};
  b.add_edge(0, column(base, last), 2);
  return RegularRelation(base, 2, b.build());
}

Word concat(Word w, Symbol x) {
  w.symbols.push_back(x);
  return w;
}

}  // namespace

TEST_SUITE("relation") {
  TEST_CASE("convolution") {
    const Word t[] = {word(ab, "a"), word(ab, "bb")};
    const Word c = convolve(t);
    CHECK(c.to_string(" ") == "(a,b) (#,b)");
    const auto back = deconvolve(c, ab, 2);
    CHECK(back[0] == t[0]);
    CHECK(back[1] == t[1]);
    const Word e[] = {Word(ab), Word(ab)};
    CHECK(convolve(e).empty());
    CHECK(deconvolve(Word(ab.power(2)), ab, 2).size() == 2);
    CHECK_THROWS_AS(deconvolve(parse_word(ab.power(2), "(a,#) (a,b)"), ab, 2), InvalidConvolution);
  }

  TEST_CASE("convolution of three words") {
    const Word t[] = {word(ab, "aabaaab"), word(ab, "bbabbabbb"), word(ab, "aab")};
    const Word c = convolve(t);
    CHECK(c.size() == 9);
    CHECK(c.to_string(" ") ==
          "(a,b,a) (a,b,a) (b,a,b) (a,b,#) (a,b,#) (a,a,#) (b,b,#) (#,b,#) (#,b,#)");
    const auto back = deconvolve(c, ab, 3);
    CHECK(back[0] == t[0]);
    CHECK(back[1] == t[1]);
    CHECK(back[2] == t[2]);
  }

  TEST_CASE("valid convolution language") {
    const Dfa v1 = valid_convolution(ab, 1);
    for (const auto& w : all_words(ab, 5)) CHECK(v1.accepts(w.symbols));
    const Dfa v2 = valid_convolution(ab, 2);
    CHECK(v2.accepts(parse_word(ab.power(2), "(a,b) (a,#)").symbols));
    CHECK_FALSE(v2.accepts(parse_word(ab.power(2), "(#,b) (a,#)").symbols));
  }

  TEST_CASE("orders against comparators") {
    check_binary(prefix_order(ab), is_prefix);
    check_binary(lex_order(ab), lex_leq);
    check_binary(llex_order(ab), [](const Word& u, const Word& v) { return !llex_less(v, u); });
    check_binary(equal_length(ab), [](const Word& u, const Word& v) { return u.size() == v.size(); });
    check_binary(equality_relation(ab), [](const Word& u, const Word& v) { return u == v; });
  }

  TEST_CASE("boolean algebra of relations") {
    const auto le = lex_order(ab);
    const auto ge = transpose(le);
    check_binary(rel_intersect(le, ge), [](const Word& u, const Word& v) { return u == v; });
    check_binary(rel_difference(prefix_order(ab), equality_relation(ab)),
                 [](const Word& u, const Word& v) { return is_prefix(u, v) && u != v; });
    check_binary(rel_complement(le), [](const Word& u, const Word& v) { return !lex_leq(u, v); });
    CHECK(rel_equal(rel_complement(rel_complement(le)), le));
    check_binary(rel_union(prefix_order(ab), transpose(prefix_order(ab))),
                 [](const Word& u, const Word& v) { return is_prefix(u, v) || is_prefix(v, u); });
    for (const auto& r : {le, ge, rel_complement(le), prefix_order(ab), llex_order(ab)}) CHECK(is_valid_relation(r));
  }

  TEST_CASE("cylindrify, permute, project") {
    const auto all2 = cylindrify(from_language(universal_nfa(ab)), 0);
    check_binary(all2, [](const Word&, const Word&) { return true; });
    const auto eq = equality_relation(ab);
    const auto c = cylindrify(eq, 2);
    const Word t[] = {word(ab, "a"), word(ab, "a"), word(ab, "bbbb")};
    CHECK(c.contains(t));
    CHECK(rel_equal(project(c, 2), eq));
    CHECK(rel_equal(project(cylindrify(prefix_order(ab), 1), 1), prefix_order(ab)));
    CHECK(rel_equal(permute(eq, std::vector<std::size_t>{0, 1}), eq));
    const auto pre = prefix_order(ab);
    CHECK(rel_equal(transpose(transpose(pre)), pre));
    check_binary(transpose(pre), [](const Word& u, const Word& v) { return is_prefix(v, u); });
    CHECK_THROWS_AS(permute(eq, std::vector<std::size_t>{0, 0}), ArityError);
    CHECK_THROWS_AS(cylindrify(eq, 3), ArityError);
  }

  TEST_CASE("projection with padding saturation") {
    CHECK(rel_equal(project(equality_relation(ab), 1), from_language(universal_nfa(ab))));
    CHECK(rel_equal(project(prefix_order(ab), 1), from_language(universal_nfa(ab))));
    // {(w, wa)} projected on the second component gives Σ*a
    const auto wa = append(ab, 0);
    const auto second = project(wa, 0);
    for (const auto& v : all_words(ab, 4)) {
      const Word t[] = {v};
      CHECK(second.contains(t) == (!v.empty() && v.symbols.back() == 0));
    }
    // first component: every word, even though the witness is longer
    const auto first = project(wa, 1);
    CHECK(rel_equal(first, from_language(universal_nfa(ab))));
    CHECK_THROWS_AS(project(first, 0), ArityError);
  }

  TEST_CASE("composition") {
    const auto eq = equality_relation(ab);
    const auto wa = append(ab, 0);
    const auto wb = append(ab, 1);
    CHECK(rel_equal(compose(eq, wa), wa));
    check_binary(compose(wa, wb), [](const Word& u, const Word& v) { return concat(concat(u, 0), 1) == v; });
    const auto pre = prefix_order(ab);
    const auto lex = lex_order(ab);
    // associativity and the transpose law on the bounded universe
    CHECK(rel_equal(compose(compose(wa, pre), lex), compose(wa, compose(pre, lex))));
    CHECK(rel_equal(transpose(compose(wa, lex)), compose(transpose(lex), transpose(wa))));
    CHECK(rel_subset(eq, compose(wa, transpose(wa))));
  }

  TEST_CASE("composition against set semantics") {
    const auto words = all_words(ab, 3);
    const auto r = rel_union(append(ab, 0), transpose(prefix_order(ab)));
    const auto s = rel_intersect(lex_order(ab), equal_length(ab));
    const auto rs = compose(r, s);
    for (const auto& u : words) {
      for (const auto& w : words) {
        bool expect = false;
        for (const auto& v : all_words(ab, 5)) {
          const Word a[] = {u, v}, b[] = {v, w};
          if (r.contains(a) && s.contains(b)) expect = true;
        }
        const Word t[] = {u, w};
        CHECK(rs.contains(t) == expect);
      }
    }
  }

  TEST_CASE("multi-track base alphabets") {
    // base with two leaves; relations over it behave componentwise
    const Alphabet leaf{"0", "1"};
    const Alphabet base = leaf.power(2);
    const auto eq = equality_relation(base);
    const auto words = all_words(base, 2);
    for (const auto& u : words) {
      for (const auto& v : words) {
        const Word t[] = {u, v};
        CHECK(eq.contains(t) == (u == v));
      }
    }
    CHECK(rel_equal(compose(eq, eq), eq));
    CHECK(is_valid_relation(rel_complement(eq)));
  }
}
