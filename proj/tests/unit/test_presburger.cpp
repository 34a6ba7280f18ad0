#include <set>

#include "cgauto/error.hpp"
#include "cgauto/fa.hpp"
#include "cgauto/presburger.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cgauto;
using namespace testing_support;

namespace {

// Direct evaluation of the two's complement value, independent of decode_int.
long long value_of(const std::string& digits) {
  long long v = 0;
  const std::size_t k = digits.size();
  for (std::size_t i = 0; i + 1 < k; ++i) v += (digits[i] - '0') * (1LL << i);
  v -= (digits[k - 1] - '0') * (1LL << (k - 1));
  return v;
}

std::string digits_of(const Word& w) { return w.to_string(""); }

Word int_word(const std::string& digits) { return word(binary_alphabet(), digits); }

}  // namespace

TEST_SUITE("presburger") {
  TEST_CASE("encoding examples") {
    CHECK(digits_of(encode_int(0)) == "0");
    CHECK(digits_of(encode_int(-1)) == "1");
    CHECK(digits_of(encode_int(1)) == "10");
    CHECK(digits_of(encode_int(2)) == "010");
    CHECK(digits_of(encode_int(3)) == "110");
    CHECK(digits_of(encode_int(-2)) == "01");
    CHECK_THROWS_AS(decode_int(int_word("00")), EncodingError);
    CHECK_THROWS_AS(decode_int(Word(binary_alphabet())), EncodingError);
  }

  TEST_CASE("round trip") {
    for (long long x = -10000; x <= 10000; ++x) {
      const Word w = encode_int(x);
      REQUIRE(is_canonical_int(w));
      REQUIRE(value_of(digits_of(w)) == x);
      REQUIRE(decode_int(w) == x);
    }
    for (long long x : {INT64_MIN, INT64_MAX, INT64_MIN + 1, INT64_MAX - 1}) CHECK(decode_int(encode_int(x)) == x);
  }

  TEST_CASE("domain accepts exactly canonical words") {
    const Dfa dom = int_domain();
    CHECK(accepts(dom, int_word("0")));
    CHECK(accepts(dom, int_word("1")));
    CHECK(accepts(dom, int_word("10")));
    CHECK_FALSE(accepts(dom, int_word("00")));
    CHECK_FALSE(accepts(dom, Word(binary_alphabet())));
    std::set<long long> values;
    std::size_t canonical = 0;
    for (const Word& w : all_words(binary_alphabet(), 10)) {
      const std::string d = digits_of(w);
      const bool expect = !d.empty() && (d.size() == 1 || d[d.size() - 1] != d[d.size() - 2]);
      REQUIRE(accepts(dom, w) == expect);
      if (expect) {
        ++canonical;
        values.insert(decode_int(w));
      }
    }
    CHECK(values.size() == canonical);
  }

  TEST_CASE("addition") {
    const RegularRelation add = addition_relation();
    for (long long x = -20; x <= 20; ++x) {
      for (long long y = -20; y <= 20; ++y) {
        for (long long z = -20; z <= 20; ++z) {
          const std::vector<Word> t{encode_int(x), encode_int(y), encode_int(z)};
          REQUIRE(add.contains(t) == (x + y == z));
        }
      }
    }
    CHECK_FALSE(add.contains(std::vector<Word>{int_word("00"), int_word("0"), int_word("0")}));
    CHECK_FALSE(add.contains(std::vector<Word>{encode_int(1), encode_int(1), encode_int(1)}));
    CHECK(add.contains(std::vector<Word>{encode_int(1LL << 40), encode_int(-(1LL << 41)), encode_int(-(1LL << 40))}));
  }

  TEST_CASE("structure") {
    const AutomaticStructure z = presburger_structure();
    CHECK(decide(z, parse_formula("E x (Add(x,x,x))")));
    CHECK(decide(z, parse_formula("A x A y E z (Add(x,y,z))")));
    CHECK_FALSE(decide(z, parse_formula("E x (Add(x,x,x) & One(x))")));
    const AutomaticStructure with_leq =
        define_relation(z, "Leq", parse_formula("E d (Nonneg(d) & Add(x,d,y))"), {"x", "y"});
    const RegularRelation& leq = with_leq.relation("Leq");
    for (long long x = -10; x <= 10; ++x) {
      for (long long y = -10; y <= 10; ++y) {
        REQUIRE(leq.contains(std::vector<Word>{encode_int(x), encode_int(y)}) == (x <= y));
      }
    }
    CHECK(leq.contains(std::vector<Word>{encode_int(5), encode_int(7)}));
    CHECK(decide(with_leq, parse_formula("A x E y (Leq(x,y) & !(x = y))")));
  }

  TEST_CASE("multiples") {
    for (long long k : {-7LL, -2LL, 0LL, 1LL, 3LL, 12LL, 64LL}) {
      const RegularRelation m = multiple_relation(k);
      for (long long x = -40; x <= 40; ++x) {
        for (long long y = -300; y <= 300; y += 1) {
          if (y != k * x && (y - k * x) % 7 != 0) continue;
          REQUIRE(m.contains(std::vector<Word>{encode_int(x), encode_int(y)}) == (y == k * x));
        }
      }
    }
  }

  TEST_CASE("affine maps") {
    const RegularRelation id = affine_relation({{1, 0}, {0, 1}}, std::vector<std::int64_t>{0, 0});
    const RegularRelation eq = presburger_structure().equality();
    const std::vector<JoinOperand> ops{{&eq, {0, 2}}, {&eq, {1, 3}}};
    const RegularRelation eq2 = join(binary_alphabet(), 4, ops);
    CHECK(rel_equal(id, eq2));

    const RegularRelation f = affine_relation({{2}}, std::vector<std::int64_t>{1});
    for (long long x = -32; x <= 32; ++x) {
      for (long long y = -70; y <= 70; ++y) {
        REQUIRE(f.contains(std::vector<Word>{encode_int(x), encode_int(y)}) == (y == 2 * x + 1));
      }
    }
    CHECK(f.contains(std::vector<Word>{encode_int(3), encode_int(7)}));

    const RegularRelation g = affine_relation({{2, 1}, {1, 1}}, std::vector<std::int64_t>{0, 0});
    for (long long a = -16; a <= 16; ++a) {
      for (long long b = -16; b <= 16; ++b) {
        const std::vector<Word> good{encode_int(a), encode_int(b), encode_int(2 * a + b), encode_int(a + b)};
        const std::vector<Word> bad{encode_int(a), encode_int(b), encode_int(2 * a + b), encode_int(a + b + 1)};
        REQUIRE(g.contains(good));
        REQUIRE_FALSE(g.contains(bad));
      }
    }

    CHECK_THROWS_AS(affine_relation({{65}}, std::vector<std::int64_t>{0}), InvalidArgument);
    CHECK_NOTHROW(affine_relation({{65}}, std::vector<std::int64_t>{0}, 128));
    CHECK_THROWS_AS(affine_relation({{1, 2}, {1}}, std::vector<std::int64_t>{0, 0}), InvalidArgument);
    CHECK_THROWS_AS(affine_relation({{1}}, std::vector<std::int64_t>{0, 0}), InvalidArgument);
  }

  TEST_CASE("affine maps are functional and total") {
    const RegularRelation g = affine_relation({{2, 1}, {1, 1}}, std::vector<std::int64_t>{3, -1});
    const AutomaticStructure s = presburger_structure().with_relation("G", g);
    CHECK(decide(s, parse_formula("A a A b E c E d (G(a,b,c,d))")));
    CHECK(decide(s, parse_formula(
                        "A a A b A c A d A e A f (G(a,b,c,d) & G(a,b,e,f) -> c = e & d = f)")));
  }

  TEST_CASE("vectors") {
    const std::vector<std::int64_t> v{5, -3, 0, 1000};
    CHECK(decode_int_vector(encode_int_vector(v), 4) == v);
  }
}
