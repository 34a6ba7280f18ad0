#include <random>

#include "cgauto/compiler.hpp"
#include "cgauto/decision.hpp"
#include "cgauto/error.hpp"
#include "cgauto/fa.hpp"
#include "cgauto/groups.hpp"
#include "cgauto/presburger.hpp"
#include "doctest.h"
#include "group_oracles.hpp"
#include "support.hpp"

using namespace cgauto;
using namespace testing_support;

namespace {

GroupWord gw(const std::string& text) { return parse_group_word(text); }

std::vector<std::int64_t> coords(const GraphAutomaticPresentation& p, const Word& w) {
  return CoordinateSpace::integers(p.base().track_count()).decode(w);
}

Word point(const std::vector<std::int64_t>& v) { return CoordinateSpace::integers(v.size()).encode(v); }

// Generators of p as unitriangular elementary matrices, by name "t<i><j>".
std::vector<Matrix> transvections(const GraphAutomaticPresentation& p, std::size_t n) {
  std::vector<Matrix> out;
  for (const auto& g : p.generators()) {
    out.push_back(Matrix::elementary(n, g.name[1] - '1', g.name[2] - '1', 1));
  }
  return out;
}

Matrix inverse_unitriangular(const Matrix& m) {
  // (I + N)^-1 = I - N + N^2 - ...
  const Matrix one = Matrix::identity(m.n);
  Matrix nil = m;
  for (std::size_t i = 0; i < m.n; ++i) nil.a[i * m.n + i] = 0;
  Matrix out = one, power = one;
  for (std::size_t k = 1; k < m.n; ++k) {
    power = power * nil;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += (k % 2 ? -1 : 1) * power.a[i];
  }
  return out;
}

std::size_t matrix_ball(const GraphAutomaticPresentation& p, const std::vector<Matrix>& gens, std::size_t radius) {
  std::vector<Matrix> inv;
  for (const auto& g : gens) inv.push_back(inverse_unitriangular(g));
  return compare_balls(p, radius, Matrix::identity(gens[0].n),
                       [&](const Matrix& e, std::size_t g, int sign) { return e * (sign > 0 ? gens[g] : inv[g]); });
}

std::vector<Matrix> heisenberg_matrices(std::size_t n) {
  std::vector<Matrix> gens;
  for (std::size_t j = 1; j + 1 < n; ++j) gens.push_back(Matrix::elementary(n, 0, j, 1));
  gens.push_back(Matrix::elementary(n, 0, n - 1, 1));
  for (std::size_t i = 1; i + 1 < n; ++i) gens.push_back(Matrix::elementary(n, i, n - 1, 1));
  return gens;
}

std::size_t integer_ball(const GraphAutomaticPresentation& p, std::size_t dim, std::size_t radius) {
  return compare_balls(p, radius, std::vector<std::int64_t>(dim, 0),
                       [](std::vector<std::int64_t> e, std::size_t g, int sign) {
                         e[g] += sign;
                         return e;
                       });
}

std::size_t dihedral_ball(const GraphAutomaticPresentation& p, const std::vector<DihedralOracle::Element>& gens,
                          std::size_t radius) {
  return compare_balls(p, radius, DihedralOracle::Element{},
                       [&](const DihedralOracle::Element& e, std::size_t g, int sign) {
                         DihedralOracle::Element h = gens[g];
                         if (sign < 0) h = {h.eps, -h.eps * h.k};
                         return DihedralOracle::then(e, h);
                       });
}

}  // namespace

TEST_SUITE("groups") {
  TEST_CASE("group words") {
    const GroupWord w = gw("A C^-1 B^1");
    REQUIRE(w.size() == 3);
    CHECK(w[1] == GroupLetter{"C", -1});
    CHECK(w[2] == GroupLetter{"B", 1});
    CHECK(to_string(w) == "A C^-1 B");
    CHECK(to_string(inverse(w)) == "B^-1 C A^-1");
    CHECK(gw("").empty());
    CHECK_THROWS_AS(gw("A^2"), ParseError);
    CHECK(gw("λ").empty());
    CHECK(gw("A λ B") == gw("A B"));
  }

  TEST_CASE("zn") {
    const auto p = zn(2);
    CHECK(p.identity() == point({0, 0}));
    CHECK(right_multiply(p, p.identity(), gw("e1")) == point({1, 0}));
    CHECK(canonical_rep(p, gw("e1 e2 e1^-1 e2^-1")) == p.identity());
    CHECK(ball(p, 1).size() == 5);
    CHECK(ball(p, 2).size() == 13);
    CHECK(integer_ball(p, 2, 4) == 41);
    CHECK(integer_ball(zn(3), 3, 3) == 63);
    CHECK(p.has_left());
    CHECK(check_presentation(p).ok());
    CHECK_THROWS_AS(zn(0), InvalidArgument);
  }

  TEST_CASE("finitely generated abelian") {
    const auto p = fg_abelian(1, {2});
    CHECK(relator_holds(p, gw("t1 t1")));
    CHECK(relator_holds(p, gw("e1 t1 e1^-1 t1^-1")));
    CHECK_FALSE(is_identity(p, gw("t1")));
    const auto z3 = fg_abelian(0, {3});
    CHECK(ball(z3, 2).size() == 3);
    CHECK(ball(z3, 1).size() == 3);
    CHECK(relator_holds(z3, gw("t1 t1 t1")));
    CHECK(compare_balls(fg_abelian(1, {2, 3}), 4, std::vector<std::int64_t>{0, 0, 0},
                        [](std::vector<std::int64_t> e, std::size_t g, int sign) {
                          const std::int64_t order[] = {0, 2, 3};
                          e[g] += sign;
                          if (order[g] != 0) e[g] = (e[g] % order[g] + order[g]) % order[g];
                          return e;
                        }) > 0);
    CHECK(check_presentation(fg_abelian(2, {4})).ok());
    CHECK_THROWS_AS(fg_abelian(1, {1}), InvalidArgument);
    CHECK_THROWS_AS(fg_abelian(0, {}), InvalidArgument);
  }

  TEST_CASE("heisenberg transitions") {
    const auto p = heisenberg();
    REQUIRE(p.generators().size() == 3);
    for (std::int64_t a = -3; a <= 3; ++a) {
      for (std::int64_t b = -3; b <= 3; ++b) {
        for (std::int64_t c = -3; c <= 3; ++c) {
          const Word u = point({a, b, c});
          // right: X (I + E)
          REQUIRE(coords(p, eval_function(p.right({"A", 1}), u)) == std::vector<std::int64_t>{a + 1, b, c});
          REQUIRE(coords(p, eval_function(p.right({"B", 1}), u)) == std::vector<std::int64_t>{a, b + 1, c});
          REQUIRE(coords(p, eval_function(p.right({"C", 1}), u)) == std::vector<std::int64_t>{a, b + a, c + 1});
          // left: (I + E) X
          REQUIRE(coords(p, eval_function(p.left({"A", 1}), u)) == std::vector<std::int64_t>{a + 1, b + c, c});
          REQUIRE(coords(p, eval_function(p.left({"B", 1}), u)) == std::vector<std::int64_t>{a, b + 1, c});
          REQUIRE(coords(p, eval_function(p.left({"C", 1}), u)) == std::vector<std::int64_t>{a, b, c + 1});
        }
      }
    }
  }

  TEST_CASE("heisenberg relations") {
    const auto p = heisenberg();
    CHECK(canonical_rep(p, gw("A C A^-1 C^-1")) == canonical_rep(p, gw("B")));
    CHECK(relator_holds(p, gw("A C A^-1 C^-1 B^-1")));
    CHECK(relator_holds(p, gw("A B A^-1 B^-1")));
    CHECK(relator_holds(p, gw("C B C^-1 B^-1")));
    CHECK_FALSE(relator_holds(p, gw("A C A^-1 C^-1")));
    CHECK(matrix_ball(p, heisenberg_matrices(3), 4) > 0);
    CHECK(p.has_left());
    // left and right multiplications commute
    const RegularRelation& la = p.left({"A", 1});
    const RegularRelation& rc = p.right({"C", 1});
    CHECK(rel_equal(compose(la, rc), compose(rc, la)));
    CHECK_THROWS_AS(heisenberg(2), InvalidArgument);
  }

  TEST_CASE("higher heisenberg") {
    const auto p = heisenberg(4);
    REQUIRE(p.generators().size() == 5);
    CHECK(p.generators()[0].name == "A2");
    CHECK(p.generators()[2].name == "B");
    CHECK(matrix_ball(p, heisenberg_matrices(4), 3) > 0);
    CHECK(relator_holds(p, gw("A2 C3 A2^-1 C3^-1")));
    CHECK(relator_holds(p, gw("A2 C2 A2^-1 C2^-1 B^-1")));
  }

  TEST_CASE("unitriangular") {
    const auto p3 = ut(3);
    CHECK(p3.identity() == point({0, 0, 0}));
    CHECK(matrix_ball(p3, transvections(p3, 3), 4) > 0);
    CHECK(growth_profile(p3, 4).sizes == growth_profile(heisenberg(), 4).sizes);
    const auto p42 = ut_m(4, 2);
    CHECK(p42.generators().size() == 3);
    CHECK(matrix_ball(p42, transvections(p42, 4), 3) > 0);
    CHECK(relator_holds(p42, gw("t13 t24 t13^-1 t24^-1")));
    CHECK_THROWS_AS(ut(1), InvalidArgument);
    CHECK_THROWS_AS(ut_m(3, 3), InvalidArgument);
  }

  TEST_CASE("unitriangular 4x4" * doctest::timeout(600)) {
    const auto p = ut(4);
    REQUIRE(p.generators().size() == 6);
    CHECK(matrix_ball(p, transvections(p, 4), 2) > 0);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
      const Word u = canonical_rep(p, random_group_word(p, 8, rng));
      CHECK(right_multiply(p, u, gw("t12 t34")) == right_multiply(p, u, gw("t34 t12")));
      CHECK(right_multiply(p, u, gw("t12 t23 t12^-1 t23^-1")) == right_multiply(p, u, gw("t13")));
    }
  }

  TEST_CASE("baumslag solitar transitions") {
    for (std::int64_t p : {2, 3}) {
      const auto g = bs1n(p);
      for (std::int64_t n = -2; n <= 2; ++n) {
        for (std::int64_t m = -9; m <= 9; ++m) {
          for (std::int64_t k = 0; k <= 2; ++k) {
            if (k > 0 && m % p == 0) continue;
            const Word u = bs1n_encode(p, {n, m, k});
            REQUIRE(bs1n_decode(p, u) == BsElement{n, m, k});
            const BsElement a = bs1n_decode(p, eval_function(g.right({"a", 1}), u));
            if (k > 0) REQUIRE(a == BsElement{n + 1, m, k - 1});
            else REQUIRE(a == BsElement{n + 1, p * m, 0});
            std::int64_t pk = 1;
            for (std::int64_t i = 0; i < k; ++i) pk *= p;
            REQUIRE(bs1n_decode(p, eval_function(g.right({"b", 1}), u)) == BsElement{n, m + pk, k});
          }
        }
      }
    }
    CHECK_THROWS_AS(bs1n(1), InvalidArgument);
    CHECK_THROWS_AS(bs1n_encode(2, {0, 4, 1}), EncodingError);
  }

  TEST_CASE("baumslag solitar relators and ball") {
    CHECK(relator_holds(bs1n(2), gw("a^-1 b a b^-1 b^-1")));
    CHECK(relator_holds(bs1n(3), gw("a^-1 b a b^-1 b^-1 b^-1")));
    CHECK_FALSE(relator_holds(bs1n(3), gw("a^-1 b a b^-1 b^-1")));
    CHECK_FALSE(relator_holds(bs1n(2), gw("a b a^-1 b^-1")));
    for (std::int64_t p : {2, 3}) {
      const auto g = bs1n(p);
      const AffineOracle oracle{p};
      CHECK(compare_balls(g, 4, AffineOracle::Element{}, [&](const AffineOracle::Element& e, std::size_t i, int sign) {
              return oracle.apply(e, g.generators()[i].name == "a", sign);
            }) > 0);
    }
  }

  TEST_CASE("free group") {
    const auto f = free_group(2);
    CHECK(free_generator_names(2) == std::vector<std::string>{"a", "b"});
    CHECK(canonical_rep(f, gw("a b b^-1 a^-1")).empty());
    CHECK(canonical_rep(f, gw("a b^-1 a")).to_string("") == "aBa");
    const auto sizes = growth_profile(f, 5).sizes;
    for (std::size_t n = 0; n <= 5; ++n) {
      std::size_t pow3 = 1;
      for (std::size_t i = 0; i < n; ++i) pow3 *= 3;
      CHECK(sizes[n] == 2 * pow3 - 1);
    }
    CHECK(compare_balls(f, 4, std::string(), [](const std::string& e, std::size_t g, int sign) {
            const char c = static_cast<char>((sign > 0 ? 'a' : 'A') + g);
            return free_reduce_append(e, c);
          }) == 161);
    CHECK_THROWS_AS(free_group(0), InvalidArgument);
  }

  TEST_CASE("gamma free structure") {
    const AutomaticStructure s = gamma_free(2);
    CHECK(s.has_relation("E_a"));
    CHECK(s.has_relation("Prefix"));
    CHECK(s.has_relation("EqLen"));
    const Alphabet& a = s.base();
    const auto w = [&](const std::string& t) { return parse_word(a, t); };
    CHECK(s.relation("Prefix").contains(std::vector<Word>{w("a"), w("aB")}));
    CHECK_FALSE(s.relation("Prefix").contains(std::vector<Word>{w("b"), w("aB")}));
    CHECK(s.relation("EqLen").contains(std::vector<Word>{w("ab"), w("BA")}));
    CHECK(s.relation("E_a").contains(std::vector<Word>{w("bA"), w("b")}));
  }

  TEST_CASE("wreath product") {
    const FiniteGroupTable z2 = FiniteGroupTable::cyclic(2);
    const auto p = wreath_finite_by_z(z2);
    REQUIRE(p.generators().size() == 2);
    CHECK(p.generators()[1].name == "t");
    CHECK(relator_holds(p, gw("a a")));
    CHECK(relator_holds(p, gw("a t a t^-1 a^-1 t a^-1 t^-1")));
    CHECK_FALSE(relator_holds(p, gw("a t a^-1 t^-1")));
    const WreathOracle oracle{&z2};
    const auto step = [&](const WreathOracle::Element& e, std::size_t g, int sign) {
      if (g == 1) return WreathOracle::move(e, sign);
      return oracle.lamp(e, sign > 0 ? 1 : z2.inverse(1));
    };
    CHECK(compare_balls(p, 4, WreathOracle::Element{}, step) > 0);

    // the shift edge on an explicit element
    const WreathElement e{-3, -1, {1, 1}};
    const WreathElement f = wreath_decode(z2, eval_function(p.right({"t", 1}), wreath_encode(z2, e)));
    CHECK(oracle.from(f) == WreathOracle::move(oracle.from(e), 1));

    const FiniteGroupTable z3 = FiniteGroupTable::cyclic(3);
    const auto q = wreath_finite_by_z(z3);
    CHECK(q.generators().size() == 3);
    CHECK(relator_holds(q, gw("a1 a1 a1")));
    CHECK(relator_holds(q, gw("a1 a1 a2^-1")));
    CHECK(check_presentation(q).ok());
  }

  TEST_CASE("finite group tables") {
    CHECK(FiniteGroupTable::cyclic(4).inverse(1) == 3);
    CHECK_THROWS_AS(FiniteGroupTable({"1", "x"}, {{0, 1}, {1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(FiniteGroupTable({"1", "x"}, {{0, 1}}), InvalidArgument);
  }

  TEST_CASE("class two nilpotent") {
    // [a2, a1] = a3 with [x, y] = x^-1 y^-1 x y: a1 = C, a2 = A, a3 = B
    Nilpotent2Spec h3{3, 2, {0, 0, 0}, {{{2, 1}, {0, 0, 1}}}};
    const auto p = nilpotent2(h3);
    const auto m = heisenberg_matrices(3);
    CHECK(matrix_ball(p, {m[2], m[0], m[1]}, 4) > 0);
    CHECK(growth_profile(p, 4).sizes == growth_profile(heisenberg(), 4).sizes);
    CHECK(relator_holds(p, gw("a2^-1 a1^-1 a2 a1 a3^-1")));

    Nilpotent2Spec abelian{2, 2, {0, 0}, {}};
    CHECK(growth_profile(nilpotent2(abelian), 4).sizes == growth_profile(zn(2), 4).sizes);

    // collecting oracle: a_j^x a_i = a_i a_j^x [a_j, a_i]^x
    Nilpotent2Spec spec{4, 2, {0, 0, 0, 4}, {{{2, 1}, {0, 0, 1, 2}}}};
    const auto q = nilpotent2(spec);
    const CoordinateSpace space(spec.orders);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> pick(-20, 20);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::int64_t> alpha{pick(rng), pick(rng), pick(rng), (pick(rng) % 4 + 4) % 4};
      for (std::size_t i = 0; i < 4; ++i) {
        std::vector<std::int64_t> expect = alpha;
        expect[i] += 1;
        if (i == 0) {
          expect[2] += alpha[1];
          expect[3] += 2 * alpha[1];
        }
        expect[3] = ((expect[3] % 4) + 4) % 4;
        const Word out = eval_function(q.generators()[i].right, space.encode(alpha));
        REQUIRE(space.decode(out) == expect);
      }
    }
    CHECK(check_presentation(q).ok());

    Nilpotent2Spec bad{3, 2, {0, 0, 0}, {{{2, 1}, {1, 0, 0}}}};
    CHECK_THROWS_AS(nilpotent2(bad), InvalidArgument);
    Nilpotent2Spec bad_order{3, 2, {2, 0, 0}, {{{2, 1}, {0, 0, 1}}}};
    CHECK_THROWS_AS(nilpotent2(bad_order), InvalidArgument);
  }

  TEST_CASE("semidirect zn by z") {
    const auto trivial = semidirect_zn_z({{1, 0}, {0, 1}});
    CHECK(relator_holds(trivial, gw("e1 t e1^-1 t^-1")));
    CHECK(relator_holds(trivial, gw("e2 t e2^-1 t^-1")));

    const IntMatrix A{{2, 1}, {1, 1}};
    const auto p = semidirect_zn_z(A);
    // t^-1 e1 t = A e1 = (2, 1)
    CHECK(relator_holds(p, gw("t^-1 e1 t e2^-1 e1^-1 e1^-1")));
    CHECK(relator_holds(p, gw("t^-1 e2 t e2^-1 e1^-1")));
    const SemidirectOracle oracle{Matrix{2, {2, 1, 1, 1}}, Matrix{2, {1, -1, -1, 2}}};
    const auto step = [&](const SemidirectOracle::Element& e, std::size_t g, int sign) {
      return g == 2 ? oracle.shift(e, sign) : oracle.translate(e, g, sign);
    };
    CHECK(compare_balls(p, 3, SemidirectOracle::Element{0, {0, 0}}, step) > 0);
    CHECK_THROWS_AS(semidirect_zn_z({{2, 0}, {0, 1}}), InvalidArgument);
  }

  TEST_CASE("direct product") {
    const auto p = direct_product(zn(1), zn(1));
    REQUIRE(p.generators().size() == 2);
    CHECK(p.generators()[0].name == "1.e1");
    CHECK(p.generators()[1].name == "2.e1");
    CHECK(integer_ball(p, 2, 4) == 41);
    CHECK(relator_holds(p, gw("1.e1 2.e1 1.e1^-1 2.e1^-1")));
    CHECK(canonical_rep(p, gw("")) == p.identity());
    const auto q = direct_product(heisenberg(), bs1n(2));
    CHECK(q.generators().size() == 5);
    CHECK(relator_holds(q, gw("A a A^-1 a^-1")));
  }

  TEST_CASE("free product") {
    const auto z2 = fg_abelian(0, {2});
    const auto d = free_product(z2, z2);
    REQUIRE(d.generators().size() == 2);
    CHECK(relator_holds(d, gw("1.t1 1.t1")));
    CHECK(relator_holds(d, gw("2.t1 2.t1")));
    GroupWord st;
    for (int n = 1; n <= 4; ++n) {
      st = concat(st, gw("1.t1 2.t1"));
      CHECK_FALSE(is_identity(d, st));
    }
    // s: x -> -x, t: x -> 1 - x
    CHECK(dihedral_ball(d, {{-1, 0}, {-1, 1}}, 5) == 11);
    const Word w = canonical_rep(d, gw("1.t1 2.t1"));
    CHECK(w.to_string(" ") == "1.1 | 2.1");

    const auto zz = free_product(zn(1), zn(1));
    CHECK(growth_profile(zz, 4).sizes == growth_profile(free_group(2), 4).sizes);
    CHECK(check_presentation(free_product(zn(1), fg_abelian(0, {3}))).ok());
  }

  TEST_CASE("semidirect product") {
    const auto z2 = zn(2);
    const auto z1 = zn(1);
    const IntMatrix A{{2, 1}, {1, 1}};
    const auto p = semidirect(z2, z1, {{"e1", CoordinateSpace::integers(2).affine_map(A, std::vector<std::int64_t>{0, 0})}});
    REQUIRE(p.generators().size() == 3);
    const SemidirectOracle oracle{Matrix{2, {2, 1, 1, 1}}, Matrix{2, {1, -1, -1, 2}}};
    const auto step = [&](const SemidirectOracle::Element& e, std::size_t g, int sign) {
      return g == 2 ? oracle.shift(e, sign) : oracle.translate(e, g, sign);
    };
    CHECK(compare_balls(p, 3, SemidirectOracle::Element{0, {0, 0}}, step) > 0);
    CHECK(growth_profile(p, 3).sizes == growth_profile(semidirect_zn_z(A), 3).sizes);

    const auto trivial = semidirect(z1, z1, {{"e1", presburger_structure().equality()}});
    CHECK(integer_ball(trivial, 2, 4) == 41);

    const RegularRelation shift = affine_relation({{1}}, std::vector<std::int64_t>{1});
    CHECK_THROWS_AS(semidirect(z1, z1, {{"e1", shift}}), InvalidArgument);
    const RegularRelation twice = affine_relation({{2}}, std::vector<std::int64_t>{0});
    CHECK_THROWS_AS(semidirect(z1, z1, {{"e1", twice}}), InvalidArgument);
  }

  TEST_CASE("finite extension") {
    // D-infinity = Z extended by s with s^2 = 1 and s e1 = e1^-1 s
    FiniteExtensionData data;
    data.base = zn(1);
    data.coset_names = {"s"};
    data.coset_product = {{0, 1}, {1, 0}};
    data.correction = {{{}, {}}, {{}, {}}};
    data.conjugation = {{gw("e1")}, {gw("e1^-1")}};
    const auto d = finite_extension(data);
    REQUIRE(d.generators().size() == 2);
    CHECK(relator_holds(d, gw("s s")));
    CHECK(relator_holds(d, gw("s e1 s e1")));
    // e1: x -> x + 1, s: x -> -x
    CHECK(dihedral_ball(d, {{1, 1}, {-1, 0}}, 5) == 20);
    CHECK(check_presentation(d).ok());

    FiniteExtensionData trivial;
    trivial.base = zn(1);
    CHECK(finite_extension(trivial).generators().size() == 1);

    FiniteExtensionData bad = data;
    bad.conjugation[0][0] = gw("e1 e1");
    CHECK_THROWS_AS(finite_extension(bad), InvalidArgument);
    FiniteExtensionData clash = data;
    clash.coset_names = {"e1"};
    CHECK_THROWS_AS(finite_extension(clash), InvalidArgument);
  }

  TEST_CASE("regular subgroups") {
    const auto z2 = zn(2);
    const auto on_z2 = [&](const std::string& formula) {
      const RegularRelation r =
          compile(presburger_structure(), parse_formula(formula), VariableOrder{"x", "y"});
      return CoordinateSpace::integers(2).region(r);
    };
    const auto h = restrict_to_regular_subgroup(z2, on_z2("x = x & Add(y,y,y)"), {"e1"});
    CHECK(h.generators().size() == 1);
    CHECK(ball(h, 3).size() == 7);
    CHECK(integer_ball(h, 1, 4) == 9);
    CHECK_THROWS_AS(restrict_to_regular_subgroup(z2, on_z2("x = x & Add(y,y,y)"), {"e2"}), InvalidArgument);
    CHECK_THROWS_AS(restrict_to_regular_subgroup(z2, on_z2("Nonneg(x) & Add(y,y,y)"), {"e1"}), InvalidArgument);

    // the centre of H_3 with B
    const auto hz = heisenberg();
    const RegularRelation centre = compile(presburger_structure(), parse_formula("Add(a,a,a) & b = b & Add(c,c,c)"),
                                           VariableOrder{"a", "b", "c"});
    const auto z = restrict_to_regular_subgroup(hz, CoordinateSpace::integers(3).region(centre), {"B"});
    CHECK(integer_ball(z, 1, 4) == 9);
    CHECK_THROWS_AS(restrict_to_regular_subgroup(hz, CoordinateSpace::integers(3).region(centre), {"A"}), InvalidArgument);
  }

  TEST_CASE("extend generator") {
    const auto z = zn(1);
    const auto p = extend_generator(z, "y", gw("e1 e1"));
    REQUIRE(p.generators().size() == 2);
    for (std::int64_t x = -20; x <= 20; ++x) {
      REQUIRE(decode_int(eval_function(p.right({"y", 1}), encode_int(x))) == x + 2);
    }
    CHECK(rel_equal(extend_generator(z, "y", gw("e1 e1^-1")).right({"y", 1}), z.equality()));
    const auto h = extend_generator(heisenberg(), "D", gw("A C A^-1 C^-1"));
    CHECK(rel_equal(h.right({"D", 1}), h.right({"B", 1})));
    CHECK_THROWS_AS(extend_generator(z, "y", gw("")), InvalidArgument);
    CHECK_THROWS_AS(extend_generator(z, "y", gw("f")), InvalidArgument);
    CHECK_THROWS_AS(extend_generator(z, "e1", gw("e1")), InvalidArgument);
  }

  TEST_CASE("abelian multiplication structure") {
    const AutomaticStructure s = fa_abelian_multiplication(1, {3});
    const CoordinateSpace space({0, 3});
    const auto enc = [&](std::int64_t a, std::int64_t b) { return space.encode(std::vector<std::int64_t>{a, b}); };
    const RegularRelation& mult = s.relation("Mult");
    CHECK(mult.contains(std::vector<Word>{enc(2, 1), enc(-1, 1), enc(1, 2)}));
    CHECK_FALSE(mult.contains(std::vector<Word>{enc(2, 1), enc(-1, 1), enc(1, 1)}));
    for (std::int64_t a = -4; a <= 4; ++a) {
      for (std::int64_t b = 0; b < 3; ++b) {
        for (std::int64_t c = -4; c <= 4; ++c) {
          for (std::int64_t d = 0; d < 3; ++d) {
            REQUIRE(mult.contains(std::vector<Word>{enc(a, b), enc(c, d), enc(a + c, (b + d) % 3)}));
            REQUIRE_FALSE(mult.contains(std::vector<Word>{enc(a, b), enc(c, d), enc(a + c + 1, (b + d) % 3)}));
          }
        }
      }
    }
    CHECK(decide(s, parse_formula("A x A y A z (Mult(x,y,z) -> Mult(y,x,z))")));
    CHECK(decide(s, parse_formula("E e A x (Mult(x,e,x))")));
    CHECK(decide(s, parse_formula("A x E y E e (Mult(x,y,e) & A z (Mult(z,e,z)))")));
    CHECK_THROWS_AS(fa_abelian_multiplication(1, {1}), InvalidArgument);
  }

  TEST_CASE("abelian multiplication is associative") {
    const AutomaticStructure s = fa_abelian_multiplication(1, {});
    CHECK(decide(s, parse_formula(
                        "A a A b A c A u A v A w A x (Mult(a,b,u) & Mult(u,c,w) & Mult(b,c,v) & Mult(a,v,x) -> w = x)")));
    const RegularRelation& mult = s.relation("Mult");
    for (std::int64_t a = -8; a <= 8; ++a) {
      for (std::int64_t b = -8; b <= 8; ++b) {
        REQUIRE(decode_int(eval_function(mult, std::vector<Word>{encode_int(a), encode_int(b)})) == a + b);
      }
    }
  }

  TEST_CASE("edge relations are bijections") {
    const std::vector<GraphAutomaticPresentation> all{zn(2),
                                                      fg_abelian(1, {2}),
                                                      heisenberg(),
                                                      bs1n(2),
                                                      bs1n(3),
                                                      free_group(2),
                                                      wreath_finite_by_z(FiniteGroupTable::cyclic(2)),
                                                      semidirect_zn_z({{2, 1}, {1, 1}}),
                                                      free_product(fg_abelian(0, {2}), fg_abelian(0, {2}))};
    for (const auto& p : all) {
      for (const auto& g : p.generators()) {
        CAPTURE(p.meta());
        CAPTURE(g.name);
        CHECK(rel_equal(compose(g.right, transpose(g.right)), p.equality()));
        CHECK(rel_equal(compose(transpose(g.right), g.right), p.equality()));
      }
    }
  }
}
