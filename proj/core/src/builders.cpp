#include <algorithm>
#include <array>
#include <set>

#include "cgauto/error.hpp"
#include "cgauto/explore.hpp"
#include "cgauto/groups.hpp"
#include "group_support.hpp"

namespace cgauto {

namespace {

using detail::Part;

std::vector<std::int64_t> unit(std::size_t d, std::size_t i) {
  std::vector<std::int64_t> v(d, 0);
  v[i] = 1;
  return v;
}

IntMatrix identity_matrix(std::size_t d) {
  IntMatrix m(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

GraphAutomaticPresentation coordinate_presentation(const CoordinateSpace& space, std::vector<Generator> gens,
                                                   std::string meta) {
  const std::vector<std::int64_t> zero(space.dimension(), 0);
  return GraphAutomaticPresentation(space.alphabet(), space.domain(), space.encode(zero), std::move(gens),
                                    std::move(meta));
}

// A generator acting by x -> x + e_i on every coordinate space.
Generator translation(const CoordinateSpace& space, const std::string& name, std::size_t i, bool abelian) {
  const std::size_t d = space.dimension();
  RegularRelation r = space.affine_map(identity_matrix(d), unit(d, i));
  Generator g{name, r, std::nullopt};
  if (abelian) g.left = r;
  return g;
}

}  // namespace

GraphAutomaticPresentation zn(std::size_t n) {
  if (n < 1) throw InvalidArgument("zn needs n >= 1");
  const CoordinateSpace space = CoordinateSpace::integers(n);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(translation(space, "e" + std::to_string(i + 1), i, true));
  return coordinate_presentation(space, std::move(gens), "Z^" + std::to_string(n));
}

GraphAutomaticPresentation fg_abelian(std::size_t n, const std::vector<std::int64_t>& torsion) {
  if (n + torsion.size() == 0) throw InvalidArgument("abelian group needs at least one coordinate");
  std::vector<std::int64_t> orders(n, 0);
  std::string meta = "Z^" + std::to_string(n);
  for (auto w : torsion) {
    if (w < 2) throw InvalidArgument("torsion orders must be at least 2");
    orders.push_back(w);
    meta += " + Z/" + std::to_string(w);
  }
  const CoordinateSpace space(orders);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(translation(space, "e" + std::to_string(i + 1), i, true));
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    gens.push_back(translation(space, "t" + std::to_string(i + 1), n + i, true));
  }
  return coordinate_presentation(space, std::move(gens), meta);
}

GraphAutomaticPresentation heisenberg(std::size_t n) {
  if (n < 3) throw InvalidArgument("heisenberg needs n >= 3");
  // coordinates: first row a_2..a_(n-1), corner b, last column c_2..c_(n-1)
  const std::size_t k = n - 2;
  const std::size_t d = 2 * k + 1;
  const std::size_t b = k;
  auto a_idx = [&](std::size_t j) { return j; };
  auto c_idx = [&](std::size_t i) { return k + 1 + i; };
  const CoordinateSpace space = CoordinateSpace::integers(d);
  auto suffix = [&](std::size_t i) { return n == 3 ? std::string() : std::to_string(i + 2); };
  std::vector<Generator> gens;
  for (std::size_t j = 0; j < k; ++j) {
    IntMatrix left = identity_matrix(d);
    left[b][c_idx(j)] = 1;
    gens.push_back(Generator{"A" + suffix(j), space.affine_map(identity_matrix(d), unit(d, a_idx(j))),
                             space.affine_map(left, unit(d, a_idx(j)))});
  }
  const RegularRelation corner = space.affine_map(identity_matrix(d), unit(d, b));
  gens.push_back(Generator{"B", corner, corner});
  for (std::size_t i = 0; i < k; ++i) {
    IntMatrix right = identity_matrix(d);
    right[b][a_idx(i)] = 1;
    gens.push_back(Generator{"C" + suffix(i), space.affine_map(right, unit(d, c_idx(i))),
                             space.affine_map(identity_matrix(d), unit(d, c_idx(i)))});
  }
  return coordinate_presentation(space, std::move(gens), "H_" + std::to_string(n) + "(Z)");
}

GraphAutomaticPresentation ut_m(std::size_t n, std::size_t m) {
  if (n < 2 || m < 1 || m >= n) throw InvalidArgument("ut_m needs n >= 2 and 1 <= m < n");
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + m; j <= n; ++j) entries.push_back({i, j});
  }
  auto index = [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
    auto it = std::find(entries.begin(), entries.end(), std::make_pair(i, j));
    if (it == entries.end()) return std::nullopt;
    return static_cast<std::size_t>(it - entries.begin());
  };
  const std::size_t d = entries.size();
  const CoordinateSpace space = CoordinateSpace::integers(d);
  std::vector<Generator> gens;
  for (const auto& [i, j] : entries) {
    const std::size_t e = *index(i, j);
    IntMatrix right = identity_matrix(d);
    IntMatrix left = identity_matrix(d);
    // column j += column i
    for (std::size_t r = 1; r < i; ++r) {
      if (auto src = index(r, i)) right[*index(r, j)][*src] += 1;
    }
    // row i += row j
    for (std::size_t c = j + 1; c <= n; ++c) {
      if (auto src = index(j, c)) left[*index(i, c)][*src] += 1;
    }
    const std::string name = n <= 9 ? "t" + std::to_string(i) + std::to_string(j)
                                    : "t" + std::to_string(i) + "_" + std::to_string(j);
    gens.push_back(Generator{name, space.affine_map(right, unit(d, e)), space.affine_map(left, unit(d, e))});
  }
  std::string meta = "UT(" + std::to_string(n) + ",Z)";
  if (m > 1) meta = "UT^" + std::to_string(m) + "(" + std::to_string(n) + ",Z)";
  return coordinate_presentation(space, std::move(gens), meta);
}

GraphAutomaticPresentation ut(std::size_t n) { return ut_m(n, 1); }

GraphAutomaticPresentation nilpotent2(const Nilpotent2Spec& spec) {
  const std::size_t n = spec.n;
  const std::size_t s = spec.split;
  if (n < 1 || s > n || spec.orders.size() != n) throw InvalidArgument("nilpotent2: inconsistent spec sizes");
  for (const auto& [key, coords] : spec.commutators) {
    const auto [j, i] = key;
    if (!(1 <= i && i < j && j <= n)) throw InvalidArgument("nilpotent2: commutator index out of range");
    if (coords.size() != n) throw InvalidArgument("nilpotent2: commutator vector has wrong length");
    for (std::size_t t = 0; t < n; ++t) {
      if (coords[t] != 0 && t < s) throw InvalidArgument("nilpotent2: commutator outside the central part");
      if (coords[t] != 0 && j > s) throw InvalidArgument("nilpotent2: central generators must commute");
      for (auto w : {spec.orders[i - 1], spec.orders[j - 1]}) {
        if (w == 0 || coords[t] == 0) continue;
        const std::int64_t wt = spec.orders[t];
        if (wt == 0 || (w * coords[t]) % wt != 0) {
          throw InvalidArgument("nilpotent2: commutator incompatible with a finite order");
        }
      }
    }
  }
  const CoordinateSpace space(spec.orders);
  auto delta = [&](std::size_t j, std::size_t i, std::size_t t) -> std::int64_t {
    auto it = spec.commutators.find({j + 1, i + 1});
    return it == spec.commutators.end() ? 0 : it->second[t];
  };
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix right = identity_matrix(n);
    IntMatrix left = identity_matrix(n);
    if (i < s) {
      // a_j^x a_i = a_i a_j^x [a_j, a_i]^x for j > i, and symmetrically on the left
      for (std::size_t t = s; t < n; ++t) {
        for (std::size_t j = i + 1; j < s; ++j) right[t][j] += delta(j, i, t);
        for (std::size_t j = 0; j < i; ++j) left[t][j] += delta(i, j, t);
      }
    }
    gens.push_back(Generator{"a" + std::to_string(i + 1), space.affine_map(right, unit(n, i)),
                             space.affine_map(left, unit(n, i))});
  }
  return coordinate_presentation(space, std::move(gens), "nilpotent class 2, " + std::to_string(n) + " generators");
}

namespace {

std::int64_t determinant(IntMatrix a) {
  // fraction-free elimination (Bareiss)
  const std::size_t n = a.size();
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

GraphAutomaticPresentation semidirect_zn_z(const IntMatrix& A) {
  const std::size_t n = A.size();
  if (n < 1) throw InvalidArgument("semidirect_zn_z needs a non-empty matrix");
  for (const auto& row : A) {
    if (row.size() != n) throw InvalidArgument("semidirect_zn_z needs a square matrix");
  }
  const std::int64_t det = determinant(A);
  if (det != 1 && det != -1) throw InvalidArgument("semidirect_zn_z needs determinant +-1");
  const CoordinateSpace space = CoordinateSpace::integers(n + 1);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(translation(space, "e" + std::to_string(i + 1), i, false));
  IntMatrix t = identity_matrix(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
  }
  gens.push_back(Generator{"t", space.affine_map(t, unit(n + 1, n)), std::nullopt});
  return coordinate_presentation(space, std::move(gens), "Z^" + std::to_string(n) + " x| Z");
}

// ---------------------------------------------------------------------------
// B(1,p): tracks n (two's complement), m (sign then base-p digits, least
// significant first, no trailing zero), k (unary).

namespace {

constexpr std::size_t plus_letter = 0;
constexpr std::size_t minus_letter = 1;
std::size_t digit_letter(std::int64_t d) { return static_cast<std::size_t>(2 + d); }

std::shared_ptr<const Leaf> m_leaf(std::int64_t p) {
  std::vector<std::string> names{"+", "-"};
  for (std::int64_t d = 0; d < p; ++d) names.push_back(std::to_string(d));
  return std::make_shared<const Leaf>(std::move(names));
}

std::shared_ptr<const Leaf> unary_leaf() {
  static const auto leaf = std::make_shared<const Leaf>(std::vector<std::string>{"1"});
  return leaf;
}

// (m, k) tracks of a representative: canonical sign-magnitude m, and p not
// dividing m when k is non-empty.
Nfa bs_mk_domain(std::int64_t p) {
  const Alphabet a = Alphabet::from_leaves({m_leaf(p), unary_leaf()});
  const std::size_t mpad = a.pad_digit(0), kpad = a.pad_digit(1);
  // stage, negative, k running, k non-empty, m running, any digit, last digit non-zero
  using S = std::array<std::uint8_t, 7>;
  return explore<S>(
      a, {S{0, 0, 0, 0, 0, 0, 0}},
      [&](const S& s, auto emit) {
        for (Symbol col = 0; col < a.size(); ++col) {
          const std::size_t md = a.digit(col, 0), kd = a.digit(col, 1);
          S t = s;
          if (s[0] == 0) {
            if (md != plus_letter && md != minus_letter) continue;
            t = S{1, md == minus_letter, kd != kpad, kd != kpad, 1, 0, 0};
            emit(col, t);
            continue;
          }
          if (kd != kpad && !s[2]) continue;
          t[2] = kd != kpad;
          if (md == mpad) {
            t[4] = 0;
          } else {
            if (!s[4] || md < 2) continue;
            const std::size_t digit = md - 2;
            if (!s[5] && s[3] && digit == 0) continue;
            t[5] = 1;
            t[6] = digit != 0;
          }
          emit(col, t);
        }
      },
      [](const S& s) { return s[0] == 1 && (s[5] ? s[6] == 1 : s[1] == 0) && (!s[3] || s[5]); });
}

// (m, m', k): m' = m + p^k in sign-magnitude.
Nfa bs_add_power(std::int64_t p) {
  const Alphabet a = Alphabet::from_leaves({m_leaf(p), m_leaf(p), unary_leaf()});
  const std::size_t mpad = a.pad_digit(0), kpad = a.pad_digit(2);
  // stage, form (1: + +, 2: - -, 3: - +), carry, m on, m' on, k state (0 running, 1 ended last column, 2 ended before)
  using S = std::array<std::uint8_t, 6>;
  return explore<S>(
      a, {S{0, 0, 0, 0, 0, 0}},
      [&](const S& s, auto emit) {
        for (Symbol col = 0; col < a.size(); ++col) {
          const std::size_t d1 = a.digit(col, 0), d2 = a.digit(col, 1), kd = a.digit(col, 2);
          if (s[0] == 0) {
            if (d1 > minus_letter || d2 > minus_letter) continue;
            std::uint8_t form = 0;
            if (d1 == plus_letter && d2 == plus_letter) form = 1;
            if (d1 == minus_letter && d2 == minus_letter) form = 2;
            if (d1 == minus_letter && d2 == plus_letter) form = 3;
            if (form == 0) continue;
            emit(col, S{1, form, 0, 1, 1, static_cast<std::uint8_t>(kd == kpad ? 1 : 0)});
            continue;
          }
          S t = s;
          const std::int64_t pk = s[5] == 1 ? 1 : 0;
          if (s[5] == 0) {
            t[5] = kd == kpad ? 1 : 0;
          } else {
            if (kd != kpad) continue;
            t[5] = 2;
          }
          std::int64_t x = 0, y = 0;
          if (d1 == mpad) {
            t[3] = 0;
          } else {
            if (!s[3] || d1 < 2) continue;
            x = static_cast<std::int64_t>(d1) - 2;
          }
          if (d2 == mpad) {
            t[4] = 0;
          } else {
            if (!s[4] || d2 < 2) continue;
            y = static_cast<std::int64_t>(d2) - 2;
          }
          std::int64_t lhs = 0, rhs = 0;
          if (s[1] == 1) lhs = x + pk + s[2], rhs = y;
          if (s[1] == 2) lhs = y + pk + s[2], rhs = x;
          if (s[1] == 3) lhs = x + y + s[2], rhs = pk;
          const std::int64_t diff = lhs - rhs;
          if (diff < 0 || diff % p != 0 || diff / p > 1) continue;
          t[2] = static_cast<std::uint8_t>(diff / p);
          emit(col, t);
        }
      },
      [](const S& s) {
        if (s[0] != 1) return false;
        if (s[1] == 3) return (s[5] == 2 && s[2] == 0) || (s[5] == 1 && s[2] == 1);
        return s[5] == 2 && s[2] == 0;
      });
}

// (m, m') with m' = p m.
Nfa bs_times_p(std::int64_t p) {
  const Alphabet a = Alphabet::from_leaves({m_leaf(p), m_leaf(p)});
  const std::size_t pad = a.pad_digit(0);
  // stage (0 start, 1 after signs, 2 shifting, 3 done), held digit
  using S = std::array<std::size_t, 2>;
  return explore<S>(
      a, {S{0, 0}},
      [&](const S& s, auto emit) {
        for (Symbol col = 0; col < a.size(); ++col) {
          const std::size_t x = a.digit(col, 0), y = a.digit(col, 1);
          if (s[0] == 0) {
            if (x <= minus_letter && x == y) emit(col, S{1, 0});
          } else if (s[0] == 1) {
            if (x >= 2 && x != pad && y == digit_letter(0)) emit(col, S{2, x});
          } else if (s[0] == 2) {
            if (y != s[1]) continue;
            if (x == pad) {
              emit(col, S{3, 0});
            } else if (x >= 2) {
              emit(col, S{2, x});
            }
          }
        }
      },
      [](const S& s) { return s[0] == 1 || s[0] == 3; });
}

Nfa copy_relation(const Alphabet& leaf) {
  const Alphabet a = leaf.power(2);
  NfaBuilder b(a, 1);
  b.add_initial(0);
  b.set_accepting(0);
  for (Symbol x = 0; x < leaf.size(); ++x) {
    const std::array<std::size_t, 2> d{x, x};
    b.add_edge(0, a.compose(d), 0);
  }
  return b.build();
}

// (1^k, 1^(k-1)) for k >= 1
Nfa unary_decrement() {
  const Alphabet a = Alphabet::from_leaves({unary_leaf(), unary_leaf()});
  NfaBuilder b(a, 2);
  b.add_initial(0);
  b.set_accepting(1);
  const std::array<std::size_t, 2> both{0, 0}, last{0, 1};
  b.add_edge(0, a.compose(both), 0);
  b.add_edge(0, a.compose(last), 1);
  return b.build();
}

}  // namespace

const Alphabet& bs1n_alphabet(std::int64_t p) {
  static std::mutex mutex;
  static std::map<std::int64_t, Alphabet> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(p);
  if (it == cache.end()) {
    it = cache.emplace(p, Alphabet::from_leaves({binary_alphabet().leaf_ptr(0), m_leaf(p), unary_leaf()})).first;
  }
  return it->second;
}

Word bs1n_encode(std::int64_t p, const BsElement& e) {
  if (p < 2) throw InvalidArgument("bs1n needs p >= 2");
  if (e.k < 0 || (e.k > 0 && e.m % p == 0)) throw EncodingError("B(1,p) element is not in normal form");
  const Alphabet& sigma = bs1n_alphabet(p);
  const Alphabet m_alpha = sigma.slice(1, 1), k_alpha = sigma.slice(2, 1);
  const Word n_word = encode_int(e.n);
  Word m_word(m_alpha);
  m_word.symbols.push_back(e.m < 0 ? minus_letter : plus_letter);
  std::uint64_t mag = e.m < 0 ? static_cast<std::uint64_t>(-(e.m + 1)) + 1 : static_cast<std::uint64_t>(e.m);
  while (mag > 0) {
    m_word.symbols.push_back(digit_letter(static_cast<std::int64_t>(mag % static_cast<std::uint64_t>(p))));
    mag /= static_cast<std::uint64_t>(p);
  }
  Word k_word(k_alpha, std::vector<Symbol>(static_cast<std::size_t>(e.k), 0));
  return detail::merge_words(sigma, {{&n_word, {0}}, {&m_word, {1}}, {&k_word, {2}}});
}

BsElement bs1n_decode(std::int64_t p, const Word& w) {
  const Alphabet& sigma = bs1n_alphabet(p);
  require_same_alphabet(sigma, w.alphabet, "bs1n_decode");
  Word n_word, m_word, k_word;
  if (!detail::digits_to_word(detail::track_digits(w, 0), sigma.slice(0, 1), n_word) ||
      !detail::digits_to_word(detail::track_digits(w, 1), sigma.slice(1, 1), m_word) ||
      !detail::digits_to_word(detail::track_digits(w, 2), sigma.slice(2, 1), k_word)) {
    throw EncodingError("B(1,p) word has a track resuming after padding");
  }
  BsElement e;
  e.n = decode_int(Word(binary_alphabet(), n_word.symbols));
  if (m_word.empty() || m_word[0] > minus_letter) throw EncodingError("B(1,p) word lacks the sign of m");
  std::int64_t mag = 0, scale = 1;
  for (std::size_t i = 1; i < m_word.size(); ++i) {
    if (m_word[i] < 2) throw EncodingError("sign inside the digits of m");
    mag += static_cast<std::int64_t>(m_word[i] - 2) * scale;
    scale *= p;
  }
  if (m_word.size() > 1 && m_word.symbols.back() == digit_letter(0)) throw EncodingError("m has a trailing zero");
  if (m_word[0] == minus_letter && mag == 0) throw EncodingError("negative zero");
  e.m = m_word[0] == minus_letter ? -mag : mag;
  e.k = static_cast<std::int64_t>(k_word.size());
  if (e.k > 0 && e.m % p == 0) throw EncodingError("m divisible by p while k > 0");
  return e;
}

GraphAutomaticPresentation bs1n(std::int64_t p) {
  if (p < 2) throw InvalidArgument("bs1n needs p >= 2");
  if (p > 64) throw InvalidArgument("bs1n supports p <= 64");
  const Alphabet& sigma = bs1n_alphabet(p);
  const Alphabet m_alpha = sigma.slice(1, 1), k_alpha = sigma.slice(2, 1);
  const Nfa ints = int_domain().to_nfa();
  const Nfa mk = bs_mk_domain(p);
  const RegularRelation domain = detail::assemble(sigma, 1, {detail::place(ints, {0}), detail::place(mk, {1, 2})});
  const Nfa& dom = domain.nfa();
  auto with_domain = [&](std::vector<Part> parts) {
    parts.push_back(detail::place(dom, {0, 1, 2}));
    parts.push_back(detail::place(dom, {3, 4, 5}));
    return detail::assemble(sigma, 2, parts);
  };
  const RegularRelation succ = affine_relation({{1}}, std::vector<std::int64_t>{1});
  const RegularRelation& same_int = presburger_structure().equality();

  const RegularRelation e_b = with_domain({detail::place(same_int.nfa(), {0, 3}),
                                           detail::place(copy_relation(k_alpha), {2, 5}),
                                           detail::place(bs_add_power(p), {1, 4, 2})});
  const RegularRelation a_shift = with_domain({detail::place(succ.nfa(), {0, 3}),
                                               detail::place(copy_relation(m_alpha), {1, 4}),
                                               detail::place(unary_decrement(), {2, 5})});
  const RegularRelation a_scale = with_domain({detail::place(succ.nfa(), {0, 3}),
                                               detail::place(bs_times_p(p), {1, 4}),
                                               detail::place(detail::empty_word(k_alpha.power(2)), {2, 5})});
  std::vector<Generator> gens{{"a", rel_union(a_shift, a_scale), std::nullopt}, {"b", e_b, std::nullopt}};
  return GraphAutomaticPresentation(sigma, domain.dfa(), bs1n_encode(p, {}), std::move(gens),
                                    "B(1," + std::to_string(p) + ")");
}

// ---------------------------------------------------------------------------

std::vector<std::string> free_generator_names(std::size_t rank) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i) {
    names.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  }
  return names;
}

namespace {

Alphabet free_alphabet(std::size_t rank) {
  std::vector<std::string> letters = free_generator_names(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    letters.push_back(rank <= 26 ? std::string(1, static_cast<char>('A' + i)) : "X" + std::to_string(i + 1));
  }
  return Alphabet(letters);
}

Nfa reduced_words(const Alphabet& a, std::size_t rank) {
  const std::size_t none = a.size();
  return explore<std::size_t>(
      a, {none},
      [&](std::size_t last, auto emit) {
        for (Symbol x = 0; x < a.size(); ++x) {
          if (last == none || x != (last + rank) % (2 * rank)) emit(x, x);
        }
      },
      [](std::size_t) { return true; });
}

// {(u, u x)} for the letter x (a generator or an inverse), on reduced words.
Nfa free_right(const Alphabet& a, std::size_t rank, Symbol x) {
  const Alphabet pair = a.power(2);
  const std::size_t pad = a.size(), none = a.size(), done = a.size() + 1;
  const Symbol x_inv = (x + rank) % (2 * rank);
  return explore<std::size_t>(
      pair, {none},
      [&](std::size_t last, auto emit) {
        if (last == done) return;
        for (Symbol y = 0; y < a.size(); ++y) {
          const std::array<std::size_t, 2> d{y, y};
          emit(pair.compose(d), y);
        }
        if (last != x_inv) {
          const std::array<std::size_t, 2> d{pad, x};
          emit(pair.compose(d), done);
        }
        if (last != x) {
          const std::array<std::size_t, 2> d{x_inv, pad};
          emit(pair.compose(d), done);
        }
      },
      [&](std::size_t s) { return s == done; });
}

// {(u, x u)}
Nfa free_left(const Alphabet& a, std::size_t rank, Symbol x) {
  const Alphabet pair = a.power(2);
  const std::size_t pad = a.size();
  const Symbol x_inv = (x + rank) % (2 * rank);
  // (mode, held letter): mode 0 start, 1 v lags u by one, 2 v leads u by one, 3 done
  using S = std::array<std::size_t, 2>;
  return explore<S>(
      pair, {S{0, 0}},
      [&](const S& s, auto emit) {
        auto col = [&](std::size_t u, std::size_t v) {
          const std::array<std::size_t, 2> d{u, v};
          return pair.compose(d);
        };
        if (s[0] == 0) {
          emit(col(pad, x), S{3, 0});
          for (Symbol u = 0; u < a.size(); ++u) {
            if (u != x_inv) emit(col(u, x), S{1, u});
          }
          emit(col(x_inv, pad), S{3, 0});
          for (Symbol v = 0; v < a.size(); ++v) emit(col(x_inv, v), S{2, v});
        } else if (s[0] == 1) {
          emit(col(pad, s[1]), S{3, 0});
          for (Symbol u = 0; u < a.size(); ++u) emit(col(u, s[1]), S{1, u});
        } else if (s[0] == 2) {
          emit(col(s[1], pad), S{3, 0});
          for (Symbol v = 0; v < a.size(); ++v) emit(col(s[1], v), S{2, v});
        }
      },
      [](const S& s) { return s[0] == 3; });
}

RegularRelation on_domain(const Alphabet& base, const Nfa& rel, const Nfa& domain) {
  const std::size_t w = base.track_count();
  return detail::assemble(base, 2,
                          {detail::place(rel, detail::iota(0, 2 * w)), detail::place(domain, detail::iota(0, w)),
                           detail::place(domain, detail::iota(w, w))});
}

}  // namespace

GraphAutomaticPresentation free_group(std::size_t rank) {
  if (rank < 1) throw InvalidArgument("free group needs rank >= 1");
  const Alphabet a = free_alphabet(rank);
  const Nfa dom = reduced_words(a, rank);
  const auto names = free_generator_names(rank);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < rank; ++i) {
    gens.push_back(Generator{names[i], on_domain(a, free_right(a, rank, i), dom),
                             on_domain(a, free_left(a, rank, i), dom)});
  }
  return GraphAutomaticPresentation(a, determinize(dom), Word(a), std::move(gens), "F_" + std::to_string(rank));
}

AutomaticStructure gamma_free(std::size_t rank) {
  const GraphAutomaticPresentation f = free_group(rank);
  AutomaticStructure s("Gamma_free(" + std::to_string(rank) + ")", f.domain());
  for (const auto& g : f.generators()) s = s.with_relation("E_" + g.name, g.right, false);
  const RegularRelation square = full_relation(f.domain_relation().nfa(), 2);
  s = s.with_relation("Prefix", rel_intersect(prefix_order(f.base()), square), false);
  s = s.with_relation("EqLen", rel_intersect(equal_length(f.base()), square), false);
  return s;
}

// ---------------------------------------------------------------------------
// Wreath product G wr Z: tracks i (two's complement) and a tape of group
// elements, one of them marked as position 0.

namespace {

std::shared_ptr<const Leaf> tape_leaf(const FiniteGroupTable& g) {
  std::vector<std::string> names = g.names();
  for (const auto& n : g.names()) names.push_back(n + "*");
  return std::make_shared<const Leaf>(std::move(names));
}

Nfa tape_domain(const Alphabet& a, const FiniteGroupTable& g) {
  const std::size_t n = g.order(), one = g.identity();
  // stage (0 start, 1 running), star seen, last letter an unmarked identity
  using S = std::array<std::uint8_t, 3>;
  return explore<S>(
      a, {S{0, 0, 0}},
      [&](const S& s, auto emit) {
        for (Symbol x = 0; x < a.size(); ++x) {
          const bool star = x >= n;
          if (star && s[1]) continue;
          if (s[0] == 0 && !star && x == one) continue;
          emit(x, S{1, static_cast<std::uint8_t>(s[1] || star), static_cast<std::uint8_t>(!star && x == one)});
        }
      },
      [](const S& s) { return s[0] == 1 && s[1] && !s[2]; });
}

// multiplies the marked letter by h on the right
Nfa tape_multiply(const Alphabet& a, const FiniteGroupTable& g, std::size_t h) {
  const Alphabet pair = a.power(2);
  const std::size_t n = g.order();
  NfaBuilder b(pair, 2);
  b.add_initial(0);
  b.set_accepting(1);
  for (std::size_t x = 0; x < n; ++x) {
    const std::array<std::size_t, 2> same{x, x};
    b.add_edge(0, pair.compose(same), 0);
    b.add_edge(1, pair.compose(same), 1);
    const std::array<std::size_t, 2> marked{n + x, n + g.multiply(x, h)};
    b.add_edge(0, pair.compose(marked), 1);
  }
  return b.build();
}

// content moves one position up; the mark stays at position 0
Nfa tape_shift(const Alphabet& a, const FiniteGroupTable& g) {
  const Alphabet pair = a.power(2);
  const std::size_t n = g.order(), one = g.identity(), pad = a.size();
  // states: 0 copying, 1 after (x, x*), 2 copying after the old mark, 3 end,
  // 4+y: delayed copy holding y, 4+n start, 5+n the fixed identity tape
  const State start = 4 + n, fixed = 5 + n;
  NfaBuilder b(pair, 6 + n);
  b.add_initial(start);
  b.set_accepting(2);
  b.set_accepting(3);
  b.set_accepting(fixed);
  auto col = [&](std::size_t u, std::size_t v) {
    const std::array<std::size_t, 2> d{u, v};
    return pair.compose(d);
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (State q : {State{0}, start}) {
      b.add_edge(q, col(x, x), 0);
      b.add_edge(q, col(x, n + x), 1);
    }
    b.add_edge(1, col(n + x, x), 2);
    b.add_edge(2, col(x, x), 2);
    // the mark at the front: everything moves one column right
    b.add_edge(start, col(n + x, n + one), 4 + x);
    for (std::size_t y = 0; y < n; ++y) b.add_edge(4 + y, col(x, y), 4 + x);
    b.add_edge(4 + x, col(pad, x), 3);
  }
  b.add_edge(1, col(n + one, pad), 3);
  // the identity tape is fixed
  b.add_edge(start, col(n + one, n + one), fixed);
  return b.build();
}

}  // namespace

Word wreath_encode(const FiniteGroupTable& g, const WreathElement& e) {
  const std::int64_t size = static_cast<std::int64_t>(e.tape.size());
  std::int64_t lo = 0, hi = 0;
  for (std::int64_t i = 0; i < size; ++i) {
    if (e.tape[i] >= g.order()) throw EncodingError("tape entry out of range");
    if (e.tape[i] != g.identity()) {
      lo = std::min(lo, e.low + i);
      hi = std::max(hi, e.low + i);
    }
  }
  const Alphabet sigma = Alphabet::from_leaves({binary_alphabet().leaf_ptr(0), tape_leaf(g)});
  const Alphabet tape_alpha = sigma.slice(1, 1);
  Word tape(tape_alpha);
  for (std::int64_t pos = lo; pos <= hi; ++pos) {
    const std::int64_t i = pos - e.low;
    std::size_t x = (i >= 0 && i < size) ? e.tape[i] : g.identity();
    if (pos == 0) x += g.order();
    tape.symbols.push_back(x);
  }
  const Word shift = encode_int(e.shift);
  return detail::merge_words(sigma, {{&shift, {0}}, {&tape, {1}}});
}

WreathElement wreath_decode(const FiniteGroupTable& g, const Word& w) {
  const Alphabet sigma = Alphabet::from_leaves({binary_alphabet().leaf_ptr(0), tape_leaf(g)});
  require_same_alphabet(sigma, w.alphabet, "wreath_decode");
  Word shift, tape;
  if (!detail::digits_to_word(detail::track_digits(w, 0), sigma.slice(0, 1), shift) ||
      !detail::digits_to_word(detail::track_digits(w, 1), sigma.slice(1, 1), tape)) {
    throw EncodingError("wreath word has a track resuming after padding");
  }
  WreathElement e;
  e.shift = decode_int(Word(binary_alphabet(), shift.symbols));
  std::int64_t mark = -1;
  for (std::size_t i = 0; i < tape.size(); ++i) {
    std::size_t x = tape[i];
    if (x >= g.order()) {
      if (mark >= 0) throw EncodingError("two marks on the tape");
      mark = static_cast<std::int64_t>(i);
      x -= g.order();
    }
    e.tape.push_back(x);
  }
  if (mark < 0) throw EncodingError("tape without mark");
  e.low = -mark;
  return e;
}

GraphAutomaticPresentation wreath_finite_by_z(const FiniteGroupTable& g) {
  const Alphabet sigma = Alphabet::from_leaves({binary_alphabet().leaf_ptr(0), tape_leaf(g)});
  const Alphabet tape_alpha = sigma.slice(1, 1);
  const Nfa ints = int_domain().to_nfa();
  const RegularRelation domain =
      detail::assemble(sigma, 1, {detail::place(ints, {0}), detail::place(tape_domain(tape_alpha, g), {1})});
  const Nfa& dom = domain.nfa();
  auto with_domain = [&](std::vector<Part> parts) {
    parts.push_back(detail::place(dom, {0, 1}));
    parts.push_back(detail::place(dom, {2, 3}));
    return detail::assemble(sigma, 2, parts);
  };
  const RegularRelation& same_int = presburger_structure().equality();
  const RegularRelation succ = affine_relation({{1}}, std::vector<std::int64_t>{1});
  std::vector<Generator> gens;
  std::set<std::string> names(g.names().begin(), g.names().end());
  for (std::size_t h = 0; h < g.order(); ++h) {
    if (h == g.identity()) continue;
    gens.push_back(Generator{g.names()[h],
                             with_domain({detail::place(same_int.nfa(), {0, 2}),
                                          detail::place(tape_multiply(tape_alpha, g, h), {1, 3})}),
                             std::nullopt});
  }
  const std::string shift_name = names.count("t") ? "shift" : "t";
  gens.push_back(Generator{shift_name,
                           with_domain({detail::place(succ.nfa(), {0, 2}),
                                        detail::place(tape_shift(tape_alpha, g), {1, 3})}),
                           std::nullopt});
  return GraphAutomaticPresentation(sigma, domain.dfa(), wreath_encode(g, {}), std::move(gens),
                                    "G wr Z, |G| = " + std::to_string(g.order()));
}

}  // namespace cgauto
