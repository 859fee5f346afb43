#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <deque>

#include "edrep/character.hpp"

using namespace edrep;

namespace {

std::vector<long> degrees(const CharacterTable& t) {
  std::vector<long> d;
  for (const Character& chi : t.irreducibles) d.push_back(chi.degree());
  return d;
}

// Extends matrices given on the generators to all elements by BFS over
// products; the test-side construction of explicit representations.
std::vector<CycloMat> rep_from_generators(const FiniteGroup& g,
                                          const std::vector<CycloMat>& gens) {
  size_t n = gens[0].size();
  auto mul = [n](const CycloMat& a, const CycloMat& b) {
    CycloMat c(n, std::vector<CycloNum>(n, CycloNum(0)));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  CycloMat id(n, std::vector<CycloNum>(n, CycloNum(0)));
  for (size_t i = 0; i < n; ++i) id[i][i] = CycloNum(1);

  std::vector<CycloMat> rep(g.order());
  std::vector<bool> have(g.order(), false);
  rep[g.identity()] = id;
  have[g.identity()] = true;
  std::vector<int> gen_idx;
  for (const Perm& p : g.generators()) gen_idx.push_back(g.index_of(p));
  std::deque<int> queue = {g.identity()};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (size_t t = 0; t < gen_idx.size(); ++t) {
      int y = g.mul(x, gen_idx[t]);
      if (have[y]) continue;
      rep[y] = mul(rep[x], gens[t]);
      have[y] = true;
      queue.push_back(y);
    }
  }
  return rep;
}

FiniteGroup s3() { return from_generators({{1, 2, 0}, {1, 0, 2}}); }
FiniteGroup c2() { return from_generators({{1, 0}}); }
FiniteGroup c3() { return from_generators({{1, 2, 0}}); }

const Character& two_dim(const CharacterTable& t) {
  for (const Character& chi : t.irreducibles)
    if (chi.degree() == 2) return chi;
  FAIL("no 2-dimensional irreducible");
  return t.irreducibles[0];
}

}  // namespace

TEST_CASE("C2 table") {
  FiniteGroup g = c2();
  CharacterTable t = character_table(g);
  CHECK(degrees(t) == std::vector<long>{1, 1});
  for (const Character& chi : t.irreducibles)
    for (const CycloNum& v : chi.values)
      CHECK((v == CycloNum(1) || v == CycloNum(-1)));
}

TEST_CASE("S3 table against the explicit standard representation") {
  FiniteGroup g = s3();
  CharacterTable t = character_table(g);
  CHECK(degrees(t) == std::vector<long>{1, 1, 2});

  // permutation character of the 3-point action: fixed-point counts
  Character perm;
  perm.group = &g;
  for (int c = 0; c < g.num_classes(); ++c) {
    const Perm& rep = g.elements()[g.class_rep(c)];
    long fixed = 0;
    for (size_t x = 0; x < rep.size(); ++x)
      if (rep[x] == static_cast<int>(x)) ++fixed;
    perm.values.push_back(CycloNum(fixed));
  }
  std::vector<long> m = decompose(perm, t);
  // trivial + standard, nothing on the sign character
  for (size_t i = 0; i < t.irreducibles.size(); ++i) {
    const Character& chi = t.irreducibles[i];
    bool trivial = true;
    for (const CycloNum& v : chi.values)
      if (v != CycloNum(1)) trivial = false;
    if (chi.degree() == 2)
      CHECK(m[i] == 1);
    else
      CHECK(m[i] == (trivial ? 1 : 0));
  }
}

TEST_CASE("Q8 table") {
  FiniteGroup g = schilling_two_group(4);
  CharacterTable t = character_table(g);
  CHECK(degrees(t) == std::vector<long>{1, 1, 1, 1, 2});
  // all values rational
  for (const Character& chi : t.irreducibles)
    for (const CycloNum& v : chi.values) CHECK(v.is_rational());
}

TEST_CASE("trivial group short-circuit") {
  FiniteGroup g = from_generators({{0, 1}});  // identity only
  CharacterTable t = character_table(g);
  CHECK(t.irreducibles.size() == 1);
  CHECK(t.irreducibles[0].degree() == 1);
}

TEST_CASE("inner products") {
  FiniteGroup g = s3();
  CharacterTable t = character_table(g);
  CHECK(inner_product(t.irreducibles[0], t.irreducibles[0]) == 1);
  CHECK(inner_product(t.irreducibles[0], t.irreducibles[1]) == 0);
  CHECK(inner_product(two_dim(t), two_dim(t)) == 1);

  FiniteGroup h = c2();
  CharacterTable th = character_table(h);
  CHECK_THROWS_AS(inner_product(t.irreducibles[0], th.irreducibles[0]), Error);
}

TEST_CASE("fs indicators with elementwise oracle") {
  FiniteGroup q8 = schilling_two_group(4);
  CharacterTable tq = character_table(q8);
  const Character& chi2 = two_dim(tq);
  CHECK(fs_indicator(chi2) == -1);
  // independent oracle: sum chi(g^2) elementwise over all group elements
  {
    CycloNum acc(0);
    for (long x = 0; x < q8.order(); ++x) {
      int sq = q8.mul(static_cast<int>(x), static_cast<int>(x));
      acc += chi2.values[q8.class_of(sq)];
    }
    CHECK(acc == CycloNum(-q8.order()));
  }

  FiniteGroup gs3 = s3();
  CharacterTable ts = character_table(gs3);
  CHECK(fs_indicator(two_dim(ts)) == 1);

  FiniteGroup g3 = c3();
  CharacterTable t3 = character_table(g3);
  bool found_zero = false;
  for (const Character& chi : t3.irreducibles)
    if (inner_product(chi, t3.irreducibles[0]) == 0 && chi.degree() == 1 &&
        !(chi.values[1] == CycloNum(1))) {
      CHECK(fs_indicator(chi) == 0);
      found_zero = true;
    }
  CHECK(found_zero);

  // reducible input rejected
  Character sum = character_sum({&ts.irreducibles[0], &ts.irreducibles[1]});
  CHECK_THROWS_AS(fs_indicator(sum), Error);
}

TEST_CASE("character fields") {
  FiniteGroup q8 = schilling_two_group(4);
  CharacterTable tq = character_table(q8);
  BaseField kchi = character_field(two_dim(tq), BaseField::rationals());
  CHECK(kchi.degree_over_q() == 1);

  FiniteGroup g5 = from_generators({{1, 2, 3, 4, 0}});
  CharacterTable t5 = character_table(g5);
  const Character* faithful = nullptr;
  for (const Character& chi : t5.irreducibles)
    if (chi.values[1] == CycloNum::zeta(5)) faithful = &chi;
  REQUIRE(faithful != nullptr);
  CHECK(character_field(*faithful, BaseField::rationals()).degree_over_q() == 4);
  // k already contains the values
  BaseField k5 = BaseField::cyclotomic(5);
  CHECK(field_degree(character_field(*faithful, k5), k5) == 1);
}

TEST_CASE("galois orbits") {
  FiniteGroup g3 = c3();
  CharacterTable t3 = character_table(g3);
  std::vector<std::vector<int>> orbits =
      galois_orbits(t3, BaseField::rationals());
  REQUIRE(orbits.size() == 2);
  CHECK((orbits[0].size() == 1 || orbits[1].size() == 1));
  CHECK(orbits[0].size() + orbits[1].size() == 3);

  FiniteGroup q8 = schilling_two_group(4);
  CharacterTable tq = character_table(q8);
  CHECK(galois_orbits(tq, BaseField::rationals()).size() == 5);

  FiniteGroup g5 = from_generators({{1, 2, 3, 4, 0}});
  CharacterTable t5 = character_table(g5);
  CHECK(galois_orbits(t5, BaseField::cyclotomic(5)).size() == 5);
  CHECK(galois_orbits(t5, BaseField::rationals()).size() == 2);
}

TEST_CASE("decompose") {
  FiniteGroup g = s3();
  CharacterTable t = character_table(g);
  // regular character: |G| at identity, 0 elsewhere
  Character reg;
  reg.group = &g;
  reg.values.assign(g.num_classes(), CycloNum(0));
  reg.values[0] = CycloNum(g.order());
  CHECK(decompose(reg, t) == std::vector<long>{1, 1, 2});

  FiniteGroup h = c2();
  CharacterTable th = character_table(h);
  size_t triv = th.irreducibles[0].values[1] == CycloNum(1) ? 0 : 1;
  Character triple = character_scale(th.irreducibles[triv], 3);
  std::vector<long> m = decompose(triple, th);
  std::vector<long> expect = {0, 0};
  expect[triv] = 3;
  CHECK(m == expect);

  // a class function that is not a character
  Character bad;
  bad.group = &g;
  bad.values = {CycloNum(1), CycloNum(Rat(1, 2)), CycloNum(0)};
  CHECK_THROWS_AS(decompose(bad, t), Error);
}

TEST_CASE("envelope dimensions: character formula vs explicit matrices") {
  // Q8: a -> diag(i, -i), y -> [[0,-1],[1,0]] over Q(i)
  FiniteGroup q8 = schilling_two_group(4);
  CharacterTable tq = character_table(q8);
  CycloNum i4 = CycloNum::zeta(4);
  CycloMat ma = {{i4, CycloNum(0)}, {CycloNum(0), -i4}};
  CycloMat my = {{CycloNum(0), CycloNum(-1)}, {CycloNum(1), CycloNum(0)}};
  std::vector<CycloMat> rep = rep_from_generators(q8, {ma, my});

  Character chi = character_of_rep(rep, q8);
  CHECK(chi.values == two_dim(tq).values);

  BaseField q = BaseField::rationals();
  CHECK(envelope_dimension(two_dim(tq), q, tq) == 4);
  CHECK(envelope_matrix_dimension(rep, q, q8) == 4);

  // over Q(i) the envelope is the full 2x2 matrix algebra: dim 4 over Q(i)
  CHECK(envelope_matrix_dimension(rep, BaseField::cyclotomic(4), q8) == 4);

  // trivial representation
  FiniteGroup g3 = c3();
  CharacterTable t3 = character_table(g3);
  std::vector<CycloMat> triv(g3.order(), {{CycloNum(1)}});
  CHECK(envelope_matrix_dimension(triv, q, g3) == 1);

  // regular representation of C2: span of I and the swap matrix
  FiniteGroup g2 = c2();
  CycloMat swap = {{CycloNum(0), CycloNum(1)}, {CycloNum(1), CycloNum(0)}};
  std::vector<CycloMat> reg = rep_from_generators(g2, {swap});
  CHECK(envelope_matrix_dimension(reg, q, g2) == 2);

  // regular character of C3 over Q: 1 + 2
  Character reg3;
  reg3.group = &g3;
  reg3.values.assign(g3.num_classes(), CycloNum(0));
  reg3.values[0] = CycloNum(3);
  CHECK(envelope_dimension(reg3, q, t3) == 3);
  for (const Character& chi : t3.irreducibles)
    if (chi.values[1] == CycloNum(1))  // trivial character
      CHECK(envelope_dimension(chi, q, t3) == 1);

  // rejects a non-homomorphism
  std::vector<CycloMat> broken = rep;
  broken[3][0][0] += CycloNum(1);
  CHECK_THROWS_AS(envelope_matrix_dimension(broken, q, q8), Error);
}

TEST_CASE("quaternion_semidirect(3) table") {
  FiniteGroup g = quaternion_semidirect(3);
  CharacterTable t = character_table(g);
  std::vector<long> d = degrees(t);
  std::sort(d.begin(), d.end());
  CHECK(d == std::vector<long>{1, 1, 1, 1, 2, 2});
}
