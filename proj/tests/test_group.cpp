#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "edrep/group.hpp"
#include "edrep/numutil.hpp"

using namespace edrep;

namespace {

// independent closure oracle: multiply words until stable, raw composition
std::set<Perm> brute_closure(const std::vector<Perm>& gens) {
  auto compose = [](const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
    return r;
  };
  Perm id(gens[0].size());
  for (size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  std::set<Perm> seen = {id};
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<Perm> cur = seen;
    for (const Perm& a : cur)
      for (const Perm& g : gens)
        if (seen.insert(compose(a, g)).second) grew = true;
  }
  return seen;
}

// independent conjugacy-class count
long brute_class_count(const FiniteGroup& g) {
  long n = g.order();
  std::vector<int> cls(n, -1);
  long count = 0;
  for (long x = 0; x < n; ++x) {
    if (cls[x] != -1) continue;
    for (long c = 0; c < n; ++c) {
      int y = g.mul(g.mul(static_cast<int>(c), static_cast<int>(x)),
                    g.inverse(static_cast<int>(c)));
      cls[y] = static_cast<int>(count);
    }
    ++count;
  }
  return count;
}

void check_class_invariants(const FiniteGroup& g) {
  long total = 0;
  for (int c = 0; c < g.num_classes(); ++c) {
    total += g.class_size(c);
    CHECK(g.order() % g.class_size(c) == 0);
  }
  CHECK(total == g.order());
}

}  // namespace

TEST_CASE("single transposition generates C2") {
  FiniteGroup g = from_generators({{1, 0}});
  CHECK(g.order() == 2);
  CHECK(g.num_classes() == 2);
  CHECK(g.exponent() == 2);
}

TEST_CASE("S3 closure, classes, exponent") {
  std::vector<Perm> gens = {{1, 2, 0}, {1, 0, 2}};
  FiniteGroup g = from_generators(gens);
  CHECK(g.order() == static_cast<long>(brute_closure(gens).size()));
  CHECK(g.order() == 6);
  CHECK(g.num_classes() == 3);
  CHECK(g.exponent() == 6);
  check_class_invariants(g);
}

TEST_CASE("empty and malformed input rejected") {
  CHECK_THROWS_AS(from_generators({}), Error);
  CHECK_THROWS_AS(from_generators({{0, 0}}), Error);
  CHECK_THROWS_AS(from_generators({{1, 2, 0}, {1, 0}}), Error);
}

TEST_CASE("closure cap") {
  // C_12 with cap 10
  CHECK_THROWS_AS(
      from_generators({{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 0}}, 10), Error);
}

TEST_CASE("quaternion_semidirect") {
  FiniteGroup g3 = quaternion_semidirect(3);
  CHECK(g3.order() == 12);
  CHECK(g3.exponent() == 12);
  CHECK(g3.num_classes() == brute_class_count(g3));
  check_class_invariants(g3);

  FiniteGroup g7 = quaternion_semidirect(7);
  CHECK(g7.order() == 28);
  CHECK(g7.num_classes() == brute_class_count(g7));

  CHECK_THROWS_AS(quaternion_semidirect(5), Error);
  CHECK_THROWS_AS(quaternion_semidirect(4), Error);

  // defining relations: a^p = 1, y^4 = 1, y a y^-1 = a^-1
  int a = g3.index_of(g3.generators()[0]);
  int y = g3.index_of(g3.generators()[1]);
  CHECK(g3.element_order(a) == 3);
  CHECK(g3.element_order(y) == 4);
  int lhs = g3.mul(g3.mul(y, a), g3.inverse(y));
  CHECK(lhs == g3.inverse(a));
  // y^2 is central of order 2
  int y2 = g3.mul(y, y);
  CHECK(g3.element_order(y2) == 2);
  for (long x = 0; x < g3.order(); ++x)
    CHECK(g3.mul(y2, static_cast<int>(x)) == g3.mul(static_cast<int>(x), y2));
}

TEST_CASE("schilling_two_group") {
  FiniteGroup q8 = schilling_two_group(4);
  CHECK(q8.order() == 8);
  CHECK(q8.exponent() == 4);
  // Q8: exactly one element of order 2
  long order2 = 0;
  for (long x = 0; x < q8.order(); ++x)
    if (q8.element_order(static_cast<int>(x)) == 2) ++order2;
  CHECK(order2 == 1);
  CHECK(q8.num_classes() == 5);

  FiniteGroup q16 = schilling_two_group(8);
  CHECK(q16.order() == 16);
  // relations: y^2 = a^(s/2), y a y^-1 = a^-1
  int a = q16.index_of(q16.generators()[0]);
  int y = q16.index_of(q16.generators()[1]);
  CHECK(q16.element_order(a) == 8);
  CHECK(q16.mul(y, y) == q16.power(a, 4));
  CHECK(q16.mul(q16.mul(y, a), q16.inverse(y)) == q16.inverse(a));
  CHECK(q16.num_classes() == brute_class_count(q16));

  CHECK_THROWS_AS(schilling_two_group(6), Error);
  CHECK_THROWS_AS(schilling_two_group(2), Error);
}

TEST_CASE("direct products") {
  FiniteGroup c2 = from_generators({{1, 0}});
  FiniteGroup single = direct_product({c2});
  CHECK(single.order() == 2);

  FiniteGroup c3 = from_generators({{1, 2, 0}});
  FiniteGroup c6 = direct_product({c2, c3});
  CHECK(c6.order() == 6);
  CHECK(c6.exponent() == 6);
  CHECK(c6.num_classes() == 6);  // abelian

  FiniteGroup q8 = schilling_two_group(4);
  FiniteGroup prod = direct_product({q8, q8});
  CHECK(prod.order() == 64);
  // class count of a product is the product of class counts
  CHECK(prod.num_classes() == q8.num_classes() * q8.num_classes());
  check_class_invariants(prod);

  CHECK_THROWS_AS(direct_product({}), Error);
  CHECK_THROWS_AS(direct_product({q8, q8, q8, q8, q8}), Error);  // cap
}

TEST_CASE("power_class_map composition law") {
  for (const FiniteGroup& g :
       {quaternion_semidirect(3), schilling_two_group(8),
        from_generators({{1, 2, 0}, {1, 0, 2}})}) {
    long e = g.exponent();
    std::vector<int> id_map = g.power_class_map(1);
    for (int c = 0; c < g.num_classes(); ++c) CHECK(id_map[c] == c);
    for (long j : units_mod(e)) {
      for (long jp : units_mod(e)) {
        std::vector<int> a = g.power_class_map(j);
        std::vector<int> b = g.power_class_map(jp);
        std::vector<int> ab = g.power_class_map((j * jp) % e);
        for (int c = 0; c < g.num_classes(); ++c) CHECK(ab[c] == a[b[c]]);
      }
    }
    CHECK_THROWS_AS(g.power_class_map(2), Error);  // exponent even throughout
  }
}
