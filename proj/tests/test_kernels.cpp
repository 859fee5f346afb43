#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "edrep/kernels.hpp"

using namespace edrep;

TEST_CASE("class product table: parallel equals serial equals brute force") {
  FiniteGroup s3 = from_generators({{1, 2, 0}, {1, 0, 2}});
  FiniteGroup q8 = schilling_two_group(4);
  FiniteGroup g12 = quaternion_semidirect(3);

  for (const FiniteGroup* g : {&s3, &q8, &g12}) {
    auto par = class_product_table(*g);
    auto ser = class_product_table_serial(*g);
    CHECK(par == ser);

    // oracle: count pairs (x, y) with x in C_i, y in C_j, xy = z_k directly
    const long r = g->num_classes();
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j)
        for (long k = 0; k < r; ++k) {
          long count = 0;
          int zk = g->class_rep(static_cast<int>(k));
          for (int x : g->classes()[i])
            for (int y : g->classes()[j])
              if (g->mul(x, y) == zk) ++count;
          CHECK(par[i][j * r + k] == count);
        }
  }
}

TEST_CASE("class sums commute through the table") {
  // sum_k a_{ijk} |C_k| = |C_i| |C_j| (total pair count)
  FiniteGroup g = quaternion_semidirect(7);
  auto tables = class_product_table(g);
  const long r = g.num_classes();
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) {
      long total = 0;
      for (long k = 0; k < r; ++k)
        total += tables[i][j * r + k] * g.class_size(static_cast<int>(k));
      CHECK(total == g.class_size(static_cast<int>(i)) *
                         g.class_size(static_cast<int>(j)));
    }
}

TEST_CASE("rational rank: parallel equals serial, known ranks") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    long rows = 3 + rng() % 6, cols = 3 + rng() % 6, inner = 1 + rng() % 3;
    // random product of (rows x inner) * (inner x cols): rank <= inner
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(inner));
    std::vector<std::vector<Rat>> b(inner, std::vector<Rat>(cols));
    for (auto& row : a)
      for (Rat& x : row) x = Rat(static_cast<long>(rng() % 9) - 4,
                                 1 + static_cast<long>(rng() % 4));
    for (auto& row : b)
      for (Rat& x : row) x = Rat(static_cast<long>(rng() % 9) - 4,
                                 1 + static_cast<long>(rng() % 4));
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols, Rat(0)));
    for (long i = 0; i < rows; ++i)
      for (long k = 0; k < inner; ++k)
        for (long j = 0; j < cols; ++j) m[i][j] += a[i][k] * b[k][j];

    long rp = rank_rational(m);
    long rs = rank_rational_serial(m);
    CHECK(rp == rs);
    CHECK(rp <= inner);
  }

  std::vector<std::vector<Rat>> id(5, std::vector<Rat>(5, Rat(0)));
  for (int i = 0; i < 5; ++i) id[i][i] = 1;
  CHECK(rank_rational(id) == 5);
  CHECK(rank_rational({}) == 0);
  CHECK(rank_rational({{Rat(0), Rat(0)}}) == 0);
}
