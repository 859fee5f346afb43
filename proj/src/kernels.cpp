#include "edrep/kernels.hpp"

#include <utility>

namespace edrep {

namespace {

inline void class_table_cell(const FiniteGroup& g, int i, int k, long r,
                             std::vector<std::vector<long>>& tables) {
  int zk = g.class_rep(k);
  for (int x : g.classes()[i]) {
    int j = g.class_of(g.mul(g.inverse(x), zk));
    ++tables[i][static_cast<size_t>(j) * r + k];
  }
}

}  // namespace

std::vector<std::vector<long>> class_product_table(const FiniteGroup& g) {
  const long r = g.num_classes();
  std::vector<std::vector<long>> tables(r, std::vector<long>(r * r, 0));
#pragma omp parallel for schedule(dynamic)
  for (long cell = 0; cell < r * r; ++cell)
    class_table_cell(g, static_cast<int>(cell / r), static_cast<int>(cell % r),
                     r, tables);
  return tables;
}

std::vector<std::vector<long>> class_product_table_serial(
    const FiniteGroup& g) {
  const long r = g.num_classes();
  std::vector<std::vector<long>> tables(r, std::vector<long>(r * r, 0));
  for (long cell = 0; cell < r * r; ++cell)
    class_table_cell(g, static_cast<int>(cell / r), static_cast<int>(cell % r),
                     r, tables);
  return tables;
}

namespace {

template <bool Parallel>
long rank_impl(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return 0;
  const long rows = static_cast<long>(m.size());
  const long cols = static_cast<long>(m[0].size());
  long rank = 0;
  for (long c = 0; c < cols && rank < rows; ++c) {
    long pivot = -1;
    for (long r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    const Rat& p = m[rank][c];
#pragma omp parallel for schedule(static) if (Parallel)
    for (long r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rat f = m[r][c] / p;
      for (long j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

long rank_rational(std::vector<std::vector<Rat>> m) {
  return rank_impl<true>(std::move(m));
}

long rank_rational_serial(std::vector<std::vector<Rat>> m) {
  return rank_impl<false>(std::move(m));
}

}  // namespace edrep
