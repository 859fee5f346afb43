// Data-parallel inner loops, OpenMP-parallel with serial reference twins.
// The serial versions are the reference implementations used by the tests;
// tools/bench_kernels compares the two. Results are bit-identical.
#pragma once

#include <vector>

#include "edrep/group.hpp"
#include "edrep/rational.hpp"

namespace edrep {

// Class multiplication constants a_{ijk} = #{(x,y) in C_i x C_j : xy = z_k}.
// Returned as one r x r matrix per class i, entry (j,k) = a_{ijk}; these are
// the class-sum matrices diagonalized by the character table computation.
std::vector<std::vector<long>> class_product_table(const FiniteGroup& g);
std::vector<std::vector<long>> class_product_table_serial(const FiniteGroup& g);

// Exact rank of a rational matrix by fraction-free-ish Gaussian elimination;
// the row-update loop is the parallel region.
long rank_rational(std::vector<std::vector<Rat>> m);
long rank_rational_serial(std::vector<std::vector<Rat>> m);

}  // namespace edrep
