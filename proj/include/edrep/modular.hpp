// Carlson rank varieties for commuting unipotent pairs over F_p(a1..at):
// the minor-gcd pencil computation, point-module realizations (p = 2), exact
// rational-root extraction for the resulting binary forms, and the
// transcendence-degree descent test.
#pragma once

#include <string>
#include <vector>

#include "edrep/mpoly.hpp"

namespace edrep {

struct ModularRep {
  long p = 2;
  int n = 0;      // dimension
  int nvars = 0;  // function field F_p(a1..a_nvars)
  std::vector<std::vector<MFrac>> m1, m2;  // n x n generators images
};

// Projective point of P^1, normalized so the first nonzero coordinate is 1.
struct ProjPoint {
  MFrac x1, x2;
};

ProjPoint make_point(const MFrac& x1, const MFrac& x2);
bool operator==(const ProjPoint& a, const ProjPoint& b);

struct PointSet1 {
  std::vector<ProjPoint> points;
  bool whole_line = false;
  // non-linear squarefree factor data (no roots rational over F_p(a1..at)),
  // printed as binary forms in x1, x2
  std::vector<std::string> unresolved;
};

// Checks M1 M2 = M2 M1 and (Mi - I)^p = 0; BadInput on violation.
void validate_modular_rep(const ModularRep& rep);

// The locus rank(x1(M1-I) + x2(M2-I)) < (p-1)n/p as a reduced point set:
// gcd of all ceil((p-1)n/p)-minors, squarefree reduction, then every root
// expressible over F_p(a1..at). Factors without rational roots are returned
// in `unresolved` rather than dropped.
PointSet1 rank_variety(const ModularRep& rep);

// 2-dimensional p = 2 representation with rank variety {pt}.
ModularRep point_module(const ProjPoint& pt, int nvars, long p = 2);

// Direct sum of point modules; the rank variety is the input set.
ModularRep union_rep(const std::vector<ProjPoint>& pts, int nvars);

struct TrdegConfig {
  unsigned long seed = 0;
  int retries = 16;          // field size doubles on each retry
  int samples_per_retry = 8;
  bool exact = false;        // algebraic-dependence elimination instead of
                             // the randomized Jacobian rank
  int exact_degree_budget = 6;
};

// Transcendence degree over F_p of the field generated by the affine
// coordinates. Default: rank of the Jacobian at a random point (correct for
// separably generated extensions). The exact flag eliminates coordinates by
// searching for polynomial dependences up to the degree budget, which also
// handles inseparable generators such as p-th powers.
long trdeg_of_points(const PointSet1& ps, long p, int nvars,
                     const TrdegConfig& cfg = {});

struct ModularLowerBound {
  long n = 0;
  long dim = 0;  // dimension of the constructed representation (2n)
  PointSet1 variety;
  long trdeg = 0;
  std::string statement;
};

// Builds the n-point configuration over independent variables, recovers it
// through rank_variety, certifies trdeg = n, and reports ed >= n.
ModularLowerBound ed_lower_bound_modular(long n, long q = 2,
                                         const TrdegConfig& cfg = {});

// ---- pencil minors (parallel kernel + serial reference) ---------------------

// Binary form: index i holds the coefficient of x1^i x2^(deg - i).
using BFormP = std::vector<MPoly>;

// All m x m minors of the pencil x1*B1 + x2*B2 (entries as (B1, B2) MPoly
// pairs), in deterministic (row-subset, col-subset) order.
std::vector<BFormP> pencil_minors(
    const std::vector<std::vector<std::pair<MPoly, MPoly>>>& pencil, int m);
std::vector<BFormP> pencil_minors_serial(
    const std::vector<std::vector<std::pair<MPoly, MPoly>>>& pencil, int m);

}  // namespace edrep
