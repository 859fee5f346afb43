#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "edrep/modular.hpp"

using namespace edrep;

namespace {

MFrac fr(const std::string& s, long p = 2, int nvars = 4) {
  return parse_mfrac(s, p, nvars);
}

ProjPoint pt(const std::string& x1, const std::string& x2, long p = 2,
             int nvars = 4) {
  return make_point(fr(x1, p, nvars), fr(x2, p, nvars));
}

bool same_points(const PointSet1& got, const std::vector<ProjPoint>& want) {
  if (got.points.size() != want.size()) return false;
  for (const ProjPoint& w : want)
    if (std::find(got.points.begin(), got.points.end(), w) == got.points.end())
      return false;
  return true;
}

// random small rational-function coordinate over F_2(a1..a_nvars):
// numerators of total degree <= 2, occasional degree-1 denominators
MFrac random_coord(std::mt19937_64& rng, int nvars) {
  auto random_poly = [&](int max_terms, int max_deg) {
    MPoly f(2, nvars);
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
      PackedExp m = 0;
      int budget = max_deg;
      for (int v = 0; v < nvars && budget > 0; ++v) {
        int e = static_cast<int>(rng() % 3) == 0
                    ? static_cast<int>(rng() % (budget + 1))
                    : 0;
        m = exp_set(m, v, e);
        budget -= e;
      }
      f.add_term(m, 1);
    }
    return f;
  };
  MPoly num = random_poly(3, 2);
  MPoly den = MPoly::constant(2, nvars, 1);
  if (rng() % 3 == 0) {
    den = random_poly(2, 1);
    if (den.is_zero()) den = MPoly::constant(2, nvars, 1);
  }
  if (num.is_zero()) num = MPoly::variable(2, nvars, 0);
  return MFrac(num, den);
}

}  // namespace

TEST_CASE("fraction parser round trips") {
  for (const std::string& s :
       {"a1", "a1+1", "(a1*a2+1)/(a3+1)", "a1^2*a2+a1+1", "(a1+a2)/(a1*a4)"}) {
    MFrac f = fr(s);
    MFrac g = fr(f.str());
    CHECK(f == g);
  }
  CHECK(fr("a1+a1") == fr("0"));              // char 2
  CHECK(fr("(a1^2+1)/(a1+1)") == fr("a1+1"));  // reduction
  CHECK(fr("a1^-1") == fr("1/a1"));
  CHECK_THROWS_AS(fr("a9"), Error);
  CHECK_THROWS_AS(fr("b1"), Error);
  CHECK_THROWS_AS(fr("a1+"), Error);
  CHECK_THROWS_AS(fr("1/0"), Error);
}

TEST_CASE("mpoly gcd divides both operands") {
  std::mt19937_64 rng(99);
  for (long p : {2L, 3L}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto rand_poly = [&](int terms) {
        MPoly f(p, 3);
        for (int t = 0; t < terms; ++t) {
          PackedExp m = 0;
          for (int v = 0; v < 3; ++v)
            m = exp_set(m, v, static_cast<int>(rng() % 3));
          f.add_term(m, 1 + static_cast<long>(rng() % (p - 1 > 0 ? p - 1 : 1)));
        }
        return f;
      };
      MPoly g = rand_poly(2), u = rand_poly(2), v = rand_poly(2);
      if (g.is_zero() || u.is_zero() || v.is_zero()) continue;
      MPoly a = g * u, b = g * v;
      MPoly d = mpoly_gcd(a, b);
      CHECK(!d.is_zero());
      // d divides both, and g divides d
      CHECK_NOTHROW(mpoly_divexact(a, d));
      CHECK_NOTHROW(mpoly_divexact(b, d));
      CHECK_NOTHROW(mpoly_divexact(d, mpoly_gcd(d, g)));
      MPoly gg = mpoly_gcd(d, g);
      CHECK(mpoly_divexact(g, gg).is_constant());
    }
  }
}

TEST_CASE("point modules") {
  ProjPoint p1 = pt("1", "a1");
  ModularRep rep = point_module(p1, 4);
  validate_modular_rep(rep);
  PointSet1 v = rank_variety(rep);
  CHECK(same_points(v, {p1}));
  CHECK(v.unresolved.empty());
  CHECK(!v.whole_line);

  // boundary point (0:1)
  ProjPoint p0 = pt("0", "1");
  PointSet1 v0 = rank_variety(point_module(p0, 4));
  CHECK(same_points(v0, {p0}));

  CHECK_THROWS_AS(point_module(p1, 4, 3), Error);  // p != 2
}

TEST_CASE("union representations") {
  ProjPoint p1 = pt("1", "a1"), p2 = pt("1", "a2");
  ModularRep rep = union_rep({p1, p2}, 4);
  CHECK(rep.n == 4);
  PointSet1 v = rank_variety(rep);
  CHECK(same_points(v, {p1, p2}));

  // singleton union equals the point module
  PointSet1 vs = rank_variety(union_rep({p1}, 4));
  CHECK(same_points(vs, {p1}));

  CHECK_THROWS_AS(union_rep({}, 4), Error);
  CHECK_THROWS_AS(union_rep({p1, p1}, 4), Error);
}

TEST_CASE("trivial representation gives the whole line") {
  ModularRep rep;
  rep.p = 2;
  rep.n = 3;
  rep.nvars = 2;
  MFrac zero = fr("0", 2, 2), one = fr("1", 2, 2);
  rep.m1.assign(3, std::vector<MFrac>(3, zero));
  rep.m2.assign(3, std::vector<MFrac>(3, zero));
  for (int i = 0; i < 3; ++i) rep.m1[i][i] = rep.m2[i][i] = one;
  PointSet1 v = rank_variety(rep);
  CHECK(v.whole_line);
  CHECK(v.points.empty());
}

TEST_CASE("invalid representations rejected") {
  // non-commuting generators
  ModularRep rep;
  rep.p = 2;
  rep.n = 2;
  rep.nvars = 1;
  MFrac zero = fr("0", 2, 1), one = fr("1", 2, 1);
  rep.m1 = {{one, one}, {zero, one}};
  rep.m2 = {{one, zero}, {one, one}};
  CHECK_THROWS_AS(rank_variety(rep), Error);

  // not unipotent of exponent p
  ModularRep rep2;
  rep2.p = 2;
  rep2.n = 3;
  rep2.nvars = 1;
  rep2.m1.assign(3, std::vector<MFrac>(3, zero));
  rep2.m2.assign(3, std::vector<MFrac>(3, zero));
  for (int i = 0; i < 3; ++i) rep2.m1[i][i] = rep2.m2[i][i] = one;
  rep2.m1[0][1] = one;
  rep2.m1[1][2] = one;  // (M1 - I)^2 != 0
  CHECK_THROWS_AS(rank_variety(rep2), Error);
}

TEST_CASE("rank variety for p = 3") {
  // M1 = I + N, M2 = I + a1 N + N^2 on the 3-dimensional Jordan block:
  // pencil x1 N + x2 (a1 N + N^2); variety is the single point where the
  // N-coefficient x1 + a1 x2 vanishes
  ModularRep rep;
  rep.p = 3;
  rep.n = 3;
  rep.nvars = 1;
  auto f3 = [&](const std::string& s) { return fr(s, 3, 1); };
  MFrac zero = f3("0"), one = f3("1");
  rep.m1.assign(3, std::vector<MFrac>(3, zero));
  rep.m2.assign(3, std::vector<MFrac>(3, zero));
  for (int i = 0; i < 3; ++i) rep.m1[i][i] = rep.m2[i][i] = one;
  rep.m1[0][1] = one;
  rep.m1[1][2] = one;
  rep.m2[0][1] = f3("a1");
  rep.m2[1][2] = f3("a1");
  rep.m2[0][2] = one;
  validate_modular_rep(rep);
  PointSet1 v = rank_variety(rep);
  // x1 + a1 x2 = 0 means (x1 : x2) = (-a1 : 1) = (2*a1 : 1)
  CHECK(same_points(v, {make_point(f3("2*a1"), one)}));
}

TEST_CASE("repeated-block multiplicities are reduced") {
  // direct sum of two copies of the same point module: the minor gcd is a
  // square, but the reduced variety is the single point
  ProjPoint p1 = pt("1", "a1", 2, 2);
  ModularRep one_block = point_module(p1, 2);
  ModularRep rep;
  rep.p = 2;
  rep.n = 4;
  rep.nvars = 2;
  MFrac zero = fr("0", 2, 2);
  rep.m1.assign(4, std::vector<MFrac>(4, zero));
  rep.m2.assign(4, std::vector<MFrac>(4, zero));
  for (int t = 0; t < 2; ++t)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        rep.m1[2 * t + i][2 * t + j] = one_block.m1[i][j];
        rep.m2[2 * t + i][2 * t + j] = one_block.m2[i][j];
      }
  PointSet1 v = rank_variety(rep);
  CHECK(same_points(v, {p1}));
}

TEST_CASE("inseparable factor reported as unresolved") {
  // pencil with the single 2x2 minor x1^2 + a1 x2^2 = (x1 + sqrt(a1) x2)^2:
  // no roots rational over F_2(a1), so the factor is reported, not dropped
  ModularRep rep;
  rep.p = 2;
  rep.n = 4;
  rep.nvars = 1;
  MFrac zero = fr("0", 2, 1), one = fr("1", 2, 1);
  rep.m1.assign(4, std::vector<MFrac>(4, zero));
  rep.m2.assign(4, std::vector<MFrac>(4, zero));
  for (int i = 0; i < 4; ++i) rep.m1[i][i] = rep.m2[i][i] = one;
  // B1 has the upper-right identity block, B2 the twisted one
  rep.m1[0][2] = one;
  rep.m1[1][3] = one;
  rep.m2[0][3] = one;
  rep.m2[1][2] = fr("a1", 2, 1);
  validate_modular_rep(rep);
  PointSet1 v = rank_variety(rep);
  CHECK(v.points.empty());
  CHECK(!v.whole_line);
  REQUIRE(v.unresolved.size() == 1);
}

TEST_CASE("basis-change invariance") {
  std::mt19937_64 rng(31);
  ProjPoint p1 = pt("1", "a1", 2, 3), p2 = pt("1", "a2+1", 2, 3),
            p3 = pt("0", "1", 2, 3);
  ModularRep rep = union_rep({p1, p2, p3}, 3);

  for (int trial = 0; trial < 5; ++trial) {
    // random invertible P over F_2(a): product of elementary transvections
    int n = rep.n;
    MFrac zero = fr("0", 2, 3), one = fr("1", 2, 3);
    std::vector<std::vector<MFrac>> pmat(n, std::vector<MFrac>(n, zero));
    std::vector<std::vector<MFrac>> pinv(n, std::vector<MFrac>(n, zero));
    for (int i = 0; i < n; ++i) pmat[i][i] = pinv[i][i] = one;
    auto apply_transvection = [&](int i, int j, const MFrac& c) {
      // pmat <- E_{ij}(c) * pmat, pinv <- pinv * E_{ij}(-c)
      for (int k = 0; k < n; ++k) pmat[i][k] = pmat[i][k] + c * pmat[j][k];
      for (int k = 0; k < n; ++k) pinv[k][j] = pinv[k][j] - c * pinv[k][i];
    };
    for (int step = 0; step < 6; ++step) {
      int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
      if (i == j) continue;
      const char* coeffs[] = {"1", "a1", "a2", "a3+1", "a1*a2"};
      apply_transvection(i, j, fr(coeffs[rng() % 5], 2, 3));
    }

    auto conj = [&](const std::vector<std::vector<MFrac>>& m) {
      auto mm = m;
      // P * M * P^-1
      std::vector<std::vector<MFrac>> t(n, std::vector<MFrac>(n, zero));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j) t[i][j] = t[i][j] + pmat[i][k] * m[k][j];
      std::vector<std::vector<MFrac>> out(n, std::vector<MFrac>(n, zero));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j)
            out[i][j] = out[i][j] + t[i][k] * pinv[k][j];
      (void)mm;
      return out;
    };
    ModularRep conj_rep = rep;
    conj_rep.m1 = conj(rep.m1);
    conj_rep.m2 = conj(rep.m2);
    PointSet1 v = rank_variety(conj_rep);
    CHECK(same_points(v, {p1, p2, p3}));
  }
}

TEST_CASE("random point sets recovered") {
  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 15) {
    int nvars = 3;
    size_t size = 1 + rng() % 3;
    std::vector<ProjPoint> pts;
    for (size_t i = 0; i < size; ++i) {
      MFrac c = random_coord(rng, nvars);
      ProjPoint candidate =
          (rng() % 8 == 0) ? make_point(fr("0", 2, nvars), fr("1", 2, nvars))
                           : make_point(fr("1", 2, nvars), c);
      bool dup = false;
      for (const ProjPoint& q : pts)
        if (q == candidate) dup = true;
      if (!dup) pts.push_back(candidate);
    }
    ModularRep rep = union_rep(pts, nvars);
    PointSet1 v = rank_variety(rep);
    CHECK(same_points(v, pts));
    CHECK(v.unresolved.empty());
    ++done;
  }
}

TEST_CASE("trdeg of point configurations") {
  TrdegConfig cfg;
  cfg.seed = 7;

  // independent variables
  for (int n = 1; n <= 4; ++n) {
    std::vector<ProjPoint> pts;
    for (int i = 0; i < n; ++i)
      pts.push_back(make_point(fr("1", 2, n), MFrac::variable(2, n, i)));
    PointSet1 ps;
    ps.points = pts;
    CHECK(trdeg_of_points(ps, 2, n, cfg) == n);
  }

  // constants only
  PointSet1 consts;
  consts.points = {pt("1", "1", 2, 2), pt("0", "1", 2, 2)};
  CHECK(trdeg_of_points(consts, 2, 2, cfg) == 0);

  // algebraically dependent pair: a1 and a1^2... the Jacobian sees rank 1
  PointSet1 dep;
  dep.points = {pt("1", "a1", 2, 2), pt("1", "a1^2+a1", 2, 2)};
  CHECK(trdeg_of_points(dep, 2, 2, cfg) == 1);

  // inseparable: a1^2 alone; the Jacobian underreports, the exact fallback
  // does not
  PointSet1 insep;
  insep.points = {pt("1", "a1^2", 2, 2)};
  CHECK(trdeg_of_points(insep, 2, 2, cfg) == 0);  // documented caveat
  TrdegConfig exact = cfg;
  exact.exact = true;
  CHECK(trdeg_of_points(insep, 2, 2, exact) == 1);
  CHECK(trdeg_of_points(dep, 2, 2, exact) == 1);
}

TEST_CASE("modular lower bound pipeline") {
  TrdegConfig cfg;
  cfg.seed = 11;
  for (long n : {1L, 3L}) {
    ModularLowerBound b = ed_lower_bound_modular(n, 2, cfg);
    CHECK(b.n == n);
    CHECK(b.dim == 2 * n);
    CHECK(b.trdeg == n);
    CHECK(b.variety.points.size() == static_cast<size_t>(n));
  }
  CHECK_THROWS_AS(ed_lower_bound_modular(0), Error);
  CHECK_THROWS_AS(ed_lower_bound_modular(2, 3), Error);
}

TEST_CASE("parallel and serial minor scans agree") {
  ProjPoint p1 = pt("1", "a1", 2, 2), p2 = pt("1", "a2", 2, 2);
  ModularRep rep = union_rep({p1, p2}, 2);
  MPoly zero(2, 2);
  std::vector<std::vector<std::pair<MPoly, MPoly>>> pencil(
      rep.n, std::vector<std::pair<MPoly, MPoly>>(rep.n, {zero, zero}));
  for (int i = 0; i < rep.n; ++i)
    for (int j = 0; j < rep.n; ++j) {
      MFrac b1 = rep.m1[i][j] - (i == j ? fr("1", 2, 2) : fr("0", 2, 2));
      MFrac b2 = rep.m2[i][j] - (i == j ? fr("1", 2, 2) : fr("0", 2, 2));
      pencil[i][j] = {b1.num(), b2.num()};
    }
  auto par = pencil_minors(pencil, 2);
  auto ser = pencil_minors_serial(pencil, 2);
  REQUIRE(par.size() == ser.size());
  for (size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}
