#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "edrep/cyclotomic.hpp"
#include "edrep/numutil.hpp"
#include "edrep/schur.hpp"

using namespace edrep;

namespace {

// exhaustive two-squares oracle
bool two_squares_brute(long n) {
  for (long a = 0; a * a <= n; ++a) {
    long rest = n - a * a;
    long b = static_cast<long>(std::sqrt(static_cast<double>(rest)));
    for (long d = -1; d <= 1; ++d)
      if (b + d >= 0 && (b + d) * (b + d) == rest) return true;
  }
  return false;
}

Rat random_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 60) - 30;
  if (num == 0) num = 7;
  long den = 1 + static_cast<long>(rng() % 20);
  return Rat(num, den);
}

}  // namespace

TEST_CASE("hilbert symbol at the real place and at 2") {
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), Place::infinity()) == -1);
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), Place::prime(2)) == -1);
  CHECK(hilbert_symbol(Rat(1), Rat(17), Place::prime(2)) == 1);
  CHECK(hilbert_symbol(Rat(1), Rat(-5), Place::infinity()) == 1);
  CHECK_THROWS_AS(hilbert_symbol(Rat(0), Rat(1), Place::infinity()), Error);
  CHECK_THROWS_AS(hilbert_symbol(Rat(1), Rat(1), Place::prime(6)), Error);

  // independent oracle for (-1,-1)_2: x^2 + y^2 + z^2 = 0 mod 8 has no
  // primitive solution, so the form <1,1,1> is anisotropic over Q_2
  bool isotropic = false;
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      for (int z = 0; z < 8; ++z) {
        if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
        if ((x * x + y * y + z * z) % 8 == 0) isotropic = true;
      }
  CHECK(!isotropic);
}

TEST_CASE("hilbert symbol is symmetric and bimultiplicative") {
  std::mt19937_64 rng(11);
  std::vector<Place> places = {Place::infinity(), Place::prime(2),
                               Place::prime(3), Place::prime(5),
                               Place::prime(7)};
  for (int trial = 0; trial < 40; ++trial) {
    Rat a = random_rational(rng), b = random_rational(rng),
        c = random_rational(rng);
    for (const Place& v : places) {
      CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
      CHECK(hilbert_symbol(a * c, b, v) ==
            hilbert_symbol(a, b, v) * hilbert_symbol(c, b, v));
    }
  }
}

TEST_CASE("hilbert product formula") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Rat a = random_rational(rng), b = random_rational(rng);
    int prod = 1;
    for (const Place& v : ramification_candidates(a, b))
      prod *= hilbert_symbol(a, b, v);
    CHECK(prod == 1);
  }
}

TEST_CASE("quaternion splitting over Q") {
  CHECK(!quaternion_splits_q({Rat(-1), Rat(-1)}));
  CHECK(quaternion_splits_q({Rat(1), Rat(5)}));
  CHECK(quaternion_splits_q({Rat(2), Rat(-1)}));  // 2 = 1^2 + 1^2
  CHECK(quaternion_splits_q({Rat(7), Rat(-7)}));  // (a,-a) always splits
}

TEST_CASE("sum of two squares") {
  CHECK(sum_of_two_squares(Int(45)));
  CHECK(!sum_of_two_squares(Int(189)));  // 3^3 * 7
  CHECK(sum_of_two_squares(Int(1)));
  for (long n = 1; n <= 2000; ++n)
    CHECK(sum_of_two_squares(Int(n)) == two_squares_brute(n));
  CHECK_THROWS_AS(sum_of_two_squares(Int(0)), Error);
}

TEST_CASE("factorization") {
  auto f = factorize(Int(189));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::make_pair(Int(3), 3L));
  CHECK(f[1] == std::make_pair(Int(7), 1L));
  CHECK(factorization_str(Int(-189)) == "-3^3 * 7");
  CHECK(factorization_str(Int(1)) == "1");
  // a big smooth number factors instantly by trial division
  Int big;
  mpz_pow_ui(big.get_mpz_t(), Int(3).get_mpz_t(), 135);
  big *= 7;
  auto fb = factorize(big);
  CHECK(fb[0].second == 135);
}

TEST_CASE("norm_t closed form") {
  CHECK(norm_t({3}, {3}) == Int(-3));
  CHECK(norm_t({3, 7}, {3, 7}) == Int(189));
  CHECK(norm_t({7}, {3, 7}) == Int(-7));
  CHECK(norm_t({3}, {3, 7}) == Int(-27));  // 3^((7-1)/2) = 27
  CHECK_THROWS_AS(norm_t({5}, {5}), Error);
  CHECK_THROWS_AS(norm_t({3}, {7}), Error);
  CHECK_THROWS_AS(norm_t({}, {3}), Error);
}

TEST_CASE("norm_t sign and support invariants") {
  std::vector<long> full = {3, 7, 11};
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<long> s;
    for (int i = 0; i < 3; ++i)
      if (mask & (1u << i)) s.push_back(full[i]);
    Int n = norm_t(s, full);
    CHECK((n < 0) == (s.size() % 2 == 1));
    Int m = abs(n);
    for (long p : s)
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) m /= p;
    CHECK(m == 1);
    CHECK(mpz_odd_p(Int(abs(norm_t(s, full))).get_mpz_t()));
  }
}

TEST_CASE("norm cross-check against the direct cyclotomic norm") {
  // N_{k/Q}(T) with T the product of (zeta_p - zeta_p^-1)^2, k the real
  // compositum: product of Galois conjugates over coset representatives
  auto direct_norm = [](const std::vector<long>& primes) {
    long m = 1;
    for (long p : primes) m *= p;
    CycloNum t(1);
    for (long p : primes) {
      CycloNum d = CycloNum::zeta(p) - CycloNum::zeta(p, p - 1);
      t = t * d * d;
    }
    t = t.lifted_to(m);
    // fixing subgroup of k: generated by per-prime conjugations
    std::vector<long> gens;
    for (long p : primes) {
      long rest = m / p;
      long c = ((p - 2) % p) * invmod(rest % p, p) % p;
      gens.push_back((1 + rest * c) % m);
    }
    std::vector<long> h = subgroup_generated(m, gens);
    std::set<long> done;
    CycloNum norm(1);
    for (long j : units_mod(m)) {
      if (done.count(j)) continue;
      for (long s : h) done.insert(j * s % m);
      norm = norm * t.galois(j);
    }
    Rat val = norm.to_rational();
    REQUIRE(rat_is_integer(val));
    return Int(val.get_num());
  };
  CHECK(direct_norm({3}) == norm_t({3}, {3}));
  CHECK(direct_norm({7}) == norm_t({7}, {7}));
  CHECK(direct_norm({3, 7}) == norm_t({3, 7}, {3, 7}));
}

TEST_CASE("norm independence certificates") {
  IndependenceCertificate c1 = norm_independence_test({3});
  CHECK(c1.independent);
  CHECK(c1.rows.size() == 1);
  CHECK(c1.rows[0].norm == Int(-3));

  IndependenceCertificate c2 = norm_independence_test({3, 7});
  CHECK(c2.independent);
  CHECK(c2.rows.size() == 3);
  bool saw_189 = false;
  for (const IndependenceRow& row : c2.rows)
    if (row.subset == std::vector<long>{3, 7}) {
      CHECK(row.norm == Int(189));
      CHECK(row.factorization == "3^3 * 7");
      saw_189 = true;
    }
  CHECK(saw_189);

  CHECK_THROWS_AS(norm_independence_test({}), Error);
  CHECK_THROWS_AS(norm_independence_test({5}), Error);
  CHECK_THROWS_AS(norm_independence_test({3, 3}), Error);

  // all primes 3 mod 4 up to 100 pass as singletons
  for (long p : {3L, 7L, 11L, 19L, 23L, 31L, 43L, 47L, 59L, 67L, 71L, 79L, 83L})
    CHECK(norm_independence_test({p}).independent);
}

TEST_CASE("parallel and serial independence scans agree") {
  for (const std::vector<long>& primes :
       {std::vector<long>{3}, {3, 7}, {3, 7, 11}}) {
    IndependenceCertificate a = norm_independence_test(primes);
    IndependenceCertificate b = norm_independence_test_serial(primes);
    REQUIRE(a.rows.size() == b.rows.size());
    CHECK(a.independent == b.independent);
    for (size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].subset == b.rows[i].subset);
      CHECK(a.rows[i].norm == b.rows[i].norm);
      CHECK(a.rows[i].passes == b.rows[i].passes);
    }
  }
}

namespace {

const Character& find_two_dim(const CharacterTable& t) {
  for (const Character& chi : t.irreducibles)
    if (chi.degree() == 2) return chi;
  FAIL("no 2-dim character");
  return t.irreducibles[0];
}

}  // namespace

TEST_CASE("schur_index strategies") {
  FiniteGroup q8 = schilling_two_group(4);
  CharacterTable tq = character_table(q8);
  const Character& chi2 = find_two_dim(tq);

  SchurIndexResult r = schur_index(chi2, BaseField::rationals(), tq);
  CHECK(r.value == 2);
  CHECK(r.strategy == SchurStrategy::PGroupRule);

  // over Q(zeta_4) = Q(i) everything is defined already
  SchurIndexResult r4 = schur_index(chi2, BaseField::cyclotomic(4), tq);
  CHECK(r4.value == 1);
  CHECK(r4.strategy == SchurStrategy::CyclotomicBase);

  // odd p-group
  FiniteGroup c3 = from_generators({{1, 2, 0}});
  CharacterTable t3 = character_table(c3);
  SchurIndexResult r3 = schur_index(t3.irreducibles[1], BaseField::rationals(), t3);
  CHECK(r3.value == 1);
  CHECK(r3.strategy == SchurStrategy::PGroupRule);

  // the schur index always divides the degree
  CHECK(chi2.degree() % r.value == 0);
}

TEST_CASE("schur_index for the quaternion-semidirect family") {
  FiniteGroup g = quaternion_semidirect(3);
  CharacterTable t = character_table(g);
  // the designated character: faithful 2-dim with value -2 at y^2
  int y = g.index_of(g.generators()[1]);
  int y2class = g.class_of(g.mul(y, y));
  const Character* designated = nullptr;
  for (const Character& chi : t.irreducibles)
    if (chi.degree() == 2 && chi.values[y2class] == CycloNum(-2))
      designated = &chi;
  REQUIRE(designated != nullptr);

  BaseField k = BaseField::real_cyclotomic(3);  // = Q here
  SchurIndexResult r = schur_index(*designated, k, t);
  CHECK(r.value == 2);
  CHECK(r.strategy == SchurStrategy::QuaternionFamily);

  // same group built from bare generators loses the family tag; the
  // FS/real-place test still pins the index
  FiniteGroup plain = from_generators(
      {g.elements()[g.index_of(g.generators()[0])],
       g.elements()[g.index_of(g.generators()[1])]});
  CHECK(plain.order() == 12);
  CharacterTable tp = character_table(plain);
  const Character* designated_p = nullptr;
  int yp = plain.index_of(g.generators()[1]);
  int y2p = plain.class_of(plain.mul(yp, yp));
  for (const Character& chi : tp.irreducibles)
    if (chi.degree() == 2 && chi.values[y2p] == CycloNum(-2))
      designated_p = &chi;
  REQUIRE(designated_p != nullptr);
  SchurIndexResult rp = schur_index(*designated_p, BaseField::rationals(), tp);
  CHECK(rp.value == 2);
  CHECK(rp.strategy == SchurStrategy::FSRealTest);
}

TEST_CASE("schur_index user hints and unsupported") {
  FiniteGroup s3 = from_generators({{1, 2, 0}, {1, 0, 2}});
  CharacterTable t = character_table(s3);
  const Character& chi2 = find_two_dim(t);

  // S3 is not a p-group and fs = +1: nothing certifies without help
  CHECK_THROWS_AS(schur_index(chi2, BaseField::rationals(), t), Error);
  try {
    schur_index(chi2, BaseField::rationals(), t);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Unsupported);
  }

  SchurIndexResult r = schur_index(chi2, BaseField::rationals(), t, 1);
  CHECK(r.value == 1);
  CHECK(r.strategy == SchurStrategy::UserSupplied);
  CHECK_THROWS_AS(schur_index(chi2, BaseField::rationals(), t, 3), Error);
}

TEST_CASE("schur_index from an explicit model") {
  // S3 standard representation over Q
  FiniteGroup s3 = from_generators({{1, 2, 0}, {1, 0, 2}});
  CharacterTable t = character_table(s3);
  const Character& chi2 = find_two_dim(t);

  // sigma = (012): [[0,-1],[1,-1]], tau = (01): [[0,1],[1,0]]... build by BFS
  CycloMat msigma = {{CycloNum(0), CycloNum(-1)}, {CycloNum(1), CycloNum(-1)}};
  CycloMat mtau = {{CycloNum(0), CycloNum(1)}, {CycloNum(1), CycloNum(0)}};
  std::vector<CycloMat> rep(s3.order());
  std::vector<bool> have(s3.order(), false);
  CycloMat id = {{CycloNum(1), CycloNum(0)}, {CycloNum(0), CycloNum(1)}};
  auto mul2 = [](const CycloMat& a, const CycloMat& b) {
    CycloMat c(2, std::vector<CycloNum>(2, CycloNum(0)));
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  rep[s3.identity()] = id;
  have[s3.identity()] = true;
  int gsigma = s3.index_of({1, 2, 0});
  int gtau = s3.index_of({1, 0, 2});
  bool grew = true;
  while (grew) {
    grew = false;
    for (long x = 0; x < s3.order(); ++x) {
      if (!have[x]) continue;
      for (auto [gi, gm] : {std::make_pair(gsigma, &msigma),
                            std::make_pair(gtau, &mtau)}) {
        int y = s3.mul(static_cast<int>(x), gi);
        if (!have[y]) {
          rep[y] = mul2(rep[x], *gm);
          have[y] = true;
          grew = true;
        }
      }
    }
  }

  SchurIndexResult r =
      schur_index(chi2, BaseField::rationals(), t, std::nullopt, &rep);
  CHECK(r.value == 1);
  CHECK(r.strategy == SchurStrategy::ExplicitModel);
  CHECK(envelope_matrix_dimension(rep, BaseField::rationals(), s3) == 4);
}
