#include "edrep/schur.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "edrep/numutil.hpp"

namespace edrep {

namespace {

// p-adic valuation and unit part of a nonzero integer.
long val_and_unit(Int& n, const Int& p) {
  long v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

int legendre_int(Int a, const Int& p) {
  a %= p;
  if (a < 0) a += p;
  Int r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), Int((p - 1) / 2).get_mpz_t(),
           p.get_mpz_t());
  return r == 1 ? 1 : -1;
}

// Squarefree-kernel integer representing the square class of a rational.
Int square_class(const Rat& q) { return q.get_num() * q.get_den(); }

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
  if (a == 0 || b == 0) fail(Errc::BadInput, "hilbert symbol needs a, b != 0");
  Int x = square_class(a), y = square_class(b);
  if (v.infinite) return (x < 0 && y < 0) ? -1 : 1;
  const Int& p = v.p;
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
    fail(Errc::BadPlace, "finite place must be a prime");
  long alpha = val_and_unit(x, p);
  long beta = val_and_unit(y, p);
  if (p == 2) {
    auto eps = [](const Int& u) {  // (u-1)/2 mod 2 for odd u
      Int m = u % 4;
      if (m < 0) m += 4;
      return m == 3 ? 1L : 0L;
    };
    auto omega = [](const Int& u) {  // (u^2-1)/8 mod 2 for odd u
      Int m = u % 8;
      if (m < 0) m += 8;
      return (m == 1 || m == 7) ? 0L : 1L;
    };
    long expo = eps(x) * eps(y) + alpha * omega(y) + beta * omega(x);
    return expo % 2 == 0 ? 1 : -1;
  }
  Int pm = p % 4;
  long expo = alpha * beta * (pm == 3 ? 1 : 0);
  int sym = expo % 2 == 0 ? 1 : -1;
  if (beta % 2 != 0) sym *= legendre_int(x, p);
  if (alpha % 2 != 0) sym *= legendre_int(y, p);
  return sym;
}

std::vector<Place> ramification_candidates(const Rat& a, const Rat& b) {
  std::vector<Place> places = {Place::infinity(), Place::prime(2)};
  std::set<Int> primes;
  for (const Rat* q : {&a, &b}) {
    for (const Int& n : {Int(q->get_num()), Int(q->get_den())}) {
      Int m = abs(n);
      for (const auto& [p, e] : factorize(m))
        if (p > 2) primes.insert(p);
    }
  }
  for (const Int& p : primes) places.push_back(Place::prime(p));
  return places;
}

bool quaternion_splits_q(const QuaternionQ& alg) {
  if (alg.a == 0 || alg.b == 0)
    fail(Errc::BadInput, "quaternion algebra needs a, b != 0");
  for (const Place& v : ramification_candidates(alg.a, alg.b))
    if (hilbert_symbol(alg.a, alg.b, v) != 1) return false;
  return true;
}

std::vector<std::pair<Int, long>> factorize(Int n, const FactorConfig& cfg) {
  if (n < 1) fail(Errc::BadInput, "factorize needs n >= 1");
  std::map<Int, long> factors;
  for (Int p(2); p * p <= n && p <= Int(cfg.trial_bound);
       p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      ++factors[p];
      n /= p;
    }
  }
  // Brent-variant Pollard rho on whatever survives trial division.
  std::vector<Int> stack;
  if (n > 1) stack.push_back(n);
  unsigned long budget = cfg.rho_iterations;
  while (!stack.empty()) {
    Int m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (mpz_probab_prime_p(m.get_mpz_t(), 32)) {
      ++factors[m];
      continue;
    }
    bool split = false;
    for (unsigned long c = 1; c < 64 && !split; ++c) {
      Int x(2), y(2), d(1);
      while (d == 1) {
        if (budget-- == 0)
          fail(Errc::FactorizationTimeout, "factorization budget exhausted");
        x = (x * x + c) % m;
        y = (y * y + c) % m;
        y = (y * y + c) % m;
        Int diff = x - y;
        if (diff < 0) diff = -diff;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
      }
      if (d != m) {
        stack.push_back(d);
        stack.push_back(m / d);
        split = true;
      }
    }
    if (!split) fail(Errc::FactorizationTimeout, "pollard rho failed to split");
  }
  return std::vector<std::pair<Int, long>>(factors.begin(), factors.end());
}

std::string factorization_str(const Int& n, const FactorConfig& cfg) {
  if (n == 0) return "0";
  std::ostringstream os;
  Int m = n;
  if (m < 0) {
    os << "-";
    m = -m;
  }
  if (m == 1) {
    os << "1";
    return os.str();
  }
  bool first = true;
  for (const auto& [p, e] : factorize(m, cfg)) {
    if (!first) os << " * ";
    first = false;
    os << p.get_str();
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

bool sum_of_two_squares(const Int& n, const FactorConfig& cfg) {
  if (n < 1) fail(Errc::BadInput, "sum_of_two_squares needs n >= 1");
  for (const auto& [p, e] : factorize(n, cfg))
    if (p % 4 == 3 && e % 2 != 0) return false;
  return true;
}

namespace {

void check_primes_3mod4(const std::vector<long>& primes) {
  if (primes.empty()) fail(Errc::BadPrime, "empty prime list");
  std::set<long> seen;
  for (long p : primes) {
    if (!is_prime_long(p) || p % 4 != 3)
      fail(Errc::BadPrime,
           std::to_string(p) + " is not a prime congruent to 3 mod 4");
    if (!seen.insert(p).second)
      fail(Errc::BadPrime, "duplicate prime " + std::to_string(p));
  }
}

}  // namespace

Int norm_t(const std::vector<long>& subset, const std::vector<long>& full) {
  check_primes_3mod4(full);
  check_primes_3mod4(subset);
  for (long p : subset)
    if (std::find(full.begin(), full.end(), p) == full.end())
      fail(Errc::BadPrime, "subset prime not in the full list");
  Int result = subset.size() % 2 == 0 ? 1 : -1;
  for (long p : subset) {
    Int idx(1);  // [k : k_p], a product of odd factors (q-1)/2
    for (long q : full)
      if (q != p) idx *= (q - 1) / 2;
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), Int(p).get_mpz_t(), mpz_get_ui(idx.get_mpz_t()));
    result *= pw;
  }
  return result;
}

namespace {

IndependenceRow independence_row(const std::vector<long>& primes,
                                 unsigned long mask) {
  IndependenceRow row;
  for (size_t i = 0; i < primes.size(); ++i)
    if (mask & (1UL << i)) row.subset.push_back(primes[i]);
  row.norm = norm_t(row.subset, primes);
  row.factorization = factorization_str(row.norm);
  if (row.subset.size() % 2 == 1) {
    row.passes = row.norm < 0;
    row.reason = row.passes ? "N < 0, not a norm from Q(i)"
                            : "N >= 0 for odd subset (unexpected)";
  } else {
    bool two_sq = sum_of_two_squares(row.norm);
    row.passes = !two_sq;
    row.reason = row.passes
                     ? "N = " + row.factorization +
                           " has a prime = 3 mod 4 to an odd power; "
                           "fails the two-squares test"
                     : "N is a sum of two squares; tensor product may split";
  }
  return row;
}

template <bool Parallel>
IndependenceCertificate independence_impl(const std::vector<long>& primes) {
  check_primes_3mod4(primes);
  if (primes.size() > 20)
    fail(Errc::BadInput, "subset scan capped at 20 primes");
  const unsigned long total = (1UL << primes.size()) - 1;
  IndependenceCertificate cert;
  cert.rows.resize(total);
  std::vector<std::string> errors(total);
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (long m = 1; m <= static_cast<long>(total); ++m) {
    try {
      cert.rows[m - 1] = independence_row(primes, static_cast<unsigned long>(m));
    } catch (const Error& e) {
      errors[m - 1] = e.what();
    }
  }
  for (unsigned long m = 0; m < total; ++m)
    if (!errors[m].empty()) fail(Errc::FactorizationTimeout, errors[m]);
  cert.independent = true;
  for (const IndependenceRow& row : cert.rows)
    if (!row.passes) cert.independent = false;
  return cert;
}

}  // namespace

IndependenceCertificate norm_independence_test(const std::vector<long>& primes) {
  return independence_impl<true>(primes);
}

IndependenceCertificate norm_independence_test_serial(
    const std::vector<long>& primes) {
  return independence_impl<false>(primes);
}

const char* strategy_name(SchurStrategy s) {
  switch (s) {
    case SchurStrategy::PGroupRule: return "PGroupRule";
    case SchurStrategy::FSRealTest: return "FSRealTest";
    case SchurStrategy::QuaternionFamily: return "QuaternionFamily";
    case SchurStrategy::UserSupplied: return "UserSupplied";
    case SchurStrategy::CyclotomicBase: return "CyclotomicBase";
    case SchurStrategy::ExplicitModel: return "ExplicitModel";
  }
  return "Unknown";
}

namespace {

bool is_faithful(const Character& chi) {
  long deg = chi.degree();
  for (size_t c = 1; c < chi.values.size(); ++c)
    if (chi.values[c] == CycloNum(deg)) return false;
  return true;
}

// The central involution y^2 has character value -2 on the designated
// 2-dimensional character of the quaternion-semidirect family.
bool is_designated_quaternion_char(const Character& chi,
                                   const FiniteGroup& g) {
  if (chi.degree() != 2 || !is_faithful(chi)) return false;
  if (g.generators().size() < 2) return false;
  int y = g.index_of(g.generators()[1]);
  if (y < 0) return false;
  int y2 = g.mul(y, y);
  return chi.values[g.class_of(y2)] == CycloNum(-2);
}

}  // namespace

SchurIndexResult schur_index(const Character& chi, const BaseField& k,
                             const CharacterTable& table,
                             std::optional<long> hint,
                             const std::vector<CycloMat>* model) {
  if (inner_product(chi, chi) != 1)
    fail(Errc::NotIrreducible, "schur_index needs an absolutely irreducible character");
  const FiniteGroup& g = *chi.group;
  const long deg = chi.degree();
  const long n = g.order();

  // Brauer: with a primitive e-th root of unity in k, everything is defined
  // over k.
  if (field_contains(k, BaseField::cyclotomic(g.exponent())))
    return {1, SchurStrategy::CyclotomicBase,
            "base field contains a primitive " + std::to_string(g.exponent()) +
                "th root of unity; the representation is defined over k"};

  // p-group rule
  {
    long m = n, p = 0;
    for (long q = 2; q * q <= m; ++q)
      if (m % q == 0) {
        p = q;
        break;
      }
    if (p == 0) p = m;
    bool p_group = true;
    while (m % p == 0) m /= p;
    if (m != 1) p_group = false;
    if (n == 1) p_group = true;

    if (p_group && n > 1) {
      if (p % 2 == 1)
        return {1, SchurStrategy::PGroupRule,
                "odd p-group: the Schur index is 1"};
      int fs = fs_indicator(chi);
      BaseField kchi = character_field(chi, k);
      if (fs == -1 && kchi.contains_minus_one()) {
        std::string cert =
            "2-group with FS indicator -1 and real-embeddable k(chi): index 2 "
            "(implementation rule combining Schilling's bound with the real "
            "place; override with a hint if needed)";
        if (g.family().kind == FamilyTag::Kind::SchillingTwoGroup &&
            deg == 2)
          cert += "; family certificate: (zeta_s - zeta_s^-1)^2 < 0, so the "
                  "algebra ramifies at the real place and A x R = H";
        return {2, SchurStrategy::PGroupRule, cert};
      }
      return {1, SchurStrategy::PGroupRule,
              "2-group without the quaternionic/real obstruction "
              "(implementation rule; override with a hint if needed)"};
    }
    if (n == 1)
      return {1, SchurStrategy::PGroupRule, "trivial group"};
  }

  // constructed quaternion-semidirect family
  if (g.family().kind == FamilyTag::Kind::QuaternionSemidirect &&
      is_designated_quaternion_char(chi, g)) {
    IndependenceCertificate cert = norm_independence_test({g.family().p});
    if (cert.independent) {
      const IndependenceRow& row = cert.rows[0];
      return {2, SchurStrategy::QuaternionFamily,
              "A = ((zeta_p - zeta_p^-1)^2, -1) over the real cyclotomic "
              "field is non-split: N(T) = " + row.norm.get_str() + " = " +
                  row.factorization + "; " + row.reason};
    }
  }

  // FS/real-place forcing: a symplectic character over a real-embeddable
  // character field has even local index at the real place, so index >= 2;
  // divisibility in the degree pins it to exactly 2 when 2 || deg.
  {
    int fs = fs_indicator(chi);
    BaseField kchi = character_field(chi, k);
    if (fs == -1 && kchi.contains_minus_one() && (deg == 2 || deg % 4 == 2))
      return {2, SchurStrategy::FSRealTest,
              "FS indicator -1 with real-embeddable k(chi) forces index >= 2; "
              "index divides deg = " + std::to_string(deg) +
                  " whose 2-part is 2, so index = 2"};
  }

  // explicit model over k(chi) realizes the representation there: index 1
  if (model) {
    BaseField kchi = character_field(chi, k);
    Character model_chi = character_of_rep(*model, g);
    bool matches = model_chi.values == chi.values;
    bool in_field = true;
    for (const CycloMat& m : *model)
      for (const auto& row : m)
        for (const CycloNum& x : row)
          if (!fixed_by(x, kchi)) in_field = false;
    if (matches && in_field) {
      long env = envelope_matrix_dimension(*model, kchi, g);
      if (env != deg * deg)
        fail(Errc::Internal, "envelope of an irreducible model is not deg^2");
      return {1, SchurStrategy::ExplicitModel,
              "explicit model over k(chi) with envelope dimension " +
                  std::to_string(env) + " = deg^2: index 1"};
    }
    fail(Errc::BadInput, matches ? "model entries are not in k(chi)"
                                 : "model character does not match chi");
  }

  if (hint) {
    if (*hint < 1 || deg % *hint != 0)
      fail(Errc::BadInput, "hint must be a positive divisor of the degree");
    return {*hint, SchurStrategy::UserSupplied,
            "user-supplied value " + std::to_string(*hint) +
                " (consistency: divides deg = " + std::to_string(deg) + ")"};
  }

  fail(Errc::Unsupported,
       "no Schur index strategy applies to this character/field; supply a "
       "hint or an explicit model");
}

}  // namespace edrep
