#include "edrep/numutil.hpp"

#include <algorithm>
#include <set>

#include "edrep/error.hpp"

namespace edrep {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotPermutation: return "NotPermutation";
    case Errc::BadPrime: return "BadPrime";
    case Errc::BadOrder: return "BadOrder";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::NotASubfield: return "NotASubfield";
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotACharacter: return "NotACharacter";
    case Errc::ValuesNotInField: return "ValuesNotInField";
    case Errc::NonConstantMultiplicity: return "NonConstantMultiplicity";
    case Errc::NotAHomomorphism: return "NotAHomomorphism";
    case Errc::BadPlace: return "BadPlace";
    case Errc::FactorizationTimeout: return "FactorizationTimeout";
    case Errc::BadDivisibility: return "BadDivisibility";
    case Errc::NotBalanced: return "NotBalanced";
    case Errc::NotPPowers: return "NotPPowers";
    case Errc::IndependenceFails: return "IndependenceFails";
    case Errc::Unsupported: return "Unsupported";
    case Errc::IrrationalRoots: return "IrrationalRoots";
    case Errc::UnsupportedPrime: return "UnsupportedPrime";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::DegenerateEvaluation: return "DegenerateEvaluation";
    case Errc::BadInput: return "BadInput";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_long(a, b) * b;
}

long powmod(long x, long k, long m) {
  long r = 1 % m;
  x %= m;
  if (x < 0) x += m;
  while (k > 0) {
    if (k & 1) r = (r * x) % m;
    x = (x * x) % m;
    k >>= 1;
  }
  return r;
}

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<long> units_mod(long e) {
  if (e == 1) return {0};  // degenerate; Q(zeta_1) = Q
  std::vector<long> out;
  for (long j = 1; j < e; ++j)
    if (gcd_long(j, e) == 1) out.push_back(j);
  return out;
}

long p_part(long x, long p) {
  if (x < 1) fail(Errc::BadInput, "p_part requires x >= 1");
  long r = 1;
  while (x % p == 0) {
    x /= p;
    r *= p;
  }
  return r;
}

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // Deterministic Miller-Rabin for 64-bit range.
  long d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  auto mulmod = [](long a, long b, long m) -> long {
    return static_cast<long>(static_cast<__int128>(a) * b % m);
  };
  auto powm = [&](long a, long k, long m) -> long {
    long r = 1;
    a %= m;
    while (k) {
      if (k & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      k >>= 1;
    }
    return r;
  };
  for (long a : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    long x = powm(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

long smallest_prime_1_mod(long e, long lower_bound) {
  long l = e + 1;
  while (l <= lower_bound || !is_prime_long(l)) l += e;
  return l;
}

long invmod(long a, long m) {
  long b = ((a % m) + m) % m;
  long r0 = m, r1 = b, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) fail(Errc::BadInput, "invmod: not invertible");
  return ((s0 % m) + m) % m;
}

int legendre_symbol(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) fail(Errc::BadInput, "legendre_symbol: p divides a");
  long r = powmod(a, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

std::vector<long> subgroup_generated(long e, const std::vector<long>& gens) {
  std::set<long> h = {1 % e};
  if (e == 1) return {0};
  std::vector<long> frontier(h.begin(), h.end());
  for (long g : gens) {
    long gm = ((g % e) + e) % e;
    if (gcd_long(gm, e) != 1) fail(Errc::NotAUnit, "generator not a unit mod e");
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<long> cur(h.begin(), h.end());
    for (long x : cur)
      for (long g : gens) {
        long y = (x * (((g % e) + e) % e)) % e;
        if (h.insert(y).second) grew = true;
      }
  }
  return std::vector<long>(h.begin(), h.end());
}

bool is_subgroup_mod(long e, const std::vector<long>& h) {
  if (e == 1) return h.size() == 1;
  std::set<long> s(h.begin(), h.end());
  if (!s.count(1)) return false;
  for (long a : s) {
    if (a <= 0 || a >= e || gcd_long(a, e) != 1) return false;
    for (long b : s)
      if (!s.count((a * b) % e)) return false;
  }
  return true;
}

}  // namespace edrep
