// Small integer number theory used throughout: gcd/lcm, Euler phi, unit
// groups mod e, p-parts, primality and deterministic prime scans.
#pragma once

#include <cstdint>
#include <vector>

namespace edrep {

long gcd_long(long a, long b);
long lcm_long(long a, long b);

// x^k mod m, safe for m < 2^31.
long powmod(long x, long k, long m);

long euler_phi(long n);

// Units of Z/eZ, sorted ascending. units_mod(1) = {0}-free convention: {1}
// is not representable mod 1; callers treat conductor 1 as the rationals.
std::vector<long> units_mod(long e);

// Highest power of p dividing x (x >= 1), by repeated division.
long p_part(long x, long p);

bool is_prime_long(long n);

// Smallest prime l with l ≡ 1 (mod e) and l > lower_bound.
long smallest_prime_1_mod(long e, long lower_bound);

// Multiplicative inverse mod m (m prime or gcd=1), error if none.
long invmod(long a, long m);

// Legendre symbol (a|p) for odd prime p, a not divisible by p: returns ±1.
int legendre_symbol(long a, long p);

// Subgroup of (Z/eZ)* generated by the given residues (all coprime to e).
std::vector<long> subgroup_generated(long e, const std::vector<long>& gens);

bool is_subgroup_mod(long e, const std::vector<long>& h);

}  // namespace edrep
