// The invariant calculator: k-irreducible decomposition, the essential
// (p-)dimension formulas for irreducible characters, canonical p-dimension
// of Weil transfers, and the full report pipeline.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edrep/character.hpp"
#include "edrep/schur.hpp"

namespace edrep {

// One k-irreducible constituent m * (sum of a Galois orbit).
struct KIrredFactor {
  std::vector<int> orbit;  // indices of absolutely irreducible constituents
  long r = 1;              // orbit size = [k(chi_1) : k]
  long m_raw = 1;          // multiplicity in the input character
  long m = 1;              // gcd(m_raw, schur.value), the effective multiplicity
  long degree = 1;         // common degree of the orbit members
  SchurIndexResult schur;
};

// Abstract datum for a Weil transfer of a generalized Severi-Brauer variety:
// WR_{Z/k} SB(D, m) with [Z:k] = center_degree and D division of the given
// degree. Balancedness is carried as a flag, never recomputed.
struct CsaDescriptor {
  long center_degree = 1;
  long algebra_degree = 1;
  long m = 1;
  bool balanced = true;
};

struct EdReport {
  std::vector<KIrredFactor> factors;
  std::vector<long> primes;
  // per factor: prime -> ed_p of that factor
  std::vector<std::map<long, long>> factor_ed_p;
  // per factor: prime -> exact value when r and the Schur index are p-powers
  std::vector<std::map<long, long>> factor_exact;
  long upper = 0;                     // sum of factor dimension bounds
  std::map<long, long> lower_by_prime;  // max over factors of ed_p
  long n2_bound = 0;                  // floor(deg^2 / 4)
  long g2_bound = 0;                  // floor(|G|^2 / 4)
  std::optional<long> exact_ed;
  std::string exact_justification;
  std::optional<IndependenceCertificate> conic_certificate;
  std::vector<std::string> notes;
};

using SchurHints = std::map<int, long>;                       // orbit rep -> value
using SchurModels = std::map<int, const std::vector<CycloMat>*>;  // orbit rep -> model

// Decomposes a k-valued character into disjoint k-irreducible factors,
// replacing each multiplicity by gcd(multiplicity, Schur index).
std::vector<KIrredFactor> k_irreducible_decomposition(
    const Character& chi, const CharacterTable& table, const BaseField& k,
    const SchurHints& hints = {}, const SchurModels& models = {});

// ed_p of an irreducible factor: p-part(r) * p-part(m) * (p-part(schur) -
// p-part(m)).
long ed_p_irreducible(long r, long m, long schur, long p);

// Exact value r*m*(schur - m) when r and schur are both powers of p.
std::optional<long> ed_exact_if_applicable(const KIrredFactor& f, long p);

// Sum over factors of r*m*(schur - m).
long ed_upper(const std::vector<KIrredFactor>& factors);

// (floor(n^2/4), floor(g^2/4)).
std::pair<long, long> ed_dim_bounds(long n, long g);

// cd_p of WR_{Z/k} SB(D, m): p-part([Z:k]) * p-part(m) * (p-part(deg D) -
// p-part(m)). Requires the balanced flag and m | deg D.
long cd_p_weil(const CsaDescriptor& d, long p);

// Same with m replaced by gcd(j, deg D) for 1 <= j <= deg D.
long cd_p_weil_gcd(const CsaDescriptor& d, long j, long p);

// All-p-power balanced case: the Weil transfer is p-incompressible. The
// unbalanced case raises NotBalanced (failure is possible, not guaranteed).
bool is_p_incompressible(long center_degree, long algebra_degree, long m,
                         bool balanced, long p);

// ed of the sum of the designated quaternion-family characters: equals the
// number of primes, provided the Brauer classes are independent.
long conic_product_ed(const std::vector<long>& primes);

// Weil transfer point criterion: a K-point exists iff ind(A_{K_i}) | m for
// every factor field.
bool weil_has_point(const std::vector<long>& indices, long m);

// Full pipeline; table computed internally when not supplied.
EdReport ed_report(const FiniteGroup& g, const BaseField& k,
                   const Character& chi, const std::vector<long>& primes,
                   const SchurHints& hints = {}, const SchurModels& models = {},
                   const CharacterTable* table = nullptr);

// ---- named-family artifacts (groups come from group.hpp) -------------------

// The designated 2-dimensional character of quaternion_semidirect(p): the
// faithful one with value -2 at y^2 and zeta_p + zeta_p^-1 at a.
Character designated_quaternion_character(const FiniteGroup& g,
                                          const CharacterTable& table);

// The Q-orbit sum of the faithful 2-dimensional characters of
// schilling_two_group(s); Q-valued with r = [Q(zeta_s + zeta_s^-1) : Q]
// absolutely irreducible constituents.
Character designated_schilling_character(const FiniteGroup& g,
                                         const CharacterTable& table);

// The base field of the quaternion family: the compositum of the real
// cyclotomic fields Q(zeta_p + zeta_p^-1).
BaseField quaternion_family_field(const std::vector<long>& primes);

// chi_1 + ... + chi_l on the product of quaternion_semidirect groups, each
// chi_i the designated character pulled back along the projection. The group
// is heap-held so the character's group pointer stays valid across moves.
struct ConicFamily {
  std::shared_ptr<const FiniteGroup> group;
  Character character;
  BaseField field;
  std::vector<long> primes;
};
ConicFamily conic_family(const std::vector<long>& primes,
                         long cap = kDefaultGroupCap);

}  // namespace edrep
