// Irreducible character tables (Burnside-Dixon over F_l with exact
// cyclotomic lifting), inner products, Frobenius-Schur indicators, character
// fields, Galois orbits, and envelope-algebra dimensions.
#pragma once

#include <vector>

#include "edrep/cyclotomic.hpp"
#include "edrep/group.hpp"

namespace edrep {

struct Character {
  const FiniteGroup* group = nullptr;
  std::vector<CycloNum> values;  // one per conjugacy class

  long degree() const;  // value at the identity class, a positive integer
};

struct CharacterTable {
  const FiniteGroup* group = nullptr;
  std::vector<Character> irreducibles;  // sorted by degree, then values
};

// Complete table of absolutely irreducible characters with exact values of
// conductor dividing the group exponent. Verifies both orthogonality
// relations and sum of squared degrees before returning.
CharacterTable character_table(const FiniteGroup& g);

// (1/|G|) sum over g of a(g) * conj(b(g)), computed classwise.
Rat inner_product(const Character& a, const Character& b);

// (1/|G|) sum over g of chi(g^2), in {-1, 0, 1}; chi must be absolutely
// irreducible.
int fs_indicator(const Character& chi);

// The compositum k(chi) as a fixing-subgroup field.
BaseField character_field(const Character& chi, const BaseField& k);

// Partition of the table's irreducibles under chi -> chi o (g -> g^j),
// j running over the fixing subgroup of k.
std::vector<std::vector<int>> galois_orbits(const CharacterTable& table,
                                            const BaseField& k);

// Multiplicities of chi in the irreducible basis; errors with NotACharacter
// unless all inner products are non-negative integers.
std::vector<long> decompose(const Character& chi, const CharacterTable& table);

// dim_k Env_k(chi) = sum over k-orbits present in chi of [k(chi_O):k] *
// deg(chi_i)^2; multiplicities do not matter.
long envelope_dimension(const Character& chi, const BaseField& k,
                        const CharacterTable& table);

using CycloMat = std::vector<std::vector<CycloNum>>;

// Explicit-representation side of the same quantity: the k-dimension of the
// span of {rho(g)}. rep[i] is the matrix of element i; the homomorphism
// property is verified on generator products.
long envelope_matrix_dimension(const std::vector<CycloMat>& rep,
                               const BaseField& k, const FiniteGroup& g);

// Classwise traces of an explicit representation (no homomorphism check).
Character character_of_rep(const std::vector<CycloMat>& rep,
                           const FiniteGroup& g);

// Sum of several characters of the same group, optionally scaled.
Character character_sum(const std::vector<const Character*>& parts);
Character character_scale(const Character& chi, long s);

}  // namespace edrep
