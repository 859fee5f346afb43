// Finite groups as explicit permutation groups with conjugacy class and
// power-map data. Everything is immutable after construction; desk scale
// (order <= configured cap) is assumed throughout.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "edrep/error.hpp"

namespace edrep {

using Perm = std::vector<int>;  // images of 0..d-1

constexpr long kDefaultGroupCap = 10000;

// Provenance of the named family constructors; lets downstream strategies
// recognize the quaternion-semidirect and Schilling-type groups.
struct FamilyTag {
  enum class Kind { None, QuaternionSemidirect, SchillingTwoGroup, Product };
  Kind kind = Kind::None;
  long p = 0;  // QuaternionSemidirect parameter
  long s = 0;  // SchillingTwoGroup parameter
  std::vector<FamilyTag> factors;      // Product
  std::vector<long> factor_orders;     // Product: |G_i| in enumeration order
};

class FiniteGroup {
 public:
  long order() const { return static_cast<long>(elements_.size()); }
  int degree() const { return degree_; }
  long exponent() const { return exponent_; }
  const std::vector<Perm>& elements() const { return elements_; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const FamilyTag& family() const { return family_; }

  int num_classes() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int elem) const { return class_of_[elem]; }
  int class_rep(int c) const { return classes_[c][0]; }
  long class_size(int c) const { return static_cast<long>(classes_[c].size()); }
  int identity() const { return identity_; }
  int inverse(int elem) const { return inverse_[elem]; }

  int mul(int a, int b) const;        // index of elements_[a] * elements_[b]
  int power(int a, long k) const;     // index of elements_[a]^k (k may be < 0)
  long element_order(int a) const;

  // Class of g^j for g in class c; defined for every j (not only units).
  int power_class(long j, int c) const;

  // The spec's power_class_map: requires gcd(j, exponent) = 1 and checks
  // well-definedness on a second class member the first time a j is seen.
  std::vector<int> power_class_map(long j) const;

  int index_of(const Perm& p) const;  // -1 if absent

  static FiniteGroup from_elements(std::vector<Perm> elements,
                                   std::vector<Perm> generators,
                                   std::vector<std::string> labels,
                                   FamilyTag tag, bool regular = false);

 private:
  FiniteGroup() = default;
  void finalize();  // classes, exponent, inverses

  int degree_ = 0;
  int identity_ = 0;
  bool regular_ = false;  // left regular representation, element index = code
  std::vector<int> cayley_;  // order^2 product table, built at desk scale
  long exponent_ = 1;
  std::vector<Perm> elements_;
  std::vector<Perm> generators_;
  std::vector<std::string> labels_;
  std::vector<int> class_of_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> inverse_;
  std::map<Perm, int> index_;
  FamilyTag family_;
};

FiniteGroup from_generators(const std::vector<Perm>& gens,
                            long cap = kDefaultGroupCap,
                            std::vector<std::string> labels = {});

// <a, y | a^p = 1, y^4 = 1, y a y^-1 = a^-1>, order 4p, for p prime,
// p ≡ 3 (mod 4). The subgroup <zeta_p> ⋊ <y> of the quaternion algebra
// ((zeta_p - zeta_p^-1)^2, -1).
FiniteGroup quaternion_semidirect(long p, long cap = kDefaultGroupCap);

// <a, y | a^s = 1, y^2 = a^(s/2), y a y^-1 = a^-1>, order 2s, for s = 2^(l+2).
// s = 4 gives the quaternion group of order 8.
FiniteGroup schilling_two_group(long s, long cap = kDefaultGroupCap);

FiniteGroup direct_product(const std::vector<FiniteGroup>& gs,
                           long cap = kDefaultGroupCap);

}  // namespace edrep
