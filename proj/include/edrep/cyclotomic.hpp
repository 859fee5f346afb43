// Exact arithmetic in Q(zeta_e): residues mod the cyclotomic polynomial
// Phi_e, the Galois action of (Z/eZ)*, and subfields encoded by their fixing
// subgroups. No floating point anywhere; equality is exact.
#pragma once

#include <string>
#include <vector>

#include "edrep/rational.hpp"

namespace edrep {

class CycloNum {
 public:
  CycloNum() : conductor_(1), coeffs_{Rat(0)} {}
  explicit CycloNum(const Rat& q) : conductor_(1), coeffs_{q} {}
  explicit CycloNum(long n) : conductor_(1), coeffs_{Rat(n)} {}

  // zeta_e^k
  static CycloNum zeta(long e, long k = 1);
  static CycloNum from_coeffs(long e, std::vector<Rat> coeffs);

  long conductor() const { return conductor_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  CycloNum lifted_to(long e) const;  // conductor() must divide e

  bool is_zero() const;
  bool is_rational() const;
  Rat to_rational() const;  // error if not rational

  // The automorphism zeta_e -> zeta_e^j; requires gcd(j, e) = 1.
  CycloNum galois(long j) const;

  friend CycloNum operator+(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator-(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& b) { return *this = *this + b; }
  CycloNum& operator-=(const CycloNum& b) { return *this = *this - b; }
  CycloNum& operator*=(const CycloNum& b) { return *this = *this * b; }
  friend bool operator==(const CycloNum& a, const CycloNum& b);
  friend bool operator!=(const CycloNum& a, const CycloNum& b) {
    return !(a == b);
  }

  // Total order for deterministic sorting (conductor, then coeffs).
  static int compare(const CycloNum& a, const CycloNum& b);

  std::string str() const;  // human-readable, e.g. "1/2*z12^4 + 1"

 private:
  long conductor_;
  std::vector<Rat> coeffs_;  // size phi(conductor), reduced mod Phi_e
};

// Cyclotomic polynomial Phi_e as monic integer coefficients (degree phi(e)).
const std::vector<Rat>& cyclotomic_polynomial(long e);

// A subfield of Q(zeta_e) given by its fixing subgroup H of (Z/eZ)*.
// Conductor 1 encodes Q itself (H = {1} by convention).
struct BaseField {
  long conductor = 1;
  std::vector<long> subgroup = {1};  // sorted, closed, contains 1
  std::string description;

  static BaseField rationals();
  static BaseField cyclotomic(long e);           // Q(zeta_e)
  static BaseField real_cyclotomic(long e);      // Q(zeta_e + zeta_e^-1)
  static BaseField fixed_field(long e, const std::vector<long>& gens,
                               std::string description = "");

  BaseField lifted_to(long e) const;  // conductor must divide e
  long degree_over_q() const;
  bool contains_minus_one() const;  // field has a real embedding
  void validate() const;
};

bool fixed_by(const CycloNum& x, const BaseField& field);

// Smallest field containing all the values: the fixing subgroup of the set.
BaseField stabilizer_field(const std::vector<CycloNum>& xs);

// [k : sub] for sub ⊆ k, computed as a subgroup index. NotASubfield if the
// containment fails.
long field_degree(const BaseField& k, const BaseField& sub);

// Whether field k contains field sub (after lifting to a common conductor).
bool field_contains(const BaseField& k, const BaseField& sub);

}  // namespace edrep
