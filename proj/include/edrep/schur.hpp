// Quaternion algebras over Q (Hilbert symbols), the norm/two-squares
// independence certificate for the quaternion family, and the Schur index
// strategy dispatcher. Strategies either certify a value or refuse; nothing
// is guessed.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edrep/character.hpp"
#include "edrep/rational.hpp"

namespace edrep {

struct QuaternionQ {
  Rat a, b;  // the algebra (a, b) over Q; both nonzero
};

struct Place {
  bool infinite = false;
  Int p = 0;  // prime, when finite

  static Place infinity() { return {true, 0}; }
  static Place prime(Int q) { return {false, std::move(q)}; }
};

// Standard Hilbert symbol (a, b)_v over Q; symmetric and bimultiplicative.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

// The finite set of places where (a, b)_v could be -1.
std::vector<Place> ramification_candidates(const Rat& a, const Rat& b);

bool quaternion_splits_q(const QuaternionQ& alg);

struct FactorConfig {
  unsigned long trial_bound = 1000000;   // trial division limit
  unsigned long rho_iterations = 20000000;  // Pollard rho budget
};

// Prime factorization (p, exponent), ascending; n >= 1.
std::vector<std::pair<Int, long>> factorize(Int n,
                                            const FactorConfig& cfg = {});

std::string factorization_str(const Int& n, const FactorConfig& cfg = {});

// Fermat: true iff every prime = 3 mod 4 divides n to an even power.
bool sum_of_two_squares(const Int& n, const FactorConfig& cfg = {});

// (-1)^|S| * prod_{p in S} p^[k:k_p] with [k:k_p] = prod_{q != p in full}
// (q-1)/2, for the compositum k of the real subfields of Q(zeta_q), q in
// full. S must be a nonempty subset of full.
Int norm_t(const std::vector<long>& subset, const std::vector<long>& full);

struct IndependenceRow {
  std::vector<long> subset;
  Int norm;
  std::string factorization;
  bool passes = false;
  std::string reason;
};

struct IndependenceCertificate {
  bool independent = false;
  std::vector<IndependenceRow> rows;  // one per nonempty subset, mask order
};

// The quaternion classes over the real compositum are independent in the
// Brauer group iff no subset's tensor product splits; each subset is decided
// by the sign of norm_t, or the two-squares test when the sign is positive.
IndependenceCertificate norm_independence_test(const std::vector<long>& primes);
IndependenceCertificate norm_independence_test_serial(
    const std::vector<long>& primes);

enum class SchurStrategy {
  PGroupRule,
  FSRealTest,
  QuaternionFamily,
  UserSupplied,
  CyclotomicBase,
  ExplicitModel,
};

const char* strategy_name(SchurStrategy s);

struct SchurIndexResult {
  long value = 1;
  SchurStrategy strategy = SchurStrategy::UserSupplied;
  std::string certificate;
};

// Dispatches, in order: base field containing zeta_e (index 1 by Brauer's
// theorem); the p-group rule; the constructed quaternion families; the
// FS/real-place forcing test; an explicit model over k(chi) when supplied;
// and finally a user hint after consistency checks. Errors with Unsupported
// when nothing applies.
SchurIndexResult schur_index(const Character& chi, const BaseField& k,
                             const CharacterTable& table,
                             std::optional<long> hint = std::nullopt,
                             const std::vector<CycloMat>* model = nullptr);

}  // namespace edrep
