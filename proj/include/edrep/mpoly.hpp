// Sparse multivariate polynomials and reduced fractions over a prime field
// F_p, with exact gcd by primitive pseudo-remainder sequences. The value
// domain of the rank-variety machinery. Seven 9-bit exponent fields packed
// into one 64-bit key per monomial: function-field variables a1..a6 plus one
// slot the rank-variety code reserves for the dehomogenized form variable.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "edrep/error.hpp"
#include "edrep/gf.hpp"

namespace edrep {

constexpr int kMaxVars = 7;
constexpr int kMaxExp = 511;

// variable i occupies a 9-bit field, high bits first, so map order sorts a1
// last; iterating the map in reverse prints highest a1-degree first.
using PackedExp = std::uint64_t;

inline int exp_of(PackedExp m, int var) {
  return static_cast<int>((m >> (9 * (kMaxVars - 1 - var))) & 0x1ff);
}

PackedExp exp_set(PackedExp m, int var, int e);
PackedExp exp_mul(PackedExp a, PackedExp b);  // adds exponents, checks cap

class MPoly {
 public:
  MPoly() : p_(2), nvars_(0) {}
  MPoly(long p, int nvars) : p_(p), nvars_(nvars) {}
  static MPoly constant(long p, int nvars, long c);
  static MPoly variable(long p, int nvars, int var);

  long p() const { return p_; }
  int nvars() const { return nvars_; }
  const std::map<PackedExp, long>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  long constant_value() const;  // 0 for the zero polynomial

  int degree(int var) const;
  int total_degree() const;

  void add_term(PackedExp mono, long coeff);

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.p_ == b.p_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly scaled(long c) const;
  MPoly pow(long e) const;

  MPoly derivative(int var) const;

  // coefficient of var^k, a polynomial in the remaining variables
  MPoly coeff_of(int var, int k) const;

  // substitute variable var by the given polynomial
  MPoly substituted(int var, const MPoly& value) const;

  // full evaluation at a point with coordinates in F_{p^m}
  long eval_gf(const GFTable& f, const std::vector<long>& point) const;

  // leading coefficient under the packed-key order, for normalization
  long lead_coeff() const;

  std::string str() const;  // canonical: sorted monomials, "a1^2*a2 + 1"

 private:
  long p_;
  int nvars_;
  std::map<PackedExp, long> terms_;
};

// exact division; errors if b does not divide a
MPoly mpoly_divexact(const MPoly& a, const MPoly& b);

// gcd normalized with leading coefficient 1; gcd(0,0) = 0
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

// is a a p-th power? returns the p-th root if so (F_p perfect, exponents
// must all be divisible by p)
bool mpoly_pth_root(const MPoly& a, MPoly& root);

class MFrac {
 public:
  MFrac() : num_(2, 0), den_(MPoly::constant(2, 0, 1)) {}
  MFrac(MPoly num, MPoly den);           // reduces and normalizes
  explicit MFrac(const MPoly& num);      // den = 1

  // already-reduced parts with a monic denominator; skips normalization
  static MFrac raw(MPoly num, MPoly den);
  static MFrac constant(long p, int nvars, long c);
  static MFrac variable(long p, int nvars, int var);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  long p() const { return num_.p(); }
  int nvars() const { return num_.nvars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  MFrac operator-() const;
  friend MFrac operator+(const MFrac& a, const MFrac& b);
  friend MFrac operator-(const MFrac& a, const MFrac& b);
  friend MFrac operator*(const MFrac& a, const MFrac& b);
  friend MFrac operator/(const MFrac& a, const MFrac& b);
  friend bool operator==(const MFrac& a, const MFrac& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const MFrac& a, const MFrac& b) { return !(a == b); }

  MFrac inverse() const;
  MFrac derivative(int var) const;

  // evaluation; false if the denominator vanishes at the point
  bool eval_gf(const GFTable& f, const std::vector<long>& point,
               long& out) const;

  std::string str() const;  // "(num)/(den)", "num" when den = 1

 private:
  MPoly num_, den_;
};

// Parser for the fraction grammar: integers, variables a1..aN, + - * / ^,
// parentheses. Used by the ModularRep JSON format.
MFrac parse_mfrac(const std::string& text, long p, int nvars);

}  // namespace edrep
