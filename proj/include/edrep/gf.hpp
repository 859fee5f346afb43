// Small finite fields F_{p^m} with exp/log tables, used for randomized
// evaluation and for the base case of root lifting. Elements are codes:
// base-p digit vectors of the polynomial representation packed into a long.
#pragma once

#include <memory>
#include <vector>

#include "edrep/error.hpp"

namespace edrep {

class GFTable {
 public:
  static constexpr long kMaxQ = 1L << 20;

  GFTable(long p, int m);

  long p() const { return p_; }
  int m() const { return m_; }
  long q() const { return q_; }

  long add(long a, long b) const;
  long sub(long a, long b) const;
  long neg(long a) const;
  long mul(long a, long b) const;
  long inv(long a) const;
  long pow(long a, long e) const;

  // F_p sits inside as the constant polynomials, codes 0..p-1.
  bool in_prime_field(long a) const { return a < p_; }

 private:
  long p_, q_;
  int m_;
  std::vector<long> exp_,  // exp_[i] = generator^i, i in [0, q-1)
      log_;                // log_[code] for code != 0
};

using GFPtr = std::shared_ptr<const GFTable>;

GFPtr gf_field(long p, int m);  // cached

}  // namespace edrep
