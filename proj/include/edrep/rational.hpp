// Exact rational scalars. Arithmetic is GMP's; this header only adds the
// canonical string form used in every JSON artifact ("n" or "n/d").
#pragma once

#include <gmpxx.h>

#include <string>

#include "edrep/error.hpp"

namespace edrep {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string rat_str(const Rat& q) {
  Rat c(q);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
  if (s.empty()) fail(Errc::BadInput, "empty rational literal");
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(Errc::BadInput, "bad rational literal: " + s);
  }
}

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

}  // namespace edrep
