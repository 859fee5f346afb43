#include "edrep/gf.hpp"

#include <map>
#include <mutex>

#include "edrep/numutil.hpp"

namespace edrep {

namespace {

// dense univariate polynomials over F_p, used only to build the tables
using Pol = std::vector<long>;

void trim(Pol& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Pol mul_mod(const Pol& a, const Pol& b, const Pol& f, long p) {
  if (a.empty() || b.empty()) return {};
  Pol c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  // reduce modulo monic f
  for (long i = static_cast<long>(c.size()) - 1;
       i >= static_cast<long>(f.size()) - 1; --i) {
    long t = c[i];
    if (t == 0) continue;
    c[i] = 0;
    for (size_t k = 0; k + 1 < f.size(); ++k) {
      size_t idx = i - (f.size() - 1) + k;
      c[idx] = ((c[idx] - t * f[k]) % p + p) % p;
    }
  }
  trim(c);
  return c;
}

Pol pow_mod(Pol base, long e, const Pol& f, long p) {
  Pol r = {1};
  while (e > 0) {
    if (e & 1) r = mul_mod(r, base, f, p);
    base = mul_mod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Pol gcd_pol(Pol a, Pol b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b with b made monic
    long inv = invmod(b.back(), p);
    Pol r = a;
    while (r.size() >= b.size()) {
      long q = (r.back() * inv) % p;
      if (q != 0) {
        size_t off = r.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
          r[off + i] = ((r[off + i] - q * b[i]) % p + p) % p;
      }
      r.pop_back();
      trim(r);
      if (r.empty()) break;
    }
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_irreducible(const Pol& f, long p) {
  const int m = static_cast<int>(f.size()) - 1;
  // x^(p^m) = x mod f, and gcd(x^(p^(m/r)) - x, f) = 1 for prime r | m
  Pol x = {0, 1};
  std::vector<Pol> x_pows(m + 1);  // x^(p^k) mod f
  x_pows[0] = x;
  for (int k = 1; k <= m; ++k) x_pows[k] = pow_mod(x_pows[k - 1], p, f, p);
  Pol diff = x_pows[m];
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = ((diff[1] - 1) % p + p) % p;
  trim(diff);
  if (!diff.empty()) return false;
  for (int r = 2; r <= m; ++r) {
    if (m % r != 0) continue;
    bool rprime = true;
    for (int d = 2; d * d <= r; ++d)
      if (r % d == 0) rprime = false;
    if (!rprime) continue;
    Pol g = x_pows[m / r];
    if (g.size() < 2) g.resize(2, 0);
    g[1] = ((g[1] - 1) % p + p) % p;
    trim(g);
    if (gcd_pol(f, g, p).size() != 1) return false;
  }
  return true;
}

long encode(const Pol& f, long p) {
  long code = 0;
  for (size_t i = f.size(); i-- > 0;) code = code * p + f[i];
  return code;
}

Pol decode(long code, long p, int m) {
  Pol f(m, 0);
  for (int i = 0; i < m; ++i) {
    f[i] = code % p;
    code /= p;
  }
  trim(f);
  return f;
}

}  // namespace

GFTable::GFTable(long p, int m) : p_(p), m_(m) {
  if (!is_prime_long(p)) fail(Errc::BadPrime, "GF characteristic must be prime");
  if (m < 1) fail(Errc::BadInput, "GF extension degree must be >= 1");
  q_ = 1;
  for (int i = 0; i < m; ++i) {
    q_ *= p;
    if (q_ > kMaxQ) fail(Errc::DegenerateEvaluation, "field size cap exceeded");
  }

  // find a monic irreducible of degree m (identity for m = 1)
  Pol modulus;
  if (m == 1) {
    modulus = {0, 1};
  } else {
    for (long tail = 0; tail < q_; ++tail) {
      Pol f = decode(tail, p, m);
      f.resize(m + 1, 0);
      f[m] = 1;
      if (is_irreducible(f, p)) {
        modulus = f;
        break;
      }
    }
    if (modulus.empty()) fail(Errc::Internal, "no irreducible polynomial found");
  }

  // find a multiplicative generator, then fill the tables
  std::vector<long> prime_factors;
  {
    long t = q_ - 1;
    for (long d = 2; d * d <= t; ++d)
      if (t % d == 0) {
        prime_factors.push_back(d);
        while (t % d == 0) t /= d;
      }
    if (t > 1) prime_factors.push_back(t);
  }
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, -1);
  for (long cand = 1; cand < q_; ++cand) {
    Pol g = decode(cand, p, m == 1 ? 1 : m);
    if (m == 1 && cand >= p) break;
    bool ok = true;
    for (long r : prime_factors)
      if (encode(pow_mod(g, (q_ - 1) / r, modulus, p), p) == 1) {
        ok = false;
        break;
      }
    if (!ok) continue;
    Pol cur = {1};
    bool filled = true;
    for (long i = 0; i < q_ - 1; ++i) {
      long code = encode(cur, p);
      exp_[i] = code;
      if (log_[code] != -1) {
        filled = false;  // order too small, not a generator
        break;
      }
      log_[code] = i;
      cur = mul_mod(cur, g, modulus, p);
    }
    if (filled) return;
    std::fill(log_.begin(), log_.end(), -1);
  }
  fail(Errc::Internal, "no multiplicative generator found");
}

long GFTable::add(long a, long b) const {
  if (p_ == 2) return a ^ b;
  long r = 0, mult = 1;
  for (int i = 0; i < m_; ++i) {
    r += ((a % p_) + (b % p_)) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return r;
}

long GFTable::neg(long a) const {
  if (p_ == 2) return a;
  long r = 0, mult = 1;
  for (int i = 0; i < m_; ++i) {
    r += (p_ - a % p_) % p_ * mult;
    a /= p_;
    mult *= p_;
  }
  return r;
}

long GFTable::sub(long a, long b) const { return add(a, neg(b)); }

long GFTable::mul(long a, long b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

long GFTable::inv(long a) const {
  if (a == 0) fail(Errc::BadInput, "GF inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

long GFTable::pow(long a, long e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) fail(Errc::BadInput, "GF pow of zero to negative");
    return 0;
  }
  long le = (log_[a] * (e % (q_ - 1))) % (q_ - 1);
  if (le < 0) le += q_ - 1;
  return exp_[le];
}

GFPtr gf_field(long p, int m) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, GFPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  GFPtr f = std::make_shared<GFTable>(p, m);
  cache[key] = f;
  return f;
}

}  // namespace edrep
