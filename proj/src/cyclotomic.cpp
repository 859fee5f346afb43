#include "edrep/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

#include "edrep/numutil.hpp"

namespace edrep {

namespace {

// Per-conductor context: Phi_e and the table of zeta^m in the power basis.
struct CycloCtx {
  long e = 1;
  long phi = 1;
  std::vector<Rat> phi_poly;                 // monic, size phi+1
  std::vector<std::vector<Rat>> zeta_pow;    // m -> coeffs of zeta^m, m < e
};

std::vector<Rat> poly_divide_exact(const std::vector<Rat>& num,
                                   const std::vector<Rat>& den) {
  // num, den dense coefficient vectors, den monic; exact division.
  std::vector<Rat> rem = num;
  std::vector<Rat> quot(num.size() >= den.size() ? num.size() - den.size() + 1
                                                 : 1,
                        Rat(0));
  for (long i = static_cast<long>(rem.size()) - 1;
       i >= static_cast<long>(den.size()) - 1; --i) {
    Rat c = rem[i];
    if (c == 0) continue;
    quot[i - (den.size() - 1)] = c;
    for (size_t k = 0; k < den.size(); ++k)
      rem[i - (den.size() - 1) + k] -= c * den[k];
  }
  for (const Rat& r : rem)
    if (r != 0) fail(Errc::Internal, "cyclotomic division not exact");
  return quot;
}

std::vector<Rat> compute_phi_poly(long e,
                                  std::map<long, std::vector<Rat>>& cache) {
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  // x^e - 1 divided by all Phi_d with d | e, d < e
  std::vector<Rat> num(e + 1, Rat(0));
  num[0] = -1;
  num[e] = 1;
  for (long d = 1; d < e; ++d)
    if (e % d == 0) num = poly_divide_exact(num, compute_phi_poly(d, cache));
  cache[e] = num;
  return num;
}

const CycloCtx& ctx(long e) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<CycloCtx>> cache;
  static std::map<long, std::vector<Rat>> phi_cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(e);
  if (it != cache.end()) return *it->second;

  auto c = std::make_unique<CycloCtx>();
  c->e = e;
  c->phi = euler_phi(e);
  c->phi_poly = compute_phi_poly(e, phi_cache);
  c->zeta_pow.assign(e, std::vector<Rat>(c->phi, Rat(0)));
  c->zeta_pow[0][0] = 1;
  for (long m = 1; m < e; ++m) {
    // zeta^m = zeta * zeta^(m-1), reduced mod Phi_e
    std::vector<Rat> shifted(c->phi + 1, Rat(0));
    for (long i = 0; i < c->phi; ++i) shifted[i + 1] = c->zeta_pow[m - 1][i];
    Rat top = shifted[c->phi];
    std::vector<Rat>& out = c->zeta_pow[m];
    for (long i = 0; i < c->phi; ++i)
      out[i] = shifted[i] - top * c->phi_poly[i];
  }
  const CycloCtx& ref = *c;
  cache[e] = std::move(c);
  return ref;
}

}  // namespace

const std::vector<Rat>& cyclotomic_polynomial(long e) {
  return ctx(e).phi_poly;
}

CycloNum CycloNum::zeta(long e, long k) {
  if (e < 1) fail(Errc::BadInput, "conductor must be >= 1");
  k = ((k % e) + e) % e;
  return from_coeffs(e, ctx(e).zeta_pow[k]);
}

CycloNum CycloNum::from_coeffs(long e, std::vector<Rat> coeffs) {
  const CycloCtx& c = ctx(e);
  if (static_cast<long>(coeffs.size()) != c.phi)
    fail(Errc::BadInput, "coefficient vector has wrong length");
  CycloNum x;
  x.conductor_ = e;
  x.coeffs_ = std::move(coeffs);
  for (Rat& q : x.coeffs_) q.canonicalize();
  return x;
}

CycloNum CycloNum::lifted_to(long e) const {
  if (e == conductor_) return *this;
  if (e % conductor_ != 0)
    fail(Errc::BadInput, "lift target conductor is not a multiple");
  const CycloCtx& c = ctx(e);
  long stride = e / conductor_;
  std::vector<Rat> out(c.phi, Rat(0));
  for (size_t m = 0; m < coeffs_.size(); ++m) {
    if (coeffs_[m] == 0) continue;
    const std::vector<Rat>& pw = c.zeta_pow[(m * stride) % e];
    for (long i = 0; i < c.phi; ++i) out[i] += coeffs_[m] * pw[i];
  }
  return from_coeffs(e, std::move(out));
}

bool CycloNum::is_zero() const {
  for (const Rat& q : coeffs_)
    if (q != 0) return false;
  return true;
}

bool CycloNum::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rat CycloNum::to_rational() const {
  if (!is_rational()) fail(Errc::BadInput, "value is not rational: " + str());
  return coeffs_[0];
}

CycloNum CycloNum::galois(long j) const {
  long e = conductor_;
  long jm = ((j % e) + e) % e;
  if (e == 1) return *this;
  if (gcd_long(jm, e) != 1) fail(Errc::NotAUnit, "galois: j not a unit mod e");
  const CycloCtx& c = ctx(e);
  std::vector<Rat> out(c.phi, Rat(0));
  for (size_t m = 0; m < coeffs_.size(); ++m) {
    if (coeffs_[m] == 0) continue;
    const std::vector<Rat>& pw = c.zeta_pow[(jm * m) % e];
    for (long i = 0; i < c.phi; ++i) out[i] += coeffs_[m] * pw[i];
  }
  return from_coeffs(e, std::move(out));
}

CycloNum operator+(const CycloNum& a, const CycloNum& b) {
  long e = lcm_long(a.conductor_, b.conductor_);
  CycloNum x = a.lifted_to(e), y = b.lifted_to(e);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
  return x;
}

CycloNum operator-(const CycloNum& a, const CycloNum& b) {
  long e = lcm_long(a.conductor_, b.conductor_);
  CycloNum x = a.lifted_to(e), y = b.lifted_to(e);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] -= y.coeffs_[i];
  return x;
}

CycloNum CycloNum::operator-() const {
  CycloNum x = *this;
  for (Rat& q : x.coeffs_) q = -q;
  return x;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  long e = lcm_long(a.conductor_, b.conductor_);
  CycloNum x = a.lifted_to(e), y = b.lifted_to(e);
  const CycloCtx& c = ctx(e);
  long phi = c.phi;
  std::vector<Rat> conv(2 * phi - 1, Rat(0));
  for (long i = 0; i < phi; ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (long j = 0; j < phi; ++j) {
      if (y.coeffs_[j] == 0) continue;
      conv[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  for (long i = 2 * phi - 2; i >= phi; --i) {
    Rat top = conv[i];
    if (top == 0) continue;
    conv[i] = 0;
    for (long k = 0; k < phi; ++k) conv[i - phi + k] -= top * c.phi_poly[k];
  }
  conv.resize(phi);
  return CycloNum::from_coeffs(e, std::move(conv));
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  long e = lcm_long(a.conductor_, b.conductor_);
  return a.lifted_to(e).coeffs_ == b.lifted_to(e).coeffs_;
}

int CycloNum::compare(const CycloNum& a, const CycloNum& b) {
  long e = lcm_long(a.conductor_, b.conductor_);
  CycloNum x = a.lifted_to(e), y = b.lifted_to(e);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) {
    int c = cmp(x.coeffs_[i], y.coeffs_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string CycloNum::str() const {
  if (is_rational()) return rat_str(coeffs_[0]);
  std::ostringstream os;
  bool first = true;
  for (long i = static_cast<long>(coeffs_.size()) - 1; i >= 0; --i) {
    if (coeffs_[i] == 0) continue;
    Rat c = coeffs_[i];
    if (!first) {
      os << (c > 0 ? " + " : " - ");
      if (c < 0) c = -c;
    }
    first = false;
    if (i == 0) {
      os << rat_str(c);
    } else {
      if (c != 1) os << rat_str(c) << "*";
      os << "z" << conductor_;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// ---- BaseField -------------------------------------------------------------

BaseField BaseField::rationals() {
  BaseField f;
  f.description = "Q";
  return f;
}

BaseField BaseField::cyclotomic(long e) {
  BaseField f;
  if (e <= 2) return rationals();
  f.conductor = e;
  f.subgroup = {1};
  f.description = "Q(z" + std::to_string(e) + ")";
  return f;
}

BaseField BaseField::real_cyclotomic(long e) {
  if (e <= 4) return rationals();
  BaseField f;
  f.conductor = e;
  f.subgroup = subgroup_generated(e, {e - 1});
  f.description = "Q(z" + std::to_string(e) + "+z" + std::to_string(e) + "^-1)";
  return f;
}

BaseField BaseField::fixed_field(long e, const std::vector<long>& gens,
                                 std::string description) {
  BaseField f;
  f.conductor = e;
  f.subgroup = e == 1 ? std::vector<long>{1} : subgroup_generated(e, gens);
  f.description = std::move(description);
  f.validate();
  return f;
}

void BaseField::validate() const {
  if (conductor < 1) fail(Errc::BadInput, "conductor must be >= 1");
  if (conductor == 1) {
    if (subgroup != std::vector<long>{1})
      fail(Errc::BadInput, "conductor-1 field must have subgroup {1}");
    return;
  }
  if (!is_subgroup_mod(conductor, subgroup))
    fail(Errc::BadInput, "fixing set is not a subgroup of (Z/e)*");
}

BaseField BaseField::lifted_to(long e) const {
  if (e == conductor) return *this;
  if (e % conductor != 0)
    fail(Errc::BadInput, "field lift target is not a multiple");
  BaseField f;
  f.conductor = e;
  f.description = description;
  if (conductor == 1) {
    f.subgroup = units_mod(e);
    return f;
  }
  std::set<long> h(subgroup.begin(), subgroup.end());
  for (long j : units_mod(e))
    if (h.count(j % conductor)) f.subgroup.push_back(j);
  return f;
}

long BaseField::degree_over_q() const {
  if (conductor == 1) return 1;
  return euler_phi(conductor) / static_cast<long>(subgroup.size());
}

bool BaseField::contains_minus_one() const {
  if (conductor <= 2) return true;
  return std::binary_search(subgroup.begin(), subgroup.end(), conductor - 1);
}

bool fixed_by(const CycloNum& x, const BaseField& field) {
  long e = lcm_long(x.conductor(), field.conductor);
  CycloNum xl = x.lifted_to(e);
  for (long j : field.lifted_to(e).subgroup)
    if (xl.galois(j) != xl) return false;
  return true;
}

BaseField stabilizer_field(const std::vector<CycloNum>& xs) {
  long e = 1;
  for (const CycloNum& x : xs) e = lcm_long(e, x.conductor());
  std::vector<CycloNum> lifted;
  for (const CycloNum& x : xs) lifted.push_back(x.lifted_to(e));
  BaseField f;
  f.conductor = e;
  f.subgroup.clear();
  if (e == 1) {
    f.subgroup = {1};
    return f;
  }
  for (long j : units_mod(e)) {
    bool fixes = true;
    for (const CycloNum& x : lifted)
      if (x.galois(j) != x) {
        fixes = false;
        break;
      }
    if (fixes) f.subgroup.push_back(j);
  }
  return f;
}

bool field_contains(const BaseField& k, const BaseField& sub) {
  long e = lcm_long(k.conductor, sub.conductor);
  std::vector<long> hk = k.lifted_to(e).subgroup;
  std::vector<long> hs = sub.lifted_to(e).subgroup;
  return std::includes(hs.begin(), hs.end(), hk.begin(), hk.end());
}

long field_degree(const BaseField& k, const BaseField& sub) {
  long e = lcm_long(k.conductor, sub.conductor);
  std::vector<long> hk = k.lifted_to(e).subgroup;
  std::vector<long> hs = sub.lifted_to(e).subgroup;
  if (!std::includes(hs.begin(), hs.end(), hk.begin(), hk.end()))
    fail(Errc::NotASubfield, "field containment fails");
  return static_cast<long>(hs.size() / hk.size());
}

}  // namespace edrep
