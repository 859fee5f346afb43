#include "edrep/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "edrep/numutil.hpp"

namespace edrep {

PackedExp exp_set(PackedExp m, int var, int e) {
  if (var < 0 || var >= kMaxVars) fail(Errc::BadInput, "variable out of range");
  if (e < 0 || e > kMaxExp) fail(Errc::BadInput, "exponent out of range");
  int shift = 9 * (kMaxVars - 1 - var);
  return (m & ~(PackedExp(0x1ff) << shift)) | (PackedExp(e) << shift);
}

PackedExp exp_mul(PackedExp a, PackedExp b) {
  PackedExp r = 0;
  for (int v = 0; v < kMaxVars; ++v) {
    int e = exp_of(a, v) + exp_of(b, v);
    if (e > kMaxExp) {
      std::string detail = "exponent overflow in product:";
      for (int w = 0; w < kMaxVars; ++w)
        detail += " a" + std::to_string(w + 1) + "=" +
                  std::to_string(exp_of(a, w)) + "+" +
                  std::to_string(exp_of(b, w));
      fail(Errc::BadInput, detail);
    }
    r = exp_set(r, v, e);
  }
  return r;
}

MPoly MPoly::constant(long p, int nvars, long c) {
  MPoly f(p, nvars);
  f.add_term(0, c);
  return f;
}

MPoly MPoly::variable(long p, int nvars, int var) {
  if (var >= kMaxVars) fail(Errc::BadInput, "variable index out of range");
  MPoly f(p, nvars);
  f.add_term(exp_set(0, var, 1), 1);
  return f;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

long MPoly::constant_value() const {
  if (!is_constant()) fail(Errc::BadInput, "polynomial is not constant");
  return terms_.empty() ? 0 : terms_.begin()->second;
}

int MPoly::degree(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, exp_of(m, var));
  return d;
}

int MPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int t = 0;
    for (int v = 0; v < nvars_; ++v) t += exp_of(m, v);
    d = std::max(d, t);
  }
  return d;
}

void MPoly::add_term(PackedExp mono, long coeff) {
  coeff = ((coeff % p_) + p_) % p_;
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(mono, coeff);
  if (!inserted) {
    it->second = (it->second + coeff) % p_;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r(p_, nvars_);
  for (const auto& [m, c] : terms_) r.terms_[m] = p_ - c;
  return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  MPoly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  MPoly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, b.p_ - c);
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(a.p_, std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(exp_mul(ma, mb), ca * cb);
  return r;
}

MPoly MPoly::scaled(long c) const {
  c = ((c % p_) + p_) % p_;
  MPoly r(p_, nvars_);
  if (c == 0) return r;
  for (const auto& [m, cc] : terms_) r.terms_[m] = (cc * c) % p_;
  return r;
}

MPoly MPoly::pow(long e) const {
  MPoly r = MPoly::constant(p_, nvars_, 1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

MPoly MPoly::derivative(int var) const {
  MPoly r(p_, nvars_);
  for (const auto& [m, c] : terms_) {
    int e = exp_of(m, var);
    if (e == 0) continue;
    r.add_term(exp_set(m, var, e - 1), c * (e % p_));
  }
  return r;
}

MPoly MPoly::coeff_of(int var, int k) const {
  MPoly r(p_, nvars_);
  for (const auto& [m, c] : terms_)
    if (exp_of(m, var) == k) r.add_term(exp_set(m, var, 0), c);
  return r;
}

MPoly MPoly::substituted(int var, const MPoly& value) const {
  // Horner over the var-degree slices
  int d = degree(var);
  MPoly r = coeff_of(var, d);
  for (int k = d - 1; k >= 0; --k) r = r * value + coeff_of(var, k);
  return r;
}

long MPoly::eval_gf(const GFTable& f, const std::vector<long>& point) const {
  long acc = 0;
  for (const auto& [m, c] : terms_) {
    long t = c % f.p();
    for (int v = 0; v < nvars_; ++v) {
      int e = exp_of(m, v);
      if (e) t = f.mul(t, f.pow(point[v], e));
    }
    acc = f.add(acc, t);
  }
  return acc;
}

long MPoly::lead_coeff() const {
  if (terms_.empty()) return 0;
  return terms_.rbegin()->second;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << "+";
    first = false;
    const auto& [m, c] = *it;
    bool printed = false;
    if (c != 1 || m == 0) {
      os << c;
      printed = true;
    }
    for (int v = 0; v < nvars_; ++v) {
      int e = exp_of(m, v);
      if (e == 0) continue;
      if (printed) os << "*";
      printed = true;
      os << "a" << (v + 1);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

MPoly mpoly_divexact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) fail(Errc::BadInput, "division by zero polynomial");
  MPoly rem = a;
  MPoly quot(a.p(), a.nvars());
  const PackedExp lead_b = b.terms().rbegin()->first;
  const long lc_b = b.terms().rbegin()->second;
  const long inv_lc = invmod(lc_b, a.p());
  while (!rem.is_zero()) {
    const PackedExp lead_r = rem.terms().rbegin()->first;
    const long lc_r = rem.terms().rbegin()->second;
    // monomial divisibility
    PackedExp q = 0;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = exp_of(lead_r, v) - exp_of(lead_b, v);
      if (e < 0) fail(Errc::Internal, "mpoly_divexact: not divisible");
      q = exp_set(q, v, e);
    }
    MPoly t(a.p(), a.nvars());
    t.add_term(q, lc_r * inv_lc);
    quot = quot + t;
    rem = rem - t * b;
  }
  return quot;
}

namespace {

// divide out the per-variable minimum exponents, leaving `keep` untouched.
// Changes the polynomial by a monomial factor only, which the PRS strips as
// content anyway; keeps the pseudo-remainder multipliers from compounding.
void strip_monomial_content_except(MPoly& f, int keep) {
  if (f.is_zero()) return;
  PackedExp mins = f.terms().begin()->first;
  mins = exp_set(mins, keep, 0);
  for (const auto& [m, c] : f.terms()) {
    PackedExp next = 0;
    for (int v = 0; v < kMaxVars; ++v)
      if (v != keep) next = exp_set(next, v, std::min(exp_of(mins, v), exp_of(m, v)));
    mins = next;
    if (mins == 0) return;
  }
  MPoly out(f.p(), f.nvars());
  for (const auto& [m, c] : f.terms()) {
    PackedExp reduced = 0;
    for (int v = 0; v < kMaxVars; ++v)
      reduced = exp_set(reduced, v, exp_of(m, v) - (v == keep ? 0 : exp_of(mins, v)));
    out.add_term(reduced, c);
  }
  f = std::move(out);
}

// pseudo-remainder of a by b with respect to var (b has positive var-degree),
// up to monomial content in the other variables
MPoly prem(MPoly a, const MPoly& b, int var) {
  const int db = b.degree(var);
  const MPoly lcb = b.coeff_of(var, db);
  int da = a.degree(var);
  while (!a.is_zero() && da >= db) {
    MPoly lca = a.coeff_of(var, da);
    MPoly shift = MPoly::variable(a.p(), a.nvars(), var).pow(da - db);
    a = a * lcb - b * shift * lca;
    strip_monomial_content_except(a, var);
    int nda = a.degree(var);
    if (!a.is_zero() && nda >= da)
      fail(Errc::Internal, "prem did not reduce the degree");
    da = nda;
  }
  return a;
}

// content of a with respect to var: gcd of the var-coefficients
MPoly content_wrt(const MPoly& a, int var) {
  MPoly g(a.p(), a.nvars());
  for (int k = 0; k <= a.degree(var); ++k) {
    MPoly c = a.coeff_of(var, k);
    if (!c.is_zero()) g = mpoly_gcd(g, c);
  }
  return g;
}

MPoly monic_normalize(MPoly a) {
  if (a.is_zero()) return a;
  long inv = invmod(a.lead_coeff(), a.p());
  return a.scaled(inv);
}

}  // namespace

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return monic_normalize(b);
  if (b.is_zero()) return monic_normalize(a);
  if (a.is_constant() || b.is_constant())
    return MPoly::constant(a.p(), a.nvars(), 1);

  // lowest-index variable occurring in either operand (any packed slot,
  // including the reserved one)
  int var = -1;
  for (int v = 0; v < kMaxVars && var < 0; ++v)
    if (a.degree(v) > 0 || b.degree(v) > 0) var = v;

  MPoly ca = content_wrt(a, var), cb = content_wrt(b, var);
  MPoly gamma = mpoly_gcd(ca, cb);
  MPoly f = mpoly_divexact(a, ca), g = mpoly_divexact(b, cb);
  if (f.degree(var) < g.degree(var)) std::swap(f, g);

  while (true) {
    MPoly r = prem(f, g, var);
    if (r.is_zero()) break;
    if (r.degree(var) == 0) {
      g = MPoly::constant(a.p(), a.nvars(), 1);
      break;
    }
    r = mpoly_divexact(r, content_wrt(r, var));
    f = std::move(g);
    g = std::move(r);
  }
  return monic_normalize(gamma * g);
}

bool mpoly_pth_root(const MPoly& a, MPoly& root) {
  const long p = a.p();
  MPoly r(p, a.nvars());
  for (const auto& [m, c] : a.terms()) {
    PackedExp q = 0;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = exp_of(m, v);
      if (e % p != 0) return false;
      q = exp_set(q, v, e / static_cast<int>(p));
    }
    // Fermat: c = d^p has the unique solution d = c in F_p
    r.add_term(q, c);
  }
  root = std::move(r);
  return true;
}

// ---- fractions --------------------------------------------------------------

MFrac::MFrac(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(Errc::BadInput, "zero denominator");
  if (num_.is_zero()) {
    den_ = MPoly::constant(num_.p(), num_.nvars(), 1);
    return;
  }
  if (!den_.is_constant()) {
    MPoly g = mpoly_gcd(num_, den_);
    if (!g.is_constant() || g.constant_value() != 1) {
      num_ = mpoly_divexact(num_, g);
      den_ = mpoly_divexact(den_, g);
    }
  }
  long inv = invmod(den_.lead_coeff(), den_.p());
  if (inv != 1) {
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

MFrac::MFrac(const MPoly& num)
    : num_(num), den_(MPoly::constant(num.p(), num.nvars(), 1)) {}

MFrac MFrac::raw(MPoly num, MPoly den) {
  MFrac f;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  return f;
}

MFrac MFrac::constant(long p, int nvars, long c) {
  return MFrac(MPoly::constant(p, nvars, c));
}

MFrac MFrac::variable(long p, int nvars, int var) {
  return MFrac(MPoly::variable(p, nvars, var));
}

MFrac MFrac::operator-() const { return raw(-num_, den_); }

namespace {

bool poly_is_one(const MPoly& f) {
  return f.is_constant() && f.constant_value() == 1;
}

// reduced sum/difference (GMP mpq_add structure): only the small gcds run
MFrac frac_addsub(const MFrac& a, const MFrac& b, bool subtract) {
  const MPoly& ad = a.den();
  const MPoly& bd = b.den();
  MPoly bn = subtract ? -b.num() : b.num();
  if (a.is_zero()) return MFrac::raw(std::move(bn), bd);
  if (b.is_zero()) return MFrac::raw(a.num(), ad);
  MPoly g = mpoly_gcd(ad, bd);
  if (poly_is_one(g)) {
    MPoly t = a.num() * bd + bn * ad;
    if (t.is_zero()) return MFrac::constant(t.p(), t.nvars(), 0);
    return MFrac::raw(std::move(t), ad * bd);
  }
  MPoly ad_red = mpoly_divexact(ad, g);
  MPoly bd_red = mpoly_divexact(bd, g);
  MPoly t = a.num() * bd_red + bn * ad_red;
  if (t.is_zero()) return MFrac::constant(t.p(), t.nvars(), 0);
  MPoly g2 = mpoly_gcd(t, g);
  if (poly_is_one(g2)) return MFrac::raw(std::move(t), ad * bd_red);
  return MFrac::raw(mpoly_divexact(t, g2),
                    mpoly_divexact(ad, g2) * bd_red);
}

// cross-reduced product: gcds run on the factors, never on products
MFrac frac_mul(const MPoly& an, const MPoly& ad, const MPoly& bn,
               const MPoly& bd) {
  if (an.is_zero() || bn.is_zero())
    return MFrac::constant(an.p(), an.nvars(), 0);
  MPoly g1 = mpoly_gcd(an, bd);
  MPoly g2 = mpoly_gcd(bn, ad);
  MPoly num = (poly_is_one(g1) ? an : mpoly_divexact(an, g1)) *
              (poly_is_one(g2) ? bn : mpoly_divexact(bn, g2));
  MPoly den = (poly_is_one(g2) ? ad : mpoly_divexact(ad, g2)) *
              (poly_is_one(g1) ? bd : mpoly_divexact(bd, g1));
  long inv = invmod(den.lead_coeff(), den.p());
  if (inv != 1) {
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return MFrac::raw(std::move(num), std::move(den));
}

}  // namespace

MFrac operator+(const MFrac& a, const MFrac& b) {
  return frac_addsub(a, b, false);
}

MFrac operator-(const MFrac& a, const MFrac& b) {
  return frac_addsub(a, b, true);
}

MFrac operator*(const MFrac& a, const MFrac& b) {
  return frac_mul(a.num_, a.den_, b.num_, b.den_);
}

MFrac operator/(const MFrac& a, const MFrac& b) {
  if (b.is_zero()) fail(Errc::BadInput, "division by zero fraction");
  return frac_mul(a.num_, a.den_, b.den_, b.num_);
}

MFrac MFrac::inverse() const {
  if (is_zero()) fail(Errc::BadInput, "inverse of zero");
  MPoly num = den_, den = num_;
  long inv = invmod(den.lead_coeff(), den.p());
  if (inv != 1) {
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return raw(std::move(num), std::move(den));
}

MFrac MFrac::derivative(int var) const {
  return MFrac(num_.derivative(var) * den_ - num_ * den_.derivative(var),
               den_ * den_);
}

bool MFrac::eval_gf(const GFTable& f, const std::vector<long>& point,
                    long& out) const {
  long d = den_.eval_gf(f, point);
  if (d == 0) return false;
  out = f.mul(num_.eval_gf(f, point), f.inv(d));
  return true;
}

std::string MFrac::str() const {
  if (den_.is_constant() && den_.constant_value() == 1) {
    if (num_.terms().size() <= 1) return num_.str();
    return "(" + num_.str() + ")";
  }
  auto wrap = [](const MPoly& f) { return "(" + f.str() + ")"; };
  return wrap(num_) + "/" + wrap(den_);
}

// ---- parser -----------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  long p;
  int nvars;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void die(const std::string& msg) {
    fail(Errc::BadInput, "parse error at offset " + std::to_string(pos) +
                             ": " + msg + " in \"" + s + "\"");
  }

  MFrac expr() {
    MFrac r = term();
    while (true) {
      skip();
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  MFrac term() {
    MFrac r = factor();
    while (true) {
      skip();
      if (eat('*'))
        r = r * factor();
      else if (eat('/'))
        r = r / factor();
      else
        return r;
    }
  }

  MFrac factor() {
    MFrac base = atom();
    skip();
    if (eat('^')) {
      skip();
      bool negative = eat('-');
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (start == pos) die("expected exponent");
      long e = std::stol(s.substr(start, pos - start));
      MFrac r = MFrac::constant(p, nvars, 1);
      MFrac b = negative ? base.inverse() : base;
      for (long i = 0; i < e; ++i) r = r * b;
      return r;
    }
    return base;
  }

  MFrac atom() {
    skip();
    if (eat('(')) {
      MFrac r = expr();
      if (!eat(')')) die("expected ')'");
      return r;
    }
    if (eat('-')) return -atom();
    if (pos < s.size() && s[pos] == 'a') {
      ++pos;
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (start == pos) die("expected variable index after 'a'");
      int idx = std::stoi(s.substr(start, pos - start));
      if (idx < 1 || idx > nvars) die("variable index out of range");
      return MFrac::variable(p, nvars, idx - 1);
    }
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      return MFrac::constant(p, nvars, std::stol(s.substr(start, pos - start)));
    }
    die("unexpected character");
  }
};

}  // namespace

MFrac parse_mfrac(const std::string& text, long p, int nvars) {
  Parser parser{text, 0, p, nvars};
  MFrac r = parser.expr();
  parser.skip();
  if (parser.pos != text.size()) parser.die("trailing input");
  return r;
}

}  // namespace edrep
