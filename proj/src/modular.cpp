#include "edrep/modular.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "edrep/numutil.hpp"

namespace edrep {

namespace {

// ---- univariate polynomials with MFrac coefficients -------------------------
// The indeterminate is abstract; the same helpers serve the dehomogenized
// form variable u and the lifting variable tau.

using UPoly = std::vector<MFrac>;

void utrim(UPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int udeg(const UPoly& f) { return static_cast<int>(f.size()) - 1; }

UPoly usub(const UPoly& a, const UPoly& b) {
  UPoly r = a;
  if (r.size() < b.size())
    r.resize(b.size(), b[0] - b[0]);
  for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
  utrim(r);
  return r;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, a[0] - a[0]);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  utrim(r);
  return r;
}

UPoly uscale(const UPoly& a, const MFrac& c) {
  UPoly r;
  r.reserve(a.size());
  for (const MFrac& x : a) r.push_back(x * c);
  utrim(r);
  return r;
}

UPoly umonic(UPoly f) {
  utrim(f);
  if (f.empty()) return f;
  return uscale(f, f.back().inverse());
}

void udivmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.empty()) fail(Errc::BadInput, "division by zero polynomial");
  r = a;
  utrim(r);
  q.clear();
  if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, b[0] - b[0]);
  MFrac inv_lead = b.back().inverse();
  while (r.size() >= b.size()) {
    MFrac c = r.back() * inv_lead;
    size_t off = r.size() - b.size();
    q[off] = c;
    for (size_t i = 0; i < b.size(); ++i) r[off + i] = r[off + i] - c * b[i];
    r.pop_back();
    utrim(r);
    if (r.empty()) break;
  }
  utrim(q);
}

UPoly udiv_exact(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  udivmod(a, b, q, r);
  if (!r.empty()) fail(Errc::Internal, "univariate division not exact");
  return q;
}

MFrac ueval(const UPoly& f, const MFrac& x) {
  if (f.empty()) return MFrac::constant(x.p(), x.nvars(), 0);
  MFrac acc = f.back();
  for (size_t i = f.size() - 1; i-- > 0;) acc = acc * x + f[i];
  return acc;
}

UPoly u_repow(const UPoly& f, long p) {
  if (f.empty()) return f;
  UPoly r((f.size() - 1) * p + 1, f[0] - f[0]);
  for (size_t i = 0; i < f.size(); ++i) r[i * p] = f[i];
  return r;
}

// value-level p-th root in F_p(a1..at): exists iff num and den (in lowest
// terms) are p-th powers
bool mfrac_pth_root(const MFrac& x, MFrac& out) {
  MPoly rn(x.p(), x.nvars()), rd(x.p(), x.nvars());
  if (!mpoly_pth_root(x.num(), rn) || !mpoly_pth_root(x.den(), rd))
    return false;
  out = MFrac(rn, rd);
  return true;
}

// ---- univariate polynomials and series over a GF table ----------------------

using GPoly = std::vector<long>;

void gtrim(GPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

GPoly gmul(const GFTable& F, const GPoly& a, const GPoly& b) {
  if (a.empty() || b.empty()) return {};
  GPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;
}

void gdivmod(const GFTable& F, GPoly a, const GPoly& b, GPoly& q, GPoly& r) {
  gtrim(a);
  q.clear();
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  long inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    long c = F.mul(a.back(), inv);
    size_t off = a.size() - b.size();
    q[off] = c;
    if (c != 0)
      for (size_t i = 0; i < b.size(); ++i)
        a[off + i] = F.sub(a[off + i], F.mul(c, b[i]));
    a.pop_back();
    gtrim(a);
    if (a.empty()) break;
  }
  r = std::move(a);
}

GPoly ggcd(const GFTable& F, GPoly a, GPoly b) {
  gtrim(a);
  gtrim(b);
  while (!b.empty()) {
    GPoly q, r;
    gdivmod(F, a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long inv = F.inv(a.back());
    for (long& c : a) c = F.mul(c, inv);
  }
  return a;
}

GPoly gderiv(const GFTable& F, const GPoly& f) {
  GPoly r;
  for (size_t i = 1; i < f.size(); ++i) {
    long k = static_cast<long>(i % F.p());
    long c = 0;
    for (long t = 0; t < k; ++t) c = F.add(c, f[i]);
    r.push_back(c);
  }
  gtrim(r);
  return r;
}

long geval(const GFTable& F, const GPoly& f, long x) {
  long acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

// coefficients of f(theta + tau) as a polynomial in tau
GPoly gshift(const GFTable& F, const GPoly& f, long theta) {
  GPoly res;
  for (size_t i = f.size(); i-- > 0;) {
    // res = res * (tau + theta) + f[i]
    GPoly next(res.size() + 1, 0);
    for (size_t j = 0; j < res.size(); ++j) {
      next[j + 1] = F.add(next[j + 1], res[j]);
      next[j] = F.add(next[j], F.mul(res[j], theta));
    }
    if (next.empty()) next.resize(1, 0);
    next[0] = F.add(next[0], f[i]);
    res = std::move(next);
  }
  gtrim(res);
  return res;
}

using GSer = std::vector<long>;  // truncated power series over a GF table

GSer gser_mul(const GFTable& F, const GSer& a, const GSer& b, size_t prec) {
  GSer r(prec, 0);
  for (size_t i = 0; i < a.size() && i < prec; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < prec; ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;
}

GSer gser_inv(const GFTable& F, const GSer& a, size_t prec) {
  GSer b(prec, 0);
  b[0] = F.inv(a[0]);
  for (size_t k = 1; k < prec; ++k) {
    long acc = 0;
    for (size_t j = 1; j <= k; ++j)
      if (j < a.size()) acc = F.add(acc, F.mul(a[j], b[k - j]));
    b[k] = F.neg(F.mul(acc, b[0]));
  }
  return b;
}

// ---- rational root extraction -----------------------------------------------

std::vector<int> active_vars(const UPoly& h, int nvars) {
  std::vector<int> vars;
  for (int v = 0; v < nvars; ++v) {
    bool used = false;
    for (const MFrac& c : h)
      if (c.num().degree(v) > 0 || c.den().degree(v) > 0) used = true;
    if (used) vars.push_back(v);
  }
  return vars;
}

MPoly mpoly_lcm(const MPoly& a, const MPoly& b) {
  return mpoly_divexact(a * b, mpoly_gcd(a, b));
}

// clears denominators and removes the content, so the coefficient degrees
// (which drive the lifting precision) are minimal
std::vector<MPoly> clear_denominators(const UPoly& h, long p, int nvars) {
  MPoly d = MPoly::constant(p, nvars, 1);
  for (const MFrac& c : h)
    if (!c.is_zero()) d = mpoly_lcm(d, c.den());
  std::vector<MPoly> out;
  for (const MFrac& c : h)
    out.push_back(c.num() * mpoly_divexact(d, c.den()));
  MPoly content(p, nvars);
  for (const MPoly& c : out)
    if (!c.is_zero()) content = mpoly_gcd(content, c);
  if (!content.is_zero() && !content.is_constant())
    for (MPoly& c : out) c = mpoly_divexact(c, content);
  return out;
}

// The last packed slot holds the dehomogenized form variable; embedding lets
// every gcd and exact division run through the primitive PRS over
// F_p[a1..at, u] instead of Euclid over the fraction field.
constexpr int kUSlot = kMaxVars - 1;

MPoly mpoly_primitive_u(const MPoly& f) {
  if (f.is_zero()) return f;
  MPoly content(f.p(), f.nvars());
  for (int k = 0; k <= f.degree(kUSlot); ++k) {
    MPoly c = f.coeff_of(kUSlot, k);
    if (!c.is_zero()) content = mpoly_gcd(content, c);
  }
  if (content.is_constant()) return f;
  return mpoly_divexact(f, content);
}

MPoly embed_upoly(const UPoly& h, long p, int nvars) {
  std::vector<MPoly> coeffs = clear_denominators(h, p, nvars);
  MPoly f(p, nvars);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    MPoly u_pow(p, nvars);
    u_pow.add_term(exp_set(0, kUSlot, static_cast<int>(i)), 1);
    f = f + coeffs[i] * u_pow;
  }
  return mpoly_primitive_u(f);
}

UPoly unembed_mpoly(const MPoly& f) {
  UPoly h;
  for (int k = 0; k <= f.degree(kUSlot); ++k)
    h.push_back(MFrac(f.coeff_of(kUSlot, k)));
  utrim(h);
  return h;
}

std::vector<MFrac> rational_roots(UPoly h, long p, int nvars);

// one active variable: specialize at points of F_{p^s}, lift u-adically in
// (a_v - theta), reconstruct with Pade, keep roots whose coefficients land
// back in F_p
std::vector<MFrac> bivariate_roots(const UPoly& h, int v, long p, int nvars) {
  std::vector<MPoly> H = clear_denominators(h, p, nvars);
  const int degu = static_cast<int>(H.size()) - 1;
  int bound = 0;
  for (const MPoly& c : H) bound = std::max(bound, c.degree(v));
  const size_t prec = 2 * static_cast<size_t>(bound) + 1;

  std::vector<MFrac> found;
  for (int s = 1;; ++s) {
    long q = 1;
    bool overflow = false;
    for (int i = 0; i < s; ++i) {
      q *= p;
      if (q > GFTable::kMaxQ) overflow = true;
    }
    if (overflow)
      fail(Errc::DegenerateEvaluation,
           "no squarefree specialization within the field budget");
    GFPtr Fp = gf_field(p, s);
    const GFTable& F = *Fp;

    // univariate coefficient vectors of H in the variable v, over F_p
    std::vector<GPoly> coeffs(H.size());
    for (size_t i = 0; i < H.size(); ++i) {
      GPoly c(H[i].degree(v) + 1, 0);
      for (int k = 0; k <= H[i].degree(v); ++k) {
        MPoly slice = H[i].coeff_of(v, k);
        c[k] = slice.is_zero() ? 0 : slice.constant_value() % p;
      }
      gtrim(c);
      coeffs[i] = std::move(c);
    }

    for (long theta = 0; theta < F.q(); ++theta) {
      // specialized polynomial in u over F
      GPoly hu(H.size(), 0);
      for (size_t i = 0; i < H.size(); ++i) hu[i] = geval(F, coeffs[i], theta);
      gtrim(hu);
      if (static_cast<int>(hu.size()) - 1 != degu) continue;  // lc vanished
      GPoly g = ggcd(F, hu, gderiv(F, hu));
      if (g.size() != 1) continue;  // not squarefree here

      // simple roots of hu by field scan
      for (long u0 = 0; u0 < F.q(); ++u0) {
        if (geval(F, hu, u0) != 0) continue;

        // Newton lift in tau = a_v - theta
        std::vector<GPoly> shifted(H.size());
        for (size_t i = 0; i < H.size(); ++i)
          shifted[i] = gshift(F, coeffs[i], theta);
        auto eval_series = [&](const std::vector<GPoly>& cs, const GSer& r,
                               size_t pr) {
          GSer acc(pr, 0);
          for (size_t i = cs.size(); i-- > 0;) {
            acc = gser_mul(F, acc, r, pr);
            for (size_t k = 0; k < cs[i].size() && k < pr; ++k)
              acc[k] = F.add(acc[k], cs[i][k]);
          }
          return acc;
        };
        std::vector<GPoly> shifted_deriv(H.size() > 1 ? H.size() - 1 : 0);
        for (size_t i = 1; i < H.size(); ++i) {
          long k = static_cast<long>(i % F.p());
          GPoly c = shifted[i];
          for (long& x : c) {
            long acc = 0;
            for (long t = 0; t < k; ++t) acc = F.add(acc, x);
            x = acc;
          }
          gtrim(c);
          shifted_deriv[i - 1] = std::move(c);
        }

        GSer r(1, u0);
        size_t cur = 1;
        bool ok = true;
        while (cur < prec) {
          cur = std::min(prec, cur * 2);
          GSer rr = r;
          rr.resize(cur, 0);
          GSer fv = eval_series(shifted, rr, cur);
          GSer fd = eval_series(shifted_deriv, rr, cur);
          if (fd.empty() || fd[0] == 0) {
            ok = false;
            break;
          }
          GSer corr = gser_mul(F, fv, gser_inv(F, fd, cur), cur);
          for (size_t k = 0; k < cur; ++k) rr[k] = F.sub(rr[k], corr[k]);
          r = std::move(rr);
        }
        if (!ok) continue;

        // Pade: P/Q = r mod tau^(2*bound+1), deg <= bound
        GPoly r0(prec + 1, 0);
        r0[prec] = 1;
        GPoly r1 = r;
        gtrim(r1);
        GPoly t0 = {}, t1 = {1};
        while (static_cast<int>(r1.size()) - 1 > bound) {
          GPoly qq, rem;
          gdivmod(F, r0, r1, qq, rem);
          GPoly tnew = t0;
          {
            GPoly qt = gmul(F, qq, t1);
            if (tnew.size() < qt.size()) tnew.resize(qt.size(), 0);
            for (size_t i = 0; i < qt.size(); ++i)
              tnew[i] = F.sub(tnew[i], qt[i]);
            gtrim(tnew);
          }
          r0 = std::move(r1);
          r1 = std::move(rem);
          t0 = std::move(t1);
          t1 = std::move(tnew);
        }
        if (t1.empty() || static_cast<int>(t1.size()) - 1 > bound) continue;

        // back to the a_v coordinate; the pair is canonical only after
        // making the denominator monic, then F_p membership is testable
        GPoly pnum = gshift(F, r1, F.neg(theta));
        GPoly pden = gshift(F, t1, F.neg(theta));
        if (pden.empty()) continue;
        long scale = F.inv(pden.back());
        for (long& c : pnum) c = F.mul(c, scale);
        for (long& c : pden) c = F.mul(c, scale);
        bool in_fp = true;
        for (long c : pnum)
          if (!F.in_prime_field(c)) in_fp = false;
        for (long c : pden)
          if (!F.in_prime_field(c)) in_fp = false;
        if (!in_fp) continue;

        MPoly num(p, nvars), den(p, nvars);
        for (size_t k = 0; k < pnum.size(); ++k)
          num.add_term(exp_set(0, v, static_cast<int>(k)), pnum[k]);
        for (size_t k = 0; k < pden.size(); ++k)
          den.add_term(exp_set(0, v, static_cast<int>(k)), pden[k]);
        if (den.is_zero()) continue;
        MFrac cand(num, den);
        if (!ueval(h, cand).is_zero()) continue;
        if (std::find(found.begin(), found.end(), cand) == found.end())
          found.push_back(cand);
      }
      return found;  // one good specialization decides everything
    }
  }
}

// at least two active variables: substitute the main variable by small
// polynomials in the others, recurse, and lift
std::vector<MFrac> multivariate_roots(const UPoly& h, int v,
                                      const std::vector<int>& actives, long p,
                                      int nvars) {
  std::vector<MPoly> H = clear_denominators(h, p, nvars);
  int bound = 0;
  for (const MPoly& c : H) bound = std::max(bound, c.degree(v));
  const size_t prec = 2 * static_cast<size_t>(bound) + 1;
#ifdef EDREP_TRACE_ROOTS
  {
    int td = 0;
    for (const MPoly& c : H) td = std::max(td, c.total_degree());
    std::cerr << "[mv] degu=" << H.size() - 1 << " v=a" << v + 1
              << " B=" << bound << " maxtdeg=" << td << "\n";
  }
#endif

  std::vector<int> others;
  for (int a : actives)
    if (a != v) others.push_back(a);

  // substitution stream: constants, then every linear form in the other
  // active variables, then growing powers of the first one (an unbounded
  // tail; only finitely many substitutions can be bad)
  long linear_count = 1;
  for (size_t t = 0; t < others.size() + 1; ++t) linear_count *= p;
  auto substitution = [&](long k) {
    if (k < linear_count) {
      MPoly w = MPoly::constant(p, nvars, k % p);
      long idx = k / p;
      for (int a : others) {
        long coef = idx % p;
        idx /= p;
        if (coef != 0)
          w = w + MPoly::variable(p, nvars, a).scaled(coef);
      }
      return w;
    }
    long idx = k - linear_count;
    int d = static_cast<int>(idx / p) + 2;
    long c = idx % p;
    return MPoly::variable(p, nvars, others[0]).pow(d) +
           MPoly::constant(p, nvars, c);
  };

  constexpr long kSubstBudget = 200;
  for (long wi = 0; wi < kSubstBudget; ++wi) {
    MPoly w = substitution(wi);
    std::vector<MPoly> Hw;
    for (const MPoly& c : H) Hw.push_back(c.substituted(v, w));
    if (Hw.back().is_zero()) continue;  // leading coefficient vanished

    UPoly hw;
    for (const MPoly& c : Hw) hw.push_back(MFrac(c));
    utrim(hw);
    if (udeg(hw) != static_cast<int>(H.size()) - 1) continue;
    {
      // squarefree check on the embedded polynomial, no fraction arithmetic
      MPoly emb = embed_upoly(hw, p, nvars);
      MPoly d = emb.derivative(kUSlot);
      if (d.is_zero() || mpoly_gcd(emb, d).degree(kUSlot) > 0)
        continue;  // not squarefree after substitution
    }

    std::vector<MFrac> base = rational_roots(umonic(hw), p, nvars);

    // shift the main variable: a_v := w + tau (tau reuses slot v)
    std::vector<MPoly> shifted;
    for (const MPoly& c : H)
      shifted.push_back(
          c.substituted(v, w + MPoly::variable(p, nvars, v)));
    // series slices: coefficient of tau^k is an MFrac in the other variables
    auto slices = [&](const std::vector<MPoly>& cs) {
      std::vector<UPoly> out;
      for (const MPoly& c : cs) {
        UPoly s;
        for (size_t k = 0; k < prec; ++k)
          s.push_back(MFrac(c.coeff_of(v, static_cast<int>(k))));
        utrim(s);
        out.push_back(std::move(s));
      }
      return out;
    };
    std::vector<UPoly> sl = slices(shifted);
    std::vector<UPoly> sld;
    for (size_t i = 1; i < sl.size(); ++i)
      sld.push_back(uscale(sl[i], MFrac::constant(p, nvars, i % p)));

    auto ser_mul = [&](const UPoly& a, const UPoly& b, size_t pr) {
      UPoly r(pr, MFrac::constant(p, nvars, 0));
      for (size_t i = 0; i < a.size() && i < pr; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j < pr; ++j)
          r[i + j] = r[i + j] + a[i] * b[j];
      }
      return r;
    };
    auto ser_inv = [&](const UPoly& a, size_t pr) {
      UPoly b(pr, MFrac::constant(p, nvars, 0));
      b[0] = a[0].inverse();
      for (size_t k = 1; k < pr; ++k) {
        MFrac acc = MFrac::constant(p, nvars, 0);
        for (size_t j = 1; j <= k; ++j)
          if (j < a.size()) acc = acc + a[j] * b[k - j];
        b[k] = -(acc * b[0]);
      }
      return b;
    };
    auto eval_series = [&](const std::vector<UPoly>& cs, const UPoly& r,
                           size_t pr) {
      UPoly acc(pr, MFrac::constant(p, nvars, 0));
      for (size_t i = cs.size(); i-- > 0;) {
        acc = ser_mul(acc, r, pr);
        for (size_t k = 0; k < cs[i].size() && k < pr; ++k)
          acc[k] = acc[k] + cs[i][k];
      }
      return acc;
    };

    std::vector<MFrac> found;
    for (const MFrac& r0 : base) {
      UPoly r(1, r0);
      size_t cur = 1;
      bool ok = true;
      while (cur < prec) {
        cur = std::min(prec, cur * 2);
        UPoly rr = r;
        rr.resize(cur, MFrac::constant(p, nvars, 0));
        UPoly fv = eval_series(sl, rr, cur);
        UPoly fd = eval_series(sld, rr, cur);
        if (fd.empty() || fd[0].is_zero()) {
          ok = false;
          break;
        }
        UPoly corr = ser_mul(fv, ser_inv(fd, cur), cur);
        for (size_t k = 0; k < cur; ++k) rr[k] = rr[k] - corr[k];
        r = std::move(rr);
      }
      if (!ok) continue;

      // Pade over tau
      UPoly m0(prec + 1, MFrac::constant(p, nvars, 0));
      m0[prec] = MFrac::constant(p, nvars, 1);
      UPoly r1 = r;
      utrim(r1);
      UPoly t0, t1 = {MFrac::constant(p, nvars, 1)};
      UPoly r0p = m0;
      while (udeg(r1) > bound) {
        UPoly qq, rem;
        udivmod(r0p, r1, qq, rem);
        UPoly tnew = usub(t0, umul(qq, t1));
        r0p = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(tnew);
      }
      if (t1.empty() || udeg(t1) > bound) continue;

      MFrac tau_back = MFrac(MPoly::variable(p, nvars, v) - w);
      MFrac pv = ueval(r1, tau_back);
      MFrac qv = ueval(t1, tau_back);
      if (qv.is_zero()) continue;
      MFrac cand = pv / qv;
      if (!ueval(h, cand).is_zero()) continue;
      if (std::find(found.begin(), found.end(), cand) == found.end())
        found.push_back(cand);
    }
    return found;
  }
  fail(Errc::DegenerateEvaluation,
       "no squarefree substitution found within the budget");
}

// All roots of a squarefree polynomial that are rational over F_p(a1..at).
std::vector<MFrac> rational_roots(UPoly h, long p, int nvars) {
  utrim(h);
  std::vector<MFrac> roots;
  if (udeg(h) < 1) return roots;
  if (h[0].is_zero()) {  // u = 0 root (at most once: h is squarefree)
    roots.push_back(MFrac::constant(p, nvars, 0));
    h.erase(h.begin());
    utrim(h);
  }
  if (udeg(h) < 1) return roots;
  if (udeg(h) == 1) {
    roots.push_back(-(h[0] / h[1]));
    return roots;
  }

  std::vector<int> vars = active_vars(h, nvars);
  if (vars.empty()) {
    for (long c = 0; c < p; ++c) {
      MFrac x = MFrac::constant(p, nvars, c);
      if (ueval(h, x).is_zero()) roots.push_back(x);
    }
    return roots;
  }
  std::vector<MFrac> extra =
      vars.size() == 1 ? bivariate_roots(h, vars[0], p, nvars)
                       : multivariate_roots(h, vars.back(), vars, p, nvars);
  for (MFrac& r : extra) roots.push_back(std::move(r));
  return roots;
}

struct RootSplit {
  std::vector<MFrac> roots;      // distinct rational roots
  std::vector<UPoly> unresolved;  // squarefree pieces with no rational roots
};

// Peels squarefree layers off the embedded polynomial with gcd(F, dF/du)
// over F_p[a, u], handing each layer to the Newton engine; the
// derivative-zero tail F = G(u^p) is handled by taking value-level p-th
// roots of the roots of G.
RootSplit all_rational_roots_embedded(MPoly f, long p, int nvars) {
  RootSplit out;
  auto add_root = [&](const MFrac& c) {
    if (std::find(out.roots.begin(), out.roots.end(), c) == out.roots.end())
      out.roots.push_back(c);
  };
  f = mpoly_primitive_u(f);
  while (f.degree(kUSlot) >= 1) {
    MPoly fp = f.derivative(kUSlot);
    if (fp.is_zero()) {
      // f = g(u^p): map exponents down and recurse
      MPoly g(p, nvars);
      for (const auto& [m, c] : f.terms()) {
        int e = exp_of(m, kUSlot);
        if (e % p != 0) fail(Errc::Internal, "inseparable exponent not p-divisible");
        g.add_term(exp_set(m, kUSlot, e / static_cast<int>(p)), c);
      }
      RootSplit sub = all_rational_roots_embedded(std::move(g), p, nvars);
      for (const MFrac& d : sub.roots) {
        MFrac c;
        if (mfrac_pth_root(d, c)) {
          add_root(c);
        } else {
          // (v - d) pulls back to the irreducible u^p - d
          UPoly lin = {-d, MFrac::constant(p, nvars, 1)};
          out.unresolved.push_back(u_repow(lin, p));
        }
      }
      for (const UPoly& w : sub.unresolved)
        out.unresolved.push_back(u_repow(w, p));
      return out;
    }
    MPoly g = mpoly_gcd(f, fp);
    MPoly w = mpoly_primitive_u(mpoly_divexact(f, g));  // squarefree layer
    if (w.degree(kUSlot) >= 1) {
      UPoly wu = umonic(unembed_mpoly(w));
      std::vector<MFrac> found = rational_roots(wu, p, nvars);
      for (const MFrac& c : found) {
        add_root(c);
        UPoly lin = {-c, MFrac::constant(p, nvars, 1)};
        wu = udiv_exact(wu, lin);
      }
      if (udeg(wu) >= 1) {
        bool seen = false;
        for (const UPoly& u : out.unresolved)
          if (u == wu) seen = true;
        if (!seen) out.unresolved.push_back(wu);
      }
    }
    if (g.degree(kUSlot) >= f.degree(kUSlot))
      fail(Errc::Internal, "squarefree peeling did not reduce the degree");
    f = mpoly_primitive_u(std::move(g));
  }
  return out;
}

}  // namespace

// ---- pencil minors ----------------------------------------------------------

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(m);
  for (int i = 0; i < m; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[i] == n - m + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

BFormP bform_mul(const BFormP& a, const BFormP& b) {
  BFormP r(a.size() + b.size() - 1, MPoly(a[0].p(), a[0].nvars()));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  return r;
}

bool bform_zero(const BFormP& f) {
  for (const MPoly& c : f)
    if (!c.is_zero()) return false;
  return true;
}

// determinant of an m x m matrix of linear forms by expansion over rows,
// memoized on the remaining-columns mask
BFormP pencil_det(const std::vector<std::vector<std::pair<MPoly, MPoly>>>& a,
                  const std::vector<int>& rows, const std::vector<int>& cols) {
  const int m = static_cast<int>(rows.size());
  const long pp = a[0][0].first.p();
  const int nv = a[0][0].first.nvars();
  std::vector<std::vector<BFormP>> memo(
      m + 1, std::vector<BFormP>(static_cast<size_t>(1) << m));
  std::vector<std::vector<char>> have(
      m + 1, std::vector<char>(static_cast<size_t>(1) << m, 0));

  // det over rows[level..m) and the columns still in the mask
  std::function<BFormP(int, unsigned)> rec = [&](int level,
                                                 unsigned mask) -> BFormP {
    if (level == m) return {MPoly::constant(pp, nv, 1)};
    if (have[level][mask]) return memo[level][mask];
    BFormP acc;
    int sign_pos = 0;
    for (int j = 0; j < m; ++j) {
      if (!(mask & (1u << j))) continue;
      const auto& entry = a[rows[level]][cols[j]];
      if (!(entry.first.is_zero() && entry.second.is_zero())) {
        BFormP lin = {entry.second, entry.first};  // x2-coeff, x1-coeff
        BFormP sub = rec(level + 1, mask & ~(1u << j));
        BFormP term = bform_mul(lin, sub);
        if (sign_pos % 2 == 1)
          for (MPoly& c : term) c = -c;
        if (acc.empty())
          acc.assign(m - level + 1, MPoly(pp, nv));
        for (size_t k = 0; k < term.size(); ++k) acc[k] = acc[k] + term[k];
      }
      ++sign_pos;
    }
    if (acc.empty()) acc.assign(m - level + 1, MPoly(pp, nv));
    have[level][mask] = 1;
    memo[level][mask] = acc;
    return acc;
  };
  return rec(0, (1u << m) - 1);
}

template <bool Parallel>
std::vector<BFormP> pencil_minors_impl(
    const std::vector<std::vector<std::pair<MPoly, MPoly>>>& pencil, int m) {
  const int n = static_cast<int>(pencil.size());
  std::vector<std::vector<int>> rsets = subsets_of_size(n, m);
  const long total = static_cast<long>(rsets.size()) * rsets.size();
  std::vector<BFormP> minors(total);
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (long idx = 0; idx < total; ++idx) {
    const auto& rows = rsets[idx / rsets.size()];
    const auto& cols = rsets[idx % rsets.size()];
    minors[idx] = pencil_det(pencil, rows, cols);
  }
  return minors;
}

}  // namespace

std::vector<BFormP> pencil_minors(
    const std::vector<std::vector<std::pair<MPoly, MPoly>>>& pencil, int m) {
  return pencil_minors_impl<true>(pencil, m);
}

std::vector<BFormP> pencil_minors_serial(
    const std::vector<std::vector<std::pair<MPoly, MPoly>>>& pencil, int m) {
  return pencil_minors_impl<false>(pencil, m);
}

// ---- rank variety ------------------------------------------------------------

namespace {

// binary form split as x1^a * x2^b * (primitive embedded polynomial in u)
struct SplitForm {
  int x1mult = 0;
  int x2mult = 0;
  MPoly h;  // u in the reserved slot; h(0) != 0, lc != 0 as a u-polynomial
};

SplitForm split_bform(const BFormP& form) {
  SplitForm out;
  int lo = -1, hi = -1;
  for (size_t i = 0; i < form.size(); ++i)
    if (!form[i].is_zero()) {
      if (lo < 0) lo = static_cast<int>(i);
      hi = static_cast<int>(i);
    }
  if (lo < 0) fail(Errc::Internal, "split of the zero form");
  out.x1mult = lo;
  out.x2mult = static_cast<int>(form.size()) - 1 - hi;
  out.h = MPoly(form[0].p(), form[0].nvars());
  for (int i = lo; i <= hi; ++i) {
    MPoly u_pow(form[0].p(), form[0].nvars());
    u_pow.add_term(exp_set(0, kUSlot, i - lo), 1);
    out.h = out.h + form[i] * u_pow;
  }
  out.h = mpoly_primitive_u(out.h);
  return out;
}

SplitForm form_gcd(const SplitForm& a, const SplitForm& b) {
  SplitForm out;
  out.x1mult = std::min(a.x1mult, b.x1mult);
  out.x2mult = std::min(a.x2mult, b.x2mult);
  out.h = mpoly_primitive_u(mpoly_gcd(a.h, b.h));
  return out;
}

std::string form_str(const UPoly& h, int x1mult, int x2mult) {
  // re-homogenize: x1^x1mult * x2^x2mult * sum h_j x1^j x2^(deg-j)
  std::ostringstream os;
  int deg = udeg(h);
  bool first = true;
  for (int j = deg; j >= 0; --j) {
    if (h[j].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << h[j].str();
    int e1 = j + x1mult, e2 = deg - j + x2mult;
    if (e1) os << "*x1" << (e1 > 1 ? "^" + std::to_string(e1) : "");
    if (e2) os << "*x2" << (e2 > 1 ? "^" + std::to_string(e2) : "");
  }
  return os.str();
}

std::vector<std::vector<MFrac>> mat_sub_identity(
    const std::vector<std::vector<MFrac>>& m, long p, int nvars) {
  auto r = m;
  for (size_t i = 0; i < r.size(); ++i)
    r[i][i] = r[i][i] - MFrac::constant(p, nvars, 1);
  return r;
}

std::vector<std::vector<MFrac>> mat_mul_f(
    const std::vector<std::vector<MFrac>>& a,
    const std::vector<std::vector<MFrac>>& b, long p, int nvars) {
  size_t n = a.size();
  std::vector<std::vector<MFrac>> c(
      n, std::vector<MFrac>(n, MFrac::constant(p, nvars, 0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        c[i][j] = c[i][j] + a[i][k] * b[k][j];
      }
    }
  return c;
}

bool mat_zero(const std::vector<std::vector<MFrac>>& a) {
  for (const auto& row : a)
    for (const MFrac& x : row)
      if (!x.is_zero()) return false;
  return true;
}

}  // namespace

void validate_modular_rep(const ModularRep& rep) {
  if (rep.n < 1 || static_cast<int>(rep.m1.size()) != rep.n ||
      static_cast<int>(rep.m2.size()) != rep.n)
    fail(Errc::BadInput, "matrix dimensions inconsistent");
  if (!is_prime_long(rep.p))
    fail(Errc::UnsupportedPrime, "characteristic must be prime");
  if (rep.nvars < 0 || rep.nvars > kMaxVars - 1)
    fail(Errc::BadInput, "at most " + std::to_string(kMaxVars - 1) +
                             " function-field variables are supported");
  for (const auto& mat : {&rep.m1, &rep.m2})
    for (const auto& row : *mat)
      if (static_cast<int>(row.size()) != rep.n)
        fail(Errc::BadInput, "matrix dimensions inconsistent");

  auto ab = mat_mul_f(rep.m1, rep.m2, rep.p, rep.nvars);
  auto ba = mat_mul_f(rep.m2, rep.m1, rep.p, rep.nvars);
  if (ab != ba) fail(Errc::BadInput, "generator matrices do not commute");
  for (const auto* mat : {&rep.m1, &rep.m2}) {
    auto nilp = mat_sub_identity(*mat, rep.p, rep.nvars);
    auto power = nilp;
    for (long i = 1; i < rep.p; ++i) power = mat_mul_f(power, nilp, rep.p, rep.nvars);
    if (!mat_zero(power))
      fail(Errc::BadInput, "(M - I)^p != 0: not unipotent of exponent p");
  }
}

PointSet1 rank_variety(const ModularRep& rep) {
  validate_modular_rep(rep);
  const long p = rep.p;
  const int n = rep.n, nvars = rep.nvars;
  const int m = static_cast<int>(((p - 1) * n + p - 1) / p);

  // clear a global denominator; scaling the pencil by a nonzero function of
  // the a-variables does not move the projective roots
  MPoly d = MPoly::constant(p, nvars, 1);
  auto b1 = mat_sub_identity(rep.m1, p, nvars);
  auto b2 = mat_sub_identity(rep.m2, p, nvars);
  for (const auto* mat : {&b1, &b2})
    for (const auto& row : *mat)
      for (const MFrac& x : row)
        if (!x.is_zero()) d = mpoly_lcm(d, x.den());
  std::vector<std::vector<std::pair<MPoly, MPoly>>> pencil(
      n, std::vector<std::pair<MPoly, MPoly>>(
             n, {MPoly(p, nvars), MPoly(p, nvars)}));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!b1[i][j].is_zero())
        pencil[i][j].first = b1[i][j].num() * mpoly_divexact(d, b1[i][j].den());
      if (!b2[i][j].is_zero())
        pencil[i][j].second = b2[i][j].num() * mpoly_divexact(d, b2[i][j].den());
    }

  std::vector<BFormP> minors = pencil_minors(pencil, m);

  PointSet1 out;
  bool have_gcd = false;
  SplitForm acc;
  for (const BFormP& minor : minors) {
    if (bform_zero(minor)) continue;
    SplitForm sf = split_bform(minor);
    acc = have_gcd ? form_gcd(acc, sf) : sf;
    have_gcd = true;
    if (acc.x1mult == 0 && acc.x2mult == 0 && acc.h.degree(kUSlot) == 0)
      break;
  }
  if (!have_gcd) {
    out.whole_line = true;
    return out;
  }

  if (acc.x1mult > 0)
    out.points.push_back(make_point(MFrac::constant(p, nvars, 0),
                                    MFrac::constant(p, nvars, 1)));
  if (acc.x2mult > 0)
    out.points.push_back(make_point(MFrac::constant(p, nvars, 1),
                                    MFrac::constant(p, nvars, 0)));

  if (acc.h.degree(kUSlot) >= 1) {
    RootSplit split = all_rational_roots_embedded(acc.h, p, nvars);
    for (const MFrac& c : split.roots)
      // u = x1/x2 = c, i.e. the point (c : 1)
      out.points.push_back(make_point(c, MFrac::constant(p, nvars, 1)));
    for (const UPoly& w : split.unresolved)
      out.unresolved.push_back(form_str(w, 0, 0));
  }

  std::sort(out.points.begin(), out.points.end(),
            [](const ProjPoint& a, const ProjPoint& b) {
              return a.x1.str() + "|" + a.x2.str() <
                     b.x1.str() + "|" + b.x2.str();
            });
  return out;
}

// ---- points and constructions -----------------------------------------------

ProjPoint make_point(const MFrac& x1, const MFrac& x2) {
  if (x1.is_zero() && x2.is_zero())
    fail(Errc::BadInput, "(0 : 0) is not a projective point");
  if (!x1.is_zero()) return {MFrac::constant(x1.p(), x1.nvars(), 1), x2 / x1};
  return {MFrac::constant(x2.p(), x2.nvars(), 0),
          MFrac::constant(x2.p(), x2.nvars(), 1)};
}

bool operator==(const ProjPoint& a, const ProjPoint& b) {
  return a.x1 == b.x1 && a.x2 == b.x2;
}

ModularRep point_module(const ProjPoint& pt, int nvars, long p) {
  if (p != 2)
    fail(Errc::UnsupportedPrime,
         "point-module realization is implemented for p = 2 only");
  ModularRep rep;
  rep.p = 2;
  rep.n = 2;
  rep.nvars = nvars;
  MFrac zero = MFrac::constant(2, nvars, 0);
  MFrac one = MFrac::constant(2, nvars, 1);
  const MFrac& alpha = pt.x1;
  const MFrac& beta = pt.x2;
  rep.m1 = {{one, beta}, {zero, one}};   // I + beta N
  rep.m2 = {{one, alpha}, {zero, one}};  // I - alpha N (char 2)
  return rep;
}

ModularRep union_rep(const std::vector<ProjPoint>& pts, int nvars) {
  if (pts.empty()) fail(Errc::BadInput, "empty point list");
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) fail(Errc::DuplicatePoint, "repeated point");
  ModularRep rep;
  rep.p = 2;
  rep.nvars = nvars;
  rep.n = static_cast<int>(2 * pts.size());
  MFrac zero = MFrac::constant(2, nvars, 0);
  rep.m1.assign(rep.n, std::vector<MFrac>(rep.n, zero));
  rep.m2.assign(rep.n, std::vector<MFrac>(rep.n, zero));
  for (size_t t = 0; t < pts.size(); ++t) {
    ModularRep block = point_module(pts[t], nvars);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        rep.m1[2 * t + i][2 * t + j] = block.m1[i][j];
        rep.m2[2 * t + i][2 * t + j] = block.m2[i][j];
      }
  }
  return rep;
}

// ---- transcendence degree ----------------------------------------------------

namespace {

long mpoly_rank(std::vector<MPoly> rows) {
  std::vector<MPoly> pivots;
  long rank = 0;
  for (MPoly& row : rows) {
    for (const MPoly& piv : pivots) {
      while (!row.is_zero() && !piv.is_zero() &&
             row.terms().rbegin()->first == piv.terms().rbegin()->first) {
        long f = row.terms().rbegin()->second;
        row = row - piv.scaled(f);
      }
    }
    // full reduction: repeat until no pivot's lead matches
    bool changed = true;
    while (changed && !row.is_zero()) {
      changed = false;
      for (const MPoly& piv : pivots) {
        if (row.is_zero()) break;
        if (row.terms().rbegin()->first == piv.terms().rbegin()->first) {
          row = row - piv.scaled(row.terms().rbegin()->second);
          changed = true;
        }
      }
    }
    if (!row.is_zero()) {
      pivots.push_back(row.scaled(invmod(row.lead_coeff(), row.p())));
      std::sort(pivots.begin(), pivots.end(),
                [](const MPoly& a, const MPoly& b) {
                  return a.terms().rbegin()->first > b.terms().rbegin()->first;
                });
      ++rank;
    }
  }
  return rank;
}

// exponent tuples beta with |beta| <= d over r slots
void tuples_up_to(int r, int d, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(r, 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == r) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= rem; ++e) {
      cur[pos] = e;
      rec(pos + 1, rem - e);
    }
    cur[pos] = 0;
  };
  rec(0, d);
}

bool depends_on(const MFrac& f, const std::vector<MFrac>& gs, int budget) {
  const long p = f.p();
  const int r = static_cast<int>(gs.size());
  for (int d = 1; d <= budget; ++d) {
    std::vector<std::vector<int>> tuples;
    tuples_up_to(r, d, tuples);
    // numerators over the common denominator prod den_g^d * den_f^d
    std::vector<MPoly> grows;
    for (const auto& beta : tuples) {
      MPoly num = MPoly::constant(p, f.nvars(), 1);
      for (int t = 0; t < r; ++t)
        num = num * gs[t].num().pow(beta[t]) *
              gs[t].den().pow(d - beta[t]);
      grows.push_back(num);
    }
    long rank_g = mpoly_rank(grows);
    std::vector<MPoly> full;
    for (int i = 0; i <= d; ++i) {
      MPoly fpow = f.num().pow(i) * f.den().pow(d - i);
      for (const MPoly& gr : grows) full.push_back(gr * fpow);
    }
    if (mpoly_rank(std::move(full)) < (d + 1) * rank_g) return true;
  }
  return false;
}

}  // namespace

long trdeg_of_points(const PointSet1& ps, long p, int nvars,
                     const TrdegConfig& cfg) {
  std::vector<MFrac> coords;
  for (const ProjPoint& pt : ps.points)
    if (!pt.x1.is_zero()) coords.push_back(pt.x2);
  if (coords.empty()) return 0;

  if (cfg.exact) {
    std::vector<MFrac> indep;
    for (const MFrac& f : coords) {
      if (f.is_constant()) continue;
      if (!depends_on(f, indep, cfg.exact_degree_budget)) indep.push_back(f);
    }
    return static_cast<long>(indep.size());
  }

  // Jacobian rank at a random point avoiding all denominators
  std::vector<std::vector<MFrac>> jac;
  for (const MFrac& f : coords) {
    std::vector<MFrac> row;
    for (int v = 0; v < nvars; ++v) row.push_back(f.derivative(v));
    jac.push_back(std::move(row));
  }
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  long best = -1;
  for (int retry = 0; retry < cfg.retries; ++retry) {
    long q = 1;
    bool overflow = false;
    for (int i = 0; i <= retry; ++i) {
      q *= p;
      if (q > GFTable::kMaxQ) overflow = true;
    }
    if (overflow) break;
    GFPtr Fp = gf_field(p, retry + 1);
    const GFTable& F = *Fp;
    for (int sample = 0; sample < cfg.samples_per_retry; ++sample) {
      std::vector<long> point(nvars);
      for (int v = 0; v < nvars; ++v)
        point[v] = static_cast<long>(rng() % static_cast<unsigned long>(F.q()));
      bool valid = true;
      std::vector<std::vector<long>> rows;
      for (size_t i = 0; i < jac.size() && valid; ++i) {
        std::vector<long> row(nvars);
        long dummy;
        if (!coords[i].eval_gf(F, point, dummy)) {
          valid = false;
          break;
        }
        for (int v = 0; v < nvars && valid; ++v)
          if (!jac[i][v].eval_gf(F, point, row[v])) valid = false;
        rows.push_back(std::move(row));
      }
      if (!valid) continue;
      // rank over F
      long rank = 0;
      for (int c = 0; c < nvars && rank < static_cast<long>(rows.size()); ++c) {
        long piv = -1;
        for (size_t rr = rank; rr < rows.size(); ++rr)
          if (rows[rr][c] != 0) {
            piv = static_cast<long>(rr);
            break;
          }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        long inv = F.inv(rows[rank][c]);
        for (int j = c; j < nvars; ++j)
          rows[rank][j] = F.mul(rows[rank][j], inv);
        for (size_t rr = 0; rr < rows.size(); ++rr) {
          if (static_cast<long>(rr) == rank || rows[rr][c] == 0) continue;
          long fmul = rows[rr][c];
          for (int j = c; j < nvars; ++j)
            rows[rr][j] = F.sub(rows[rr][j], F.mul(fmul, rows[rank][j]));
        }
        ++rank;
      }
      best = std::max(best, rank);
    }
    if (best >= 0) return best;
  }
  fail(Errc::DegenerateEvaluation,
       "no evaluation point avoided the denominators within the retry budget");
}

ModularLowerBound ed_lower_bound_modular(long n, long q,
                                         const TrdegConfig& cfg) {
  if (n < 1) fail(Errc::BadInput, "need n >= 1");
  if (q != 2)
    fail(Errc::UnsupportedPrime,
         "the realization half of the argument is implemented for q = 2");
  if (n > kMaxVars - 1)
    fail(Errc::BadInput, "n exceeds the variable cap");

  std::vector<ProjPoint> pts;
  for (long i = 0; i < n; ++i)
    pts.push_back(make_point(MFrac::constant(2, static_cast<int>(n), 1),
                             MFrac::variable(2, static_cast<int>(n),
                                             static_cast<int>(i))));
  ModularRep rep = union_rep(pts, static_cast<int>(n));
  PointSet1 variety = rank_variety(rep);
  if (variety.points.size() != pts.size() || !variety.unresolved.empty() ||
      variety.whole_line)
    fail(Errc::Internal, "rank variety does not recover the configuration");
  for (const ProjPoint& pt : pts)
    if (std::find(variety.points.begin(), variety.points.end(), pt) ==
        variety.points.end())
      fail(Errc::Internal, "rank variety does not recover the configuration");

  long td = trdeg_of_points(variety, 2, static_cast<int>(n), cfg);
  if (td != n) fail(Errc::Internal, "transcendence degree is not n");

  ModularLowerBound out;
  out.n = n;
  out.dim = 2 * n;
  out.variety = std::move(variety);
  out.trdeg = td;
  out.statement =
      "certified: a " + std::to_string(2 * n) +
      "-dimensional representation of (Z/2)^2 over F_2(a1..a" +
      std::to_string(n) + ") whose rank variety needs trdeg " +
      std::to_string(n) + " to be defined; ed(Rep) >= " + std::to_string(n) +
      ", unbounded as n grows";
  return out;
}

}  // namespace edrep
