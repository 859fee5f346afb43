#include "edrep/character.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "edrep/kernels.hpp"
#include "edrep/numutil.hpp"

namespace edrep {

long Character::degree() const {
  if (!group) fail(Errc::BadInput, "character has no group");
  Rat d = values[0].to_rational();
  if (!rat_is_integer(d) || d <= 0)
    fail(Errc::NotACharacter, "degree is not a positive integer");
  return static_cast<long>(d.get_num().get_si());
}

namespace {

// ---- dense linear algebra and polynomials over F_l -------------------------

using ModVec = std::vector<long>;
using ModMat = std::vector<ModVec>;  // rows

long modn(long x, long l) { return ((x % l) + l) % l; }

void poly_trim(ModVec& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ModVec poly_mul(const ModVec& a, const ModVec& b, long l) {
  if (a.empty() || b.empty()) return {};
  ModVec c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % l;
  }
  return c;
}

ModVec poly_rem(ModVec a, const ModVec& b, long l) {
  long inv_lead = invmod(b.back(), l);
  while (a.size() >= b.size()) {
    long q = (a.back() * inv_lead) % l;
    if (q != 0) {
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[off + i] = modn(a[off + i] - q * b[i], l);
    }
    a.pop_back();
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

ModVec poly_monic(ModVec f, long l) {
  poly_trim(f);
  if (f.empty()) return f;
  long inv = invmod(f.back(), l);
  for (long& c : f) c = (c * inv) % l;
  return f;
}

ModVec poly_gcd(ModVec a, ModVec b, long l) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    ModVec r = poly_rem(a, b, l);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a, l);
}

// x^exp mod f
ModVec poly_x_powmod(long exp, const ModVec& f, long l) {
  ModVec result = {1};
  ModVec base = poly_rem({0, 1}, f, l);
  while (exp > 0) {
    if (exp & 1) result = poly_rem(poly_mul(result, base, l), f, l);
    base = poly_rem(poly_mul(base, base, l), f, l);
    exp >>= 1;
  }
  return result;
}

ModVec poly_powmod(ModVec g, long exp, const ModVec& f, long l) {
  ModVec result = {1};
  g = poly_rem(std::move(g), f, l);
  while (exp > 0) {
    if (exp & 1) result = poly_rem(poly_mul(result, g, l), f, l);
    g = poly_rem(poly_mul(g, g, l), f, l);
    exp >>= 1;
  }
  return result;
}

// All roots in F_l of a product of distinct linear factors (Cantor-
// Zassenhaus equal-degree splitting with a fixed-seed generator).
void split_linear(const ModVec& g, long l, std::mt19937_64& rng,
                  std::vector<long>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(modn(-g[0] * invmod(g[1], l), l));
    return;
  }
  while (true) {
    long delta = static_cast<long>(rng() % static_cast<unsigned long>(l));
    ModVec h = poly_powmod({delta, 1}, (l - 1) / 2, g, l);
    if (h.empty())
      h = {modn(-1, l)};
    else
      h[0] = modn(h[0] - 1, l);
    poly_trim(h);
    if (h.empty()) continue;
    ModVec d = poly_gcd(g, h, l);
    if (d.size() <= 1 || d.size() == g.size()) continue;
    ModVec q = g;
    // q = g / d by repeated remainder-free division
    {
      ModVec quot(q.size() - d.size() + 1, 0);
      long inv_lead = invmod(d.back(), l);
      ModVec rem = q;
      for (long i = static_cast<long>(rem.size()) - 1;
           i >= static_cast<long>(d.size()) - 1; --i) {
        long c = (rem[i] * inv_lead) % l;
        quot[i - (d.size() - 1)] = c;
        if (c != 0)
          for (size_t k = 0; k < d.size(); ++k)
            rem[i - (d.size() - 1) + k] =
                modn(rem[i - (d.size() - 1) + k] - c * d[k], l);
      }
      q = std::move(quot);
      poly_trim(q);
    }
    split_linear(d, l, rng, out);
    split_linear(q, l, rng, out);
    return;
  }
}

std::vector<long> distinct_roots(const ModVec& f, long l,
                                 std::mt19937_64& rng) {
  // gcd(f, x^l - x) = product of the distinct linear factors
  ModVec xl = poly_x_powmod(l, f, l);
  if (xl.size() < 2) xl.resize(2, 0);
  xl[1] = modn(xl[1] - 1, l);
  poly_trim(xl);
  ModVec g = xl.empty() ? poly_monic(f, l) : poly_gcd(f, xl, l);
  std::vector<long> roots;
  split_linear(g, l, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Characteristic polynomial mod l via Hessenberg reduction.
ModVec charpoly(ModMat a, long l) {
  const long n = static_cast<long>(a.size());
  // reduce to upper Hessenberg form by similarity transforms
  for (long c = 0; c + 2 < n; ++c) {
    long pivot = -1;
    for (long r = c + 1; r < n; ++r)
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != c + 1) {
      std::swap(a[pivot], a[c + 1]);
      for (long r = 0; r < n; ++r) std::swap(a[r][pivot], a[r][c + 1]);
    }
    long inv = invmod(a[c + 1][c], l);
    for (long r = c + 2; r < n; ++r) {
      long f = (a[r][c] * inv) % l;
      if (f == 0) continue;
      for (long j = 0; j < n; ++j) a[r][j] = modn(a[r][j] - f * a[c + 1][j], l);
      for (long j = 0; j < n; ++j) a[j][c + 1] = modn(a[j][c + 1] + f * a[j][r], l);
    }
  }
  // p_k(x) = det(xI - H_k) recurrence on leading principal minors
  std::vector<ModVec> p(n + 1);
  p[0] = {1};
  for (long k = 1; k <= n; ++k) {
    // p_k = (x - h_kk) p_{k-1} - sum over i of h_{ik} * prod(subdiag) * p_{i-1}
    ModVec t = poly_mul(p[k - 1], {modn(-a[k - 1][k - 1], l), 1}, l);
    long beta = 1;
    for (long i = k - 1; i >= 1; --i) {
      beta = (beta * a[i][i - 1]) % l;
      if (beta == 0) break;
      long coef = (a[i - 1][k - 1] * beta) % l;
      if (coef == 0) continue;
      if (t.size() < p[i - 1].size()) t.resize(p[i - 1].size(), 0);
      for (size_t j = 0; j < p[i - 1].size(); ++j)
        t[j] = modn(t[j] - coef * p[i - 1][j], l);
    }
    poly_trim(t);
    p[k] = std::move(t);
  }
  return p[n];
}

// Coefficients of w in the row space of basis (Gaussian solve); basis rows
// are independent. Returns empty if w is outside the span.
ModVec coords_in_basis(const ModMat& basis, const ModVec& w, long l) {
  const long d = static_cast<long>(basis.size());
  const long r = static_cast<long>(w.size());
  // augmented system: sum_t c_t basis[t] = w, unknowns c_t
  ModMat sys(r, ModVec(d + 1, 0));
  for (long row = 0; row < r; ++row) {
    for (long t = 0; t < d; ++t) sys[row][t] = basis[t][row];
    sys[row][d] = w[row];
  }
  std::vector<long> pivot_col(d, -1);
  long rank = 0;
  for (long c = 0; c < d && rank < r; ++c) {
    long pr = -1;
    for (long row = rank; row < r; ++row)
      if (sys[row][c] != 0) {
        pr = row;
        break;
      }
    if (pr < 0) continue;
    std::swap(sys[rank], sys[pr]);
    long inv = invmod(sys[rank][c], l);
    for (long j = c; j <= d; ++j) sys[rank][j] = (sys[rank][j] * inv) % l;
    for (long row = 0; row < r; ++row) {
      if (row == rank || sys[row][c] == 0) continue;
      long f = sys[row][c];
      for (long j = c; j <= d; ++j)
        sys[row][j] = modn(sys[row][j] - f * sys[rank][j], l);
    }
    pivot_col[rank] = c;
    ++rank;
  }
  for (long row = rank; row < r; ++row)
    if (sys[row][d] != 0) return {};
  ModVec c(d, 0);
  for (long row = 0; row < rank; ++row) c[pivot_col[row]] = sys[row][d];
  return c;
}

ModMat nullspace(ModMat a, long l) {
  const long n = static_cast<long>(a.size());
  std::vector<long> pivot_of_col(n, -1);
  long rank = 0;
  for (long c = 0; c < n && rank < n; ++c) {
    long pr = -1;
    for (long r = rank; r < n; ++r)
      if (a[r][c] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[rank], a[pr]);
    long inv = invmod(a[rank][c], l);
    for (long j = 0; j < n; ++j) a[rank][j] = (a[rank][j] * inv) % l;
    for (long r = 0; r < n; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      long f = a[r][c];
      for (long j = 0; j < n; ++j) a[r][j] = modn(a[r][j] - f * a[rank][j], l);
    }
    pivot_of_col[c] = rank;
    ++rank;
  }
  ModMat basis;
  for (long c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    ModVec v(n, 0);
    v[c] = 1;
    for (long c2 = 0; c2 < n; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = modn(-a[pivot_of_col[c2]][c], l);
    basis.push_back(std::move(v));
  }
  return basis;
}

ModVec mat_vec(const std::vector<long>& m_flat, const ModVec& v, long l) {
  const long r = static_cast<long>(v.size());
  ModVec w(r, 0);
  for (long j = 0; j < r; ++j) {
    long acc = 0;
    for (long k = 0; k < r; ++k)
      acc = (acc + (m_flat[j * r + k] % l) * v[k]) % l;
    w[j] = acc;
  }
  return w;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& g) {
  CharacterTable table;
  table.group = &g;
  const long r = g.num_classes();
  if (r == 1) {
    table.irreducibles.push_back({&g, {CycloNum(1)}});
    return table;
  }

  const long n = g.order();
  const long e = g.exponent();
  long l = smallest_prime_1_mod(e, 2);
  while (l * l <= 4 * n) l = smallest_prime_1_mod(e, l);

  const std::vector<std::vector<long>> tables = class_product_table(g);

  // primitive e-th root of unity mod l
  long gen = 0;
  {
    std::vector<long> qs;
    long m = l - 1;
    for (long q = 2; q * q <= m; ++q)
      if (m % q == 0) {
        qs.push_back(q);
        while (m % q == 0) m /= q;
      }
    if (m > 1) qs.push_back(m);
    for (long cand = 2; cand < l; ++cand) {
      bool ok = true;
      for (long q : qs)
        if (powmod(cand, (l - 1) / q, l) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen = cand;
        break;
      }
    }
  }
  const long z = powmod(gen, (l - 1) / e, l);
  std::vector<long> zpow(e);
  for (long t = 0; t < e; ++t) zpow[t] = powmod(z, t, l);

  // split the common eigenspaces of the class-sum matrices
  std::mt19937_64 rng(0x5eed);
  std::vector<ModMat> spaces;
  {
    ModMat full(r, ModVec(r, 0));
    for (long i = 0; i < r; ++i) full[i][i] = 1;
    spaces.push_back(std::move(full));
  }
  for (long i = 1; i < r; ++i) {
    bool all_done = true;
    for (const ModMat& v : spaces)
      if (v.size() > 1) all_done = false;
    if (all_done) break;

    std::vector<ModMat> next;
    for (ModMat& v : spaces) {
      const long d = static_cast<long>(v.size());
      if (d == 1) {
        next.push_back(std::move(v));
        continue;
      }
      // restriction of M_i to the invariant subspace spanned by v
      ModMat x(d, ModVec(d, 0));
      for (long j = 0; j < d; ++j) {
        ModVec w = mat_vec(tables[i], v[j], l);
        ModVec c = coords_in_basis(v, w, l);
        if (c.empty()) fail(Errc::Internal, "subspace not invariant");
        for (long t = 0; t < d; ++t) x[t][j] = c[t];
      }
      std::vector<long> lambdas = distinct_roots(charpoly(x, l), l, rng);
      if (lambdas.size() <= 1) {
        next.push_back(std::move(v));
        continue;
      }
      long total = 0;
      for (long lam : lambdas) {
        ModMat shifted = x;
        for (long t = 0; t < d; ++t) shifted[t][t] = modn(shifted[t][t] - lam, l);
        ModMat null_coords = nullspace(std::move(shifted), l);
        ModMat sub;
        for (const ModVec& c : null_coords) {
          ModVec vec(r, 0);
          for (long t = 0; t < d; ++t) {
            if (c[t] == 0) continue;
            for (long k = 0; k < r; ++k)
              vec[k] = (vec[k] + c[t] * v[t][k]) % l;
          }
          sub.push_back(std::move(vec));
        }
        total += static_cast<long>(sub.size());
        next.push_back(std::move(sub));
      }
      if (total != d) fail(Errc::Internal, "class matrix not diagonalizable");
    }
    spaces = std::move(next);
  }
  if (static_cast<long>(spaces.size()) != r)
    fail(Errc::Internal, "eigenspace splitting incomplete");

  // each line gives the central character omega, then degree and values
  const long inv_e = invmod(e % l, l);
  std::vector<Character> rows;
  for (const ModMat& v : spaces) {
    if (v.size() != 1) fail(Errc::Internal, "eigenspace splitting incomplete");
    ModVec omega = v[0];
    long scale = invmod(omega[0], l);
    for (long& c : omega) c = (c * scale) % l;

    long s = 0;
    for (long k = 0; k < r; ++k) {
      long kinv = g.class_of(g.inverse(g.class_rep(k)));
      long inv_size = invmod(g.class_size(k) % l, l);
      s = (s + omega[k] * omega[kinv] % l * inv_size) % l;
    }
    long d2 = (n % l) * invmod(s, l) % l;
    long deg = 0;
    for (long cand = 1; cand * cand <= n; ++cand)
      if ((cand * cand) % l == d2) {
        deg = cand;
        break;
      }
    if (deg == 0) fail(Errc::Internal, "no integer degree matches");

    // chi(g_k) mod l, then lift to a cyclotomic integer per class
    std::vector<CycloNum> values(r);
    for (long k = 0; k < r; ++k) {
      std::vector<long> tpow(e);
      int x = g.identity();
      int rep = g.class_rep(static_cast<int>(k));
      for (long j = 0; j < e; ++j) {
        long cls = g.class_of(x);
        tpow[j] = deg % l * omega[cls] % l *
                  invmod(g.class_size(static_cast<int>(cls)) % l, l) % l;
        x = g.mul(x, rep);
      }
      CycloNum val(0);
      for (long m = 0; m < e; ++m) {
        long acc = 0;
        for (long j = 0; j < e; ++j)
          acc = (acc + tpow[j] * zpow[(e - (j * m) % e) % e]) % l;
        long cm = (acc * inv_e) % l;
        if (cm > n)
          fail(Errc::Internal, "eigenvalue multiplicity lift out of range");
        if (cm != 0) val += CycloNum(cm) * CycloNum::zeta(e, m);
      }
      values[k] = val;
    }
    rows.push_back({&g, std::move(values)});
  }

  std::sort(rows.begin(), rows.end(), [](const Character& a, const Character& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t k = 0; k < a.values.size(); ++k) {
      int c = CycloNum::compare(a.values[k], b.values[k]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  table.irreducibles = std::move(rows);

  // exact verification: orthogonality relations and sum of squared degrees.
  // Values are algebraic integers, so the sums run over plain integer
  // coefficient vectors (coefficients stay far below 2^63 at desk scale).
  long sum_sq = 0;
  for (const Character& chi : table.irreducibles) sum_sq += chi.degree() * chi.degree();
  if (sum_sq != n) fail(Errc::Internal, "sum of squared degrees mismatch");
  {
    const long phi = euler_phi(e);
    auto to_int = [&](const CycloNum& v) {
      std::vector<long> out(phi);
      const std::vector<Rat> c = v.lifted_to(e).coeffs();
      for (long t = 0; t < phi; ++t) {
        if (!rat_is_integer(c[t]))
          fail(Errc::Internal, "character value is not an algebraic integer");
        out[t] = static_cast<long>(c[t].get_num().get_si());
      }
      return out;
    };
    std::vector<std::vector<std::vector<long>>> vals(r), conj(r);
    for (long i = 0; i < r; ++i)
      for (long c = 0; c < r; ++c) {
        vals[i].push_back(to_int(table.irreducibles[i].values[c]));
        conj[i].push_back(to_int(table.irreducibles[i].values[c].galois(-1)));
      }
    std::vector<long> phi_int(phi);
    for (long t = 0; t < phi; ++t)
      phi_int[t] =
          static_cast<long>(cyclotomic_polynomial(e)[t].get_num().get_si());

    std::vector<long> conv(2 * phi, 0);
    auto accumulate = [&](const std::vector<long>& a,
                          const std::vector<long>& b, long w) {
      for (long s = 0; s < phi; ++s) {
        if (a[s] == 0) continue;
        for (long t = 0; t < phi; ++t)
          if (b[t] != 0) conv[s + t] += w * a[s] * b[t];
      }
    };
    auto reduce_and_check = [&](long expect_const) {
      for (long t = 2 * phi - 2; t >= phi; --t) {
        long top = conv[t];
        if (top == 0) continue;
        conv[t] = 0;
        for (long s = 0; s < phi; ++s) conv[t - phi + s] -= top * phi_int[s];
      }
      bool ok = conv[0] == expect_const;
      for (long t = 1; t < phi; ++t)
        if (conv[t] != 0) ok = false;
      std::fill(conv.begin(), conv.end(), 0);
      return ok;
    };
    for (long i = 0; i < r; ++i)
      for (long j = i; j < r; ++j) {
        for (long c = 0; c < r; ++c)
          accumulate(vals[i][c], conj[j][c], g.class_size(static_cast<int>(c)));
        if (!reduce_and_check(i == j ? n : 0))
          fail(Errc::Internal, "row orthogonality fails");
      }
    for (long c = 0; c < r; ++c)
      for (long cp = c; cp < r; ++cp) {
        for (long i = 0; i < r; ++i) accumulate(vals[i][c], conj[i][cp], 1);
        long expect = c == cp ? n / g.class_size(static_cast<int>(c)) : 0;
        if (!reduce_and_check(expect))
          fail(Errc::Internal, "column orthogonality fails");
      }
  }

  return table;
}

Rat inner_product(const Character& a, const Character& b) {
  if (a.group != b.group)
    fail(Errc::GroupMismatch, "characters live on different groups");
  const FiniteGroup& g = *a.group;
  CycloNum acc(0);
  for (int k = 0; k < g.num_classes(); ++k)
    acc += CycloNum(g.class_size(k)) * a.values[k] * b.values[k].galois(-1);
  CycloNum total = acc;
  if (!total.is_rational())
    fail(Errc::NotACharacter, "inner product is not rational");
  return total.to_rational() / Rat(g.order());
}

int fs_indicator(const Character& chi) {
  if (inner_product(chi, chi) != 1)
    fail(Errc::NotIrreducible, "fs_indicator needs an irreducible character");
  const FiniteGroup& g = *chi.group;
  CycloNum acc(0);
  for (int k = 0; k < g.num_classes(); ++k)
    acc += CycloNum(g.class_size(k)) * chi.values[g.power_class(2, k)];
  if (!acc.is_rational()) fail(Errc::Internal, "fs sum not rational");
  Rat v = acc.to_rational() / Rat(g.order());
  if (v != -1 && v != 0 && v != 1)
    fail(Errc::Internal, "fs indicator outside {-1,0,1}");
  return static_cast<int>(v.get_num().get_si());
}

BaseField character_field(const Character& chi, const BaseField& k) {
  BaseField stab = stabilizer_field(chi.values);
  long e = lcm_long(stab.conductor, k.conductor);
  BaseField ke = k.lifted_to(e), se = stab.lifted_to(e);
  BaseField out;
  out.conductor = e;
  out.subgroup.clear();
  std::set_intersection(ke.subgroup.begin(), ke.subgroup.end(),
                        se.subgroup.begin(), se.subgroup.end(),
                        std::back_inserter(out.subgroup));
  out.description = k.description.empty() ? "k(chi)" : k.description + "(chi)";
  return out;
}

std::vector<std::vector<int>> galois_orbits(const CharacterTable& table,
                                            const BaseField& k) {
  const FiniteGroup& g = *table.group;
  const long e = g.exponent();
  const long m = lcm_long(e, k.conductor);
  std::vector<long> js;
  {
    std::set<long> seen;
    for (long j : k.lifted_to(m).subgroup) seen.insert(j % e == 0 ? e : j % e);
    js.assign(seen.begin(), seen.end());
  }

  const long r = static_cast<long>(table.irreducibles.size());
  auto key_of = [&](const std::vector<CycloNum>& vals) {
    std::vector<Rat> key;
    for (const CycloNum& v : vals) {
      const std::vector<Rat> c = v.lifted_to(e).coeffs();
      key.insert(key.end(), c.begin(), c.end());
    }
    return key;
  };
  std::map<std::vector<Rat>, long> index;
  for (long i = 0; i < r; ++i)
    index[key_of(table.irreducibles[i].values)] = i;
  auto row_index = [&](const std::vector<CycloNum>& vals) {
    auto it = index.find(key_of(vals));
    if (it == index.end())
      fail(Errc::Internal, "conjugate character missing from table");
    return it->second;
  };

  std::vector<int> orbit_of(r, -1);
  std::vector<std::vector<int>> orbits;
  for (long i = 0; i < r; ++i) {
    if (orbit_of[i] != -1) continue;
    std::vector<int> orbit;
    std::vector<long> stack = {i};
    orbit_of[i] = static_cast<int>(orbits.size());
    while (!stack.empty()) {
      long cur = stack.back();
      stack.pop_back();
      orbit.push_back(static_cast<int>(cur));
      for (long j : js) {
        if (j % e != 0 && gcd_long(j % e, e) != 1) continue;
        std::vector<CycloNum> conj(table.irreducibles[cur].values.size());
        for (int c = 0; c < g.num_classes(); ++c)
          conj[c] = table.irreducibles[cur].values[g.power_class(j, c)];
        long t = row_index(conj);
        if (orbit_of[t] == -1) {
          orbit_of[t] = orbit_of[i];
          stack.push_back(t);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<long> decompose(const Character& chi, const CharacterTable& table) {
  std::vector<long> m;
  for (const Character& irr : table.irreducibles) {
    Rat ip = inner_product(chi, irr);
    if (!rat_is_integer(ip) || ip < 0)
      fail(Errc::NotACharacter,
           "multiplicity " + rat_str(ip) + " is not a non-negative integer");
    m.push_back(static_cast<long>(ip.get_num().get_si()));
  }
  // exact reconstruction check
  for (size_t k = 0; k < chi.values.size(); ++k) {
    CycloNum acc(0);
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) acc += CycloNum(m[i]) * table.irreducibles[i].values[k];
    if (acc != chi.values[k])
      fail(Errc::NotACharacter, "not in the span of the irreducibles");
  }
  return m;
}

long envelope_dimension(const Character& chi, const BaseField& k,
                        const CharacterTable& table) {
  for (const CycloNum& v : chi.values)
    if (!fixed_by(v, k))
      fail(Errc::ValuesNotInField, "character value " + v.str() +
                                       " is not in the base field");
  std::vector<long> m = decompose(chi, table);
  long dim = 0;
  for (const std::vector<int>& orbit : galois_orbits(table, k)) {
    if (m[orbit[0]] == 0) continue;
    const Character& rep = table.irreducibles[orbit[0]];
    long ext = field_degree(character_field(rep, k), k);
    dim += ext * rep.degree() * rep.degree();
  }
  return dim;
}

namespace {

CycloMat mat_mul(const CycloMat& a, const CycloMat& b) {
  size_t n = a.size();
  CycloMat c(n, std::vector<CycloNum>(n, CycloNum(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

long envelope_matrix_dimension(const std::vector<CycloMat>& rep,
                               const BaseField& k, const FiniteGroup& g) {
  if (static_cast<long>(rep.size()) != g.order())
    fail(Errc::NotAHomomorphism, "need one matrix per group element");
  const size_t n = rep[0].size();
  for (const CycloMat& m : rep) {
    if (m.size() != n) fail(Errc::NotAHomomorphism, "matrix sizes differ");
    for (const auto& row : m)
      if (row.size() != n) fail(Errc::NotAHomomorphism, "matrix not square");
  }
  // homomorphism check on generator products (covers the whole group since
  // every element is a product of generators)
  std::vector<int> gen_idx;
  for (const Perm& p : g.generators()) {
    int i = g.index_of(p);
    if (i < 0) fail(Errc::Internal, "generator missing from element list");
    gen_idx.push_back(i);
  }
  for (int gi : gen_idx)
    for (long h = 0; h < g.order(); ++h)
      if (mat_mul(rep[gi], rep[h]) != rep[g.mul(gi, static_cast<int>(h))])
        fail(Errc::NotAHomomorphism, "rho(g)rho(h) != rho(gh)");

  long e = k.conductor;
  for (const CycloMat& m : rep)
    for (const auto& row : m)
      for (const CycloNum& x : row) e = lcm_long(e, x.conductor());
  const long phi = euler_phi(e);

  // Q-basis of k inside Q(zeta_e): independent orbit sums over H
  std::vector<CycloNum> kbasis;
  {
    const BaseField ke = k.lifted_to(e);
    std::vector<std::vector<Rat>> coords;
    for (long t = 0; t < e; ++t) {
      CycloNum orbit_sum(0);
      for (long j : ke.subgroup) orbit_sum += CycloNum::zeta(e, j * t % e);
      std::vector<std::vector<Rat>> trial = coords;
      trial.push_back(orbit_sum.lifted_to(e).coeffs());
      if (rank_rational_serial(trial) >
          static_cast<long>(coords.size())) {
        coords.push_back(orbit_sum.lifted_to(e).coeffs());
        kbasis.push_back(orbit_sum);
      }
      if (static_cast<long>(kbasis.size()) == k.degree_over_q()) break;
    }
    if (static_cast<long>(kbasis.size()) != k.degree_over_q())
      fail(Errc::Internal, "could not build a Q-basis of the base field");
  }

  std::vector<std::vector<Rat>> rows;
  for (const CycloMat& m : rep)
    for (const CycloNum& b : kbasis) {
      std::vector<Rat> row;
      row.reserve(n * n * phi);
      for (const auto& matrow : m)
        for (const CycloNum& x : matrow) {
          const std::vector<Rat> c = (b * x).lifted_to(e).coeffs();
          row.insert(row.end(), c.begin(), c.end());
        }
      rows.push_back(std::move(row));
    }
  long rank = rank_rational(std::move(rows));
  long dk = static_cast<long>(kbasis.size());
  if (rank % dk != 0) fail(Errc::Internal, "span rank not divisible by [k:Q]");
  return rank / dk;
}

Character character_of_rep(const std::vector<CycloMat>& rep,
                           const FiniteGroup& g) {
  Character chi;
  chi.group = &g;
  for (int c = 0; c < g.num_classes(); ++c) {
    const CycloMat& m = rep[g.class_rep(c)];
    CycloNum tr(0);
    for (size_t i = 0; i < m.size(); ++i) tr += m[i][i];
    chi.values.push_back(tr);
  }
  return chi;
}

Character character_sum(const std::vector<const Character*>& parts) {
  if (parts.empty()) fail(Errc::BadInput, "empty character sum");
  Character out = *parts[0];
  for (size_t i = 1; i < parts.size(); ++i) {
    if (parts[i]->group != out.group)
      fail(Errc::GroupMismatch, "characters live on different groups");
    for (size_t k = 0; k < out.values.size(); ++k)
      out.values[k] += parts[i]->values[k];
  }
  return out;
}

Character character_scale(const Character& chi, long s) {
  Character out = chi;
  for (CycloNum& v : out.values) v = CycloNum(s) * v;
  return out;
}

}  // namespace edrep
