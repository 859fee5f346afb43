#include "edrep/group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "edrep/numutil.hpp"

namespace edrep {

namespace {

Perm compose(const Perm& p, const Perm& q) {
  // (p*q)(x) = p(q(x)); q is applied first.
  Perm r(p.size());
  for (size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
  return r;
}

Perm invert(const Perm& p) {
  Perm r(p.size());
  for (size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<int>(x);
  return r;
}

bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Perm identity_perm(int d) {
  Perm e(d);
  std::iota(e.begin(), e.end(), 0);
  return e;
}

}  // namespace

int FiniteGroup::mul(int a, int b) const {
  if (regular_) return elements_[a][b];
  if (!cayley_.empty()) return cayley_[static_cast<size_t>(a) * order() + b];
  auto it = index_.find(compose(elements_[a], elements_[b]));
  if (it == index_.end()) fail(Errc::Internal, "group not closed");
  return it->second;
}

int FiniteGroup::power(int a, long k) const {
  if (k < 0) {
    a = inverse_[a];
    k = -k;
  }
  int r = identity_;
  int base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

long FiniteGroup::element_order(int a) const {
  long o = 1;
  int x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

int FiniteGroup::power_class(long j, int c) const {
  return class_of_[power(class_rep(c), j)];
}

std::vector<int> FiniteGroup::power_class_map(long j) const {
  long jm = ((j % exponent_) + exponent_) % exponent_;
  if (gcd_long(jm, exponent_) != 1)
    fail(Errc::NotAUnit, "power_class_map: j not a unit mod exponent");
  std::vector<int> map(classes_.size());
  for (size_t c = 0; c < classes_.size(); ++c) {
    map[c] = class_of_[power(classes_[c][0], jm)];
    if (classes_[c].size() > 1) {
      // well-definedness check on a second representative
      int other = class_of_[power(classes_[c][1], jm)];
      if (other != map[c])
        fail(Errc::Internal, "power_class_map not class-constant");
    }
  }
  return map;
}

int FiniteGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

void FiniteGroup::finalize() {
  degree_ = static_cast<int>(elements_[0].size());
  for (size_t i = 0; i < elements_.size(); ++i)
    index_[elements_[i]] = static_cast<int>(i);
  identity_ = index_.at(identity_perm(degree_));
  if (identity_ != 0) {
    std::swap(elements_[0], elements_[identity_]);
    index_[elements_[0]] = 0;
    index_[elements_[identity_]] = identity_;
    identity_ = 0;
  }

  inverse_.resize(elements_.size());
  for (size_t i = 0; i < elements_.size(); ++i) {
    auto it = index_.find(invert(elements_[i]));
    if (it == index_.end()) fail(Errc::Internal, "inverse missing from closure");
    inverse_[i] = it->second;
  }

  // cache the full product table at desk scale (regular groups read products
  // straight off their permutation rows instead)
  constexpr long kCayleyCap = 2048;
  if (!regular_ && order() <= kCayleyCap) {
    const long n = order();
    cayley_.resize(n * n);
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b)
        cayley_[a * n + b] = index_.at(compose(elements_[a], elements_[b]));
  }

  // conjugacy classes by brute-force orbit computation
  const long n = order();
  class_of_.assign(n, -1);
  for (long x = 0; x < n; ++x) {
    if (class_of_[x] != -1) continue;
    int c = static_cast<int>(classes_.size());
    std::vector<int> members;
    std::deque<int> queue = {static_cast<int>(x)};
    class_of_[x] = c;
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      members.push_back(y);
      for (long g = 0; g < n; ++g) {
        int z = mul(mul(static_cast<int>(g), y), inverse_[g]);
        if (class_of_[z] == -1) {
          class_of_[z] = c;
          queue.push_back(z);
        }
      }
    }
    std::sort(members.begin(), members.end());
    classes_.push_back(std::move(members));
  }

  exponent_ = 1;
  for (size_t c = 0; c < classes_.size(); ++c)
    exponent_ = lcm_long(exponent_, element_order(classes_[c][0]));
}

FiniteGroup FiniteGroup::from_elements(std::vector<Perm> elements,
                                       std::vector<Perm> generators,
                                       std::vector<std::string> labels,
                                       FamilyTag tag, bool regular) {
  FiniteGroup g;
  g.elements_ = std::move(elements);
  g.generators_ = std::move(generators);
  g.labels_ = std::move(labels);
  g.family_ = std::move(tag);
  if (regular) {
    for (size_t a = 0; a < g.elements_.size(); ++a)
      if (g.elements_[a][0] != static_cast<int>(a))
        fail(Errc::Internal, "regular representation rows out of order");
    g.regular_ = true;
  }
  g.finalize();
  return g;
}

FiniteGroup from_generators(const std::vector<Perm>& gens, long cap,
                            std::vector<std::string> labels) {
  if (gens.empty()) fail(Errc::NotPermutation, "no generators given");
  size_t d = gens[0].size();
  if (d == 0) fail(Errc::NotPermutation, "empty permutation");
  for (const Perm& g : gens) {
    if (g.size() != d)
      fail(Errc::NotPermutation, "generators act on different sets");
    if (!is_permutation(g)) fail(Errc::NotPermutation, "not a bijection");
  }

  std::vector<Perm> elements = {identity_perm(static_cast<int>(d))};
  std::map<Perm, int> seen = {{elements[0], 0}};
  std::deque<int> queue = {0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (const Perm& g : gens) {
      Perm h = compose(elements[i], g);
      if (seen.emplace(h, static_cast<int>(elements.size())).second) {
        elements.push_back(h);
        if (static_cast<long>(elements.size()) > cap)
          fail(Errc::CapExceeded, "group order exceeds cap");
        queue.push_back(static_cast<int>(elements.size()) - 1);
      }
    }
  }
  return FiniteGroup::from_elements(std::move(elements), gens,
                                    std::move(labels), FamilyTag{});
}

namespace {

// Builds the left regular representation of a group given as a multiplication
// law on codes 0..n-1 with identity code 0.
FiniteGroup regular_group(long n, const std::function<long(long, long)>& mult,
                          std::vector<long> gen_codes,
                          std::vector<std::string> labels, FamilyTag tag) {
  std::vector<Perm> elements(n, Perm(n));
  for (long g = 0; g < n; ++g)
    for (long x = 0; x < n; ++x)
      elements[g][x] = static_cast<int>(mult(g, x));
  std::vector<Perm> gens;
  for (long c : gen_codes) gens.push_back(elements[c]);
  return FiniteGroup::from_elements(std::move(elements), std::move(gens),
                                    std::move(labels), std::move(tag),
                                    /*regular=*/true);
}

}  // namespace

FiniteGroup quaternion_semidirect(long p, long cap) {
  if (!is_prime_long(p) || p % 4 != 3)
    fail(Errc::BadPrime, "p must be a prime congruent to 3 mod 4");
  if (4 * p > cap) fail(Errc::CapExceeded, "group order exceeds cap");
  // codes i*4 + j encode a^i y^j with i mod p, j mod 4
  auto mult = [p](long x, long y) {
    long i1 = x / 4, j1 = x % 4, i2 = y / 4, j2 = y % 4;
    long i = (j1 % 2 == 0) ? (i1 + i2) % p : ((i1 - i2) % p + p) % p;
    return i * 4 + (j1 + j2) % 4;
  };
  FamilyTag tag;
  tag.kind = FamilyTag::Kind::QuaternionSemidirect;
  tag.p = p;
  return regular_group(4 * p, mult, {4, 1}, {"a", "y"}, tag);
}

FiniteGroup schilling_two_group(long s, long cap) {
  if (s < 4 || (s & (s - 1)) != 0)
    fail(Errc::BadOrder, "s must be a power of 2, s >= 4");
  if (2 * s > cap) fail(Errc::CapExceeded, "group order exceeds cap");
  // codes i*2 + j encode a^i y^j with i mod s, j mod 2; y^2 = a^(s/2)
  auto mult = [s](long x, long y) {
    long i1 = x / 2, j1 = x % 2, i2 = y / 2, j2 = y % 2;
    long i = (j1 == 0) ? (i1 + i2) : (i1 - i2 + s);
    if (j1 == 1 && j2 == 1) i += s / 2;
    return (i % s) * 2 + (j1 + j2) % 2;
  };
  FamilyTag tag;
  tag.kind = FamilyTag::Kind::SchillingTwoGroup;
  tag.s = s;
  return regular_group(2 * s, mult, {2, 1}, {"a", "y"}, tag);
}

FiniteGroup direct_product(const std::vector<FiniteGroup>& gs, long cap) {
  if (gs.empty()) fail(Errc::BadInput, "empty product");
  long order = 1;
  int degree = 0;
  for (const FiniteGroup& g : gs) {
    order *= g.order();
    degree += g.degree();
    if (order > cap) fail(Errc::CapExceeded, "product order exceeds cap");
  }

  // element (g_1, .., g_m) acts on the disjoint union of the factor domains
  std::vector<Perm> elements;
  elements.reserve(order);
  std::vector<size_t> idx(gs.size(), 0);
  for (long count = 0; count < order; ++count) {
    Perm p(degree);
    int off = 0;
    for (size_t f = 0; f < gs.size(); ++f) {
      const Perm& q = gs[f].elements()[idx[f]];
      for (size_t x = 0; x < q.size(); ++x) p[off + x] = off + q[x];
      off += gs[f].degree();
    }
    elements.push_back(std::move(p));
    for (size_t f = gs.size(); f-- > 0;) {
      if (++idx[f] < static_cast<size_t>(gs[f].order())) break;
      idx[f] = 0;
    }
  }

  std::vector<Perm> gens;
  std::vector<std::string> labels;
  int off = 0;
  for (size_t f = 0; f < gs.size(); ++f) {
    for (size_t k = 0; k < gs[f].generators().size(); ++k) {
      Perm p(degree);
      std::iota(p.begin(), p.end(), 0);
      const Perm& q = gs[f].generators()[k];
      for (size_t x = 0; x < q.size(); ++x) p[off + x] = off + q[x];
      gens.push_back(std::move(p));
      std::string base = k < gs[f].labels().size()
                             ? gs[f].labels()[k]
                             : "g" + std::to_string(k);
      labels.push_back(gs.size() > 1 ? base + std::to_string(f + 1) : base);
    }
    off += gs[f].degree();
  }

  FamilyTag tag;
  tag.kind = FamilyTag::Kind::Product;
  for (const FiniteGroup& g : gs) {
    tag.factors.push_back(g.family());
    tag.factor_orders.push_back(g.order());
  }
  return FiniteGroup::from_elements(std::move(elements), std::move(gens),
                                    std::move(labels), std::move(tag));
}

}  // namespace edrep
