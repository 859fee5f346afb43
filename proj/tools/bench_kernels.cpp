// Times the OpenMP kernels against their serial reference implementations:
// class multiplication constants, exact rational rank, the pencil minor
// scan, and the independence subset scan.
#include <chrono>
#include <iostream>
#include <random>

#include "edrep/kernels.hpp"
#include "edrep/modular.hpp"
#include "edrep/schur.hpp"

using namespace edrep;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f) {
  auto t0 = Clock::now();
  f();
  auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const std::string& name, double serial_ms, double parallel_ms) {
  std::cout << name << ": serial " << serial_ms << " ms, parallel "
            << parallel_ms << " ms, speedup "
            << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "x\n";
}

}  // namespace

int main() {
  // class multiplication constants on a generalized quaternion group
  {
    FiniteGroup g = schilling_two_group(512, 4096);
    std::vector<std::vector<long>> a, b;
    double ts = time_ms([&] { a = class_product_table_serial(g); });
    double tp = time_ms([&] { b = class_product_table(g); });
    if (a != b) {
      std::cerr << "class_product_table mismatch\n";
      return 1;
    }
    report("class constants (order 1024, 259 classes)", ts, tp);
  }

  // exact rational rank on a structured low-rank matrix
  {
    std::mt19937_64 rng(1);
    const long rows = 140, cols = 140, inner = 70;
    std::vector<std::vector<Rat>> u(rows, std::vector<Rat>(inner));
    std::vector<std::vector<Rat>> v(inner, std::vector<Rat>(cols));
    for (auto& row : u)
      for (Rat& x : row)
        x = Rat(static_cast<long>(rng() % 19) - 9, 1 + rng() % 7);
    for (auto& row : v)
      for (Rat& x : row)
        x = Rat(static_cast<long>(rng() % 19) - 9, 1 + rng() % 7);
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols, Rat(0)));
    for (long i = 0; i < rows; ++i)
      for (long k = 0; k < inner; ++k)
        for (long j = 0; j < cols; ++j) m[i][j] += u[i][k] * v[k][j];
    long rs = 0, rp = 0;
    double ts = time_ms([&] { rs = rank_rational_serial(m); });
    double tp = time_ms([&] { rp = rank_rational(m); });
    if (rs != rp || rs != inner) {
      std::cerr << "rank_rational mismatch\n";
      return 1;
    }
    report("rational rank (140x140, rank 70)", ts, tp);
  }

  // pencil minors of a dense conjugated union representation
  {
    std::mt19937_64 rng(2);
    const int nvars = 3;
    std::vector<ProjPoint> pts;
    for (int i = 0; i < nvars; ++i)
      pts.push_back(make_point(MFrac::constant(2, nvars, 1),
                               MFrac::variable(2, nvars, i)));
    ModularRep rep = union_rep(pts, nvars);
    const int n = rep.n;
    // densify by conjugating with transvections over F_2(a)
    MFrac zero = MFrac::constant(2, nvars, 0), one = MFrac::constant(2, nvars, 1);
    std::vector<std::vector<MFrac>> pmat(n, std::vector<MFrac>(n, zero));
    std::vector<std::vector<MFrac>> pinv(n, std::vector<MFrac>(n, zero));
    for (int i = 0; i < n; ++i) pmat[i][i] = pinv[i][i] = one;
    for (int step = 0; step < 8; ++step) {
      int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
      if (i == j) continue;
      MFrac c = MFrac::variable(2, nvars, static_cast<int>(rng() % nvars));
      for (int k = 0; k < n; ++k) pmat[i][k] = pmat[i][k] + c * pmat[j][k];
      for (int k = 0; k < n; ++k) pinv[k][j] = pinv[k][j] - c * pinv[k][i];
    }
    auto conj = [&](const std::vector<std::vector<MFrac>>& m) {
      std::vector<std::vector<MFrac>> t(n, std::vector<MFrac>(n, zero));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j) t[i][j] = t[i][j] + pmat[i][k] * m[k][j];
      std::vector<std::vector<MFrac>> out(n, std::vector<MFrac>(n, zero));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j)
            out[i][j] = out[i][j] + t[i][k] * pinv[k][j];
      return out;
    };
    auto m1 = conj(rep.m1);
    auto m2 = conj(rep.m2);
    std::vector<std::vector<std::pair<MPoly, MPoly>>> pencil(
        n, std::vector<std::pair<MPoly, MPoly>>(
               n, {MPoly(2, nvars), MPoly(2, nvars)}));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        MFrac b1 = m1[i][j] - (i == j ? one : zero);
        MFrac b2 = m2[i][j] - (i == j ? one : zero);
        pencil[i][j] = {b1.num() * b2.den(), b2.num() * b1.den()};
      }
    std::vector<BFormP> a, b;
    double ts = time_ms([&] { a = pencil_minors_serial(pencil, n / 2); });
    double tp = time_ms([&] { b = pencil_minors(pencil, n / 2); });
    if (a != b) {
      std::cerr << "pencil_minors mismatch\n";
      return 1;
    }
    report("pencil minors (6x6 dense, 3x3 minors)", ts, tp);
  }

  // independence subset scan
  {
    std::vector<long> primes = {3, 7, 11, 19, 23, 31, 43, 47};
    IndependenceCertificate a, b;
    double ts = time_ms([&] { a = norm_independence_test_serial(primes); });
    double tp = time_ms([&] { b = norm_independence_test(primes); });
    if (a.independent != b.independent || a.rows.size() != b.rows.size()) {
      std::cerr << "independence scan mismatch\n";
      return 1;
    }
    report("independence subsets (8 primes, 255 subsets)", ts, tp);
  }

  return 0;
}
