// Compares the serial reference convolution kernels against the OpenMP
// variants on both coefficient rings, plus an end-to-end deep expansion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eisenfact/generators.hpp"
#include "eisenfact/modring.hpp"

using namespace eisenfact;

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
  auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count() /
         reps;
}

std::vector<RingElem> random_exact(long n, std::mt19937_64& rng) {
  std::vector<RingElem> v;
  v.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    RingElem e(make_rational(static_cast<long>(rng() % 2001) - 1000,
                             static_cast<long>(rng() % 9) + 1));
    if (rng() % 4 == 0)
      e = e + RingElem::monomial(static_cast<int>(rng() % 8), 0, Rational(1));
    v.push_back(e);
  }
  return v;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("OpenMP: disabled at build time\n");
#endif
  std::mt19937_64 rng(7);
  ExactRing xr;

  std::printf("\nexact-ring convolution (RingElem coefficients)\n");
  std::printf("%8s %12s %12s %8s\n", "n", "serial ms", "omp ms", "speedup");
  for (long n : {256L, 512L, 1024L, 2048L}) {
    auto a = random_exact(n, rng);
    auto b = random_exact(n, rng);
    std::vector<RingElem> out;
    double ts = time_ms([&] { kernels::convolve_serial(xr, a, b, out, n); }, 3);
    double tp = time_ms([&] { kernels::convolve_parallel(xr, a, b, out, n); }, 3);
    std::printf("%8ld %12.2f %12.2f %8.2f\n", n, ts, tp, ts / tp);
  }

  auto rings = sample_mod_rings(1, 42);
  const ModRing& mr = rings[0];
  std::printf("\nmod-p convolution (p = %llu)\n",
              static_cast<unsigned long long>(mr.p));
  std::printf("%8s %12s %12s %8s\n", "n", "serial ms", "omp ms", "speedup");
  for (long n : {4096L, 16384L, 65536L}) {
    std::vector<uint64_t> a(static_cast<std::size_t>(n)),
        b(static_cast<std::size_t>(n)), out;
    for (auto& x : a) x = rng() % mr.p;
    for (auto& x : b) x = rng() % mr.p;
    double ts = time_ms([&] { kernels::convolve_serial(mr, a, b, out, n); }, 3);
    double tp = time_ms([&] { kernels::convolve_parallel(mr, a, b, out, n); }, 3);
    std::printf("%8ld %12.2f %12.2f %8.2f\n", n, ts, tp, ts / tp);
  }

  std::printf("\nend-to-end: eta(2t)^24 identity constituents at depth 128\n");
  for (auto mode : {kernels::Mode::ForceSerial, kernels::Mode::Auto}) {
    kernels::set_mode(mode);
    Registry reg;
    auto t0 = Clock::now();
    reg.generate(GeneratorId::parse("eta"), 128);
    ExactRing r;
    auto eta = reg.generate(GeneratorId::parse("eta"), 128);
    auto e8 = series_pow(r, eta, 8);
    auto e24 = series_pow(r, series_dilate(r, eta, 2), 24);
    (void)series_mul(r, e8, e24);
    double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    std::printf("  %s: %.2f ms\n",
                mode == kernels::Mode::ForceSerial ? "serial" : "auto  ", ms);
  }
  kernels::set_mode(kernels::Mode::Auto);
  return 0;
}
