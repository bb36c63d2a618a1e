#ifndef EISENFACT_KERNELS_HPP
#define EISENFACT_KERNELS_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eisenfact {
namespace kernels {

enum class Mode {
  Auto,         // parallel when the product count clears the ring's grain
  ForceSerial,  // reference path
  ForceParallel,
};

inline std::atomic<Mode>& mode() {
  static std::atomic<Mode> m{Mode::Auto};
  return m;
}

inline void set_mode(Mode m) { mode().store(m); }

// out[k] = sum_{i+j=k} a[i]*b[j], truncated to n_out slots. Slots past the
// stored ends of a/b are implicit zeros, so n_out may exceed
// a.size()+b.size()-1. Serial reference implementation.
template <class Ring>
void convolve_serial(const Ring& ring, const std::vector<typename Ring::Elem>& a,
                     const std::vector<typename Ring::Elem>& b,
                     std::vector<typename Ring::Elem>& out, long n_out) {
  const long na = static_cast<long>(a.size());
  const long nb = static_cast<long>(b.size());
  out.assign(static_cast<std::size_t>(n_out), ring.zero());
  for (long k = 0; k < n_out; ++k) {
    auto acc = ring.acc_make();
    const long i_lo = std::max<long>(0, k - (nb - 1));
    const long i_hi = std::min<long>(na - 1, k);
    for (long i = i_lo; i <= i_hi; ++i) {
      if (ring.is_zero(a[i]) || ring.is_zero(b[k - i])) continue;
      ring.acc_fma(acc, a[i], b[k - i]);
    }
    out[k] = ring.acc_collect(acc);
  }
}

// OpenMP variant: each output slot is an independent inner product, so the
// loop over k carries no dependencies and the result is bit-identical to the
// serial kernel (the inner summation order is unchanged).
template <class Ring>
void convolve_parallel(const Ring& ring, const std::vector<typename Ring::Elem>& a,
                       const std::vector<typename Ring::Elem>& b,
                       std::vector<typename Ring::Elem>& out, long n_out) {
  const long na = static_cast<long>(a.size());
  const long nb = static_cast<long>(b.size());
  out.assign(static_cast<std::size_t>(n_out), ring.zero());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
  for (long k = 0; k < n_out; ++k) {
    auto acc = ring.acc_make();
    const long i_lo = std::max<long>(0, k - (nb - 1));
    const long i_hi = std::min<long>(na - 1, k);
    for (long i = i_lo; i <= i_hi; ++i) {
      if (ring.is_zero(a[i]) || ring.is_zero(b[k - i])) continue;
      ring.acc_fma(acc, a[i], b[k - i]);
    }
    out[k] = ring.acc_collect(acc);
  }
}

template <class Ring>
void convolve(const Ring& ring, const std::vector<typename Ring::Elem>& a,
              const std::vector<typename Ring::Elem>& b,
              std::vector<typename Ring::Elem>& out, long n_out) {
  Mode m = mode().load();
  bool parallel = false;
  switch (m) {
    case Mode::ForceSerial: parallel = false; break;
    case Mode::ForceParallel: parallel = true; break;
    case Mode::Auto: {
      long nnz_a = 0, nnz_b = 0;
      for (const auto& x : a)
        if (!ring.is_zero(x)) ++nnz_a;
      for (const auto& x : b)
        if (!ring.is_zero(x)) ++nnz_b;
      parallel = nnz_a * nnz_b >= ring.parallel_grain();
      break;
    }
  }
#ifdef _OPENMP
  if (omp_in_parallel()) parallel = false;  // catalog entries already fan out
#else
  parallel = false;
#endif
  if (parallel)
    convolve_parallel(ring, a, b, out, n_out);
  else
    convolve_serial(ring, a, b, out, n_out);
}

}  // namespace kernels
}  // namespace eisenfact

#endif
