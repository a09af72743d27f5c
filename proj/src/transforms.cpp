// FFTW-backed 2-D transforms between collocation values and Fourier
// coefficients.
//
// Conventions (relied on throughout the code base):
//   * forward:  c(j,m) = (1/(n1*n2)) * sum_x f(x) exp(-i(xi1*x1 + xi2*x2))
//   * inverse:  f(x)   =               sum_jm c(j,m) exp(+i(xi1*x1 + xi2*x2))
//   * storage is row-major with x1 fastest, matching fftw_plan_dft_2d(n2, n1).
//
// Plans are cached per grid size behind a mutex and executed with the
// new-array interface, so concurrent transforms on different fields are safe.
// Plans use FFTW_ESTIMATE only: plan choice is then deterministic, which keeps
// repeated runs byte-identical on one platform.

#include "sqg/transforms.hpp"

#include <fftw3.h>

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sqg {

namespace {

std::atomic<std::uint64_t> g_transform_count{0};

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Cache key is (n1, n2). Plans are never destroyed; the set of grid sizes in
// a process is small.
PlanPair plans_for(int n1, int n2) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n1, n2);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // Planning buffer; new-array execution requires matching alignment, which
  // fftw_alloc_complex guarantees for every buffer of the same type.
  fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n1) * n2);
  if (!buf) throw std::runtime_error("fftw allocation failed");
  PlanPair p;
  p.fwd = fftw_plan_dft_2d(n2, n1, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_2d(n2, n1, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(buf);
  if (!p.fwd || !p.bwd) throw std::runtime_error("fftw planning failed");
  cache[key] = p;
  return p;
}

struct FftwBuffer {
  fftw_complex* data = nullptr;
  explicit FftwBuffer(size_t n) : data(fftw_alloc_complex(n)) {
    if (!data) throw std::runtime_error("fftw allocation failed");
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
  const GridSpec& g = f.grid;
  g.validate();
  const size_t n = static_cast<size_t>(g.size());
  FftwBuffer buf(n);
  for (size_t a = 0; a < n; ++a) {
    const double v = f.values[a];
    if (!std::isfinite(v))
      throw std::invalid_argument("forward_transform: non-finite input");
    buf.data[a][0] = v;
    buf.data[a][1] = 0.0;
  }
  PlanPair p = plans_for(g.n1, g.n2);
  fftw_execute_dft(p.fwd, buf.data, buf.data);
  g_transform_count.fetch_add(1, std::memory_order_relaxed);

  // The grid origin sits at x2 = -L2 while FFTW phases count from index 0;
  // exp(-i xi2 x2) = (-1)^m exp(-2 pi i m k / n2), an exact +-1 twist per row.
  SpectralField out(g);
  const double scale = 1.0 / static_cast<double>(n);
  for (int k = 0; k < g.n2; ++k) {
    const double sign = g.mfreq(k) % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < g.n1; ++i) {
      const size_t a = static_cast<size_t>(g.idx(i, k));
      out.coeffs[a] =
          cplx(buf.data[a][0] * sign * scale, buf.data[a][1] * sign * scale);
    }
  }
  return out;
}

PhysicalField inverse_transform(const SpectralField& gfield) {
  const GridSpec& g = gfield.grid;
  g.validate();
  const size_t n = static_cast<size_t>(g.size());
  if (gfield.coeffs.size() != n)
    throw std::invalid_argument("inverse_transform: coefficient size mismatch");
  FftwBuffer buf(n);
  for (int k = 0; k < g.n2; ++k) {
    const double sign = g.mfreq(k) % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < g.n1; ++i) {
      const size_t a = static_cast<size_t>(g.idx(i, k));
      buf.data[a][0] = sign * gfield.coeffs[a].real();
      buf.data[a][1] = sign * gfield.coeffs[a].imag();
    }
  }
  PlanPair p = plans_for(g.n1, g.n2);
  fftw_execute_dft(p.bwd, buf.data, buf.data);
  g_transform_count.fetch_add(1, std::memory_order_relaxed);

  PhysicalField out(g);
  for (size_t a = 0; a < n; ++a) out.values[a] = buf.data[a][0];
  return out;
}

std::uint64_t transform_count() {
  return g_transform_count.load(std::memory_order_relaxed);
}

}  // namespace sqg
