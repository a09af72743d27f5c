#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqg {

inline constexpr double kPi = 3.14159265358979323846;

// Collocation grid for the horizontally periodic strip [0, L1) x [-L2, L2).
// x1 is periodic with period L1, x2 is periodic with period 2*L2 (the strip
// truncates the vertical line; data is expected to decay well inside it).
//
// Frequency lattice:
//   xi1(j) = (2*pi/L1) * j,  j in {-n1/2, ..., n1/2 - 1}
//   xi2(m) = (pi/L2)   * m,  m in {-n2/2, ..., n2/2 - 1}
// With the default L1 = 2*pi the horizontal wavenumbers are the integers.
struct GridSpec {
  int n1 = 0;
  int n2 = 0;
  double L1 = 2.0 * kPi;
  double L2 = 8.0 * kPi;

  GridSpec() = default;
  GridSpec(int n1_, int n2_, double L1_ = 2.0 * kPi, double L2_ = 8.0 * kPi)
      : n1(n1_), n2(n2_), L1(L1_), L2(L2_) {
    validate();
  }

  void validate() const {
    if (n1 < 4 || n2 < 4 || n1 % 2 != 0 || n2 % 2 != 0)
      throw std::invalid_argument("grid sizes must be even and >= 4, got " +
                                  std::to_string(n1) + "x" + std::to_string(n2));
    if (!(L1 > 0.0) || !(L2 > 0.0))
      throw std::invalid_argument("grid periods must be positive");
  }

  int size() const { return n1 * n2; }

  // storage index: row-major with x1 fastest
  int idx(int i, int k) const { return k * n1 + i; }

  // signed frequency index from storage index (FFT layout wrap)
  int jfreq(int i) const { return i < n1 / 2 ? i : i - n1; }
  int mfreq(int k) const { return k < n2 / 2 ? k : k - n2; }

  // storage index of a signed frequency index
  int iof(int j) const { return j >= 0 ? j : j + n1; }
  int kof(int m) const { return m >= 0 ? m : m + n2; }

  double xi1(int j) const { return (2.0 * kPi / L1) * j; }
  double xi2(int m) const { return (kPi / L2) * m; }

  // |xi~|^2 at signed indices (j, m)
  double xi_norm2(int j, int m) const {
    const double a = xi1(j), b = xi2(m);
    return a * a + b * b;
  }

  double x1(int i) const { return L1 * i / n1; }
  double x2(int k) const { return -L2 + 2.0 * L2 * k / n2; }

  double cell_area() const { return L1 * 2.0 * L2 / (n1 * n2); }
  double domain_area() const { return L1 * 2.0 * L2; }

  double max_xi() const {
    const double a = xi1(n1 / 2), b = xi2(n2 / 2);
    return std::sqrt(a * a + b * b);
  }

  bool operator==(const GridSpec& o) const {
    return n1 == o.n1 && n2 == o.n2 && L1 == o.L1 && L2 == o.L2;
  }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b,
                              const char* where) {
  if (a != b)
    throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace sqg
