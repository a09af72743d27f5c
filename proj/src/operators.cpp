#include "sqg/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqg {

namespace {

double max_abs_coeff(const SpectralField& g) {
  double m = 0.0;
  for (const cplx& c : g.coeffs) m = std::max(m, std::abs(c));
  return m;
}

void require_mean_free(const SpectralField& g) {
  const double scale = std::max(1.0, max_abs_coeff(g));
  if (std::abs(g.coeffs[0]) > 1e-14 * scale)
    throw std::invalid_argument("fractional inverse of non-mean-free field");
}

}  // namespace

SpectralField fractional_laplacian(const SpectralField& g, double s) {
  if (s < 0.0) require_mean_free(g);
  const GridSpec& gr = g.grid;
  SpectralField out(gr);
  for (int k = 0; k < gr.n2; ++k) {
    const int m = gr.mfreq(k);
    for (int i = 0; i < gr.n1; ++i) {
      const int j = gr.jfreq(i);
      const double r2 = gr.xi_norm2(j, m);
      const int a = gr.idx(i, k);
      out.coeffs[a] = (r2 == 0.0) ? cplx{} : std::pow(r2, 0.5 * s) * g.coeffs[a];
    }
  }
  return out;
}

SpectralField riesz(const SpectralField& g, int axis) {
  if (axis != 1 && axis != 2)
    throw std::invalid_argument("riesz: axis must be 1 or 2");
  const GridSpec& gr = g.grid;
  SpectralField out(gr);
  for (int k = 0; k < gr.n2; ++k) {
    const int m = gr.mfreq(k);
    for (int i = 0; i < gr.n1; ++i) {
      const int j = gr.jfreq(i);
      const int a = gr.idx(i, k);
      // self-paired Nyquist row of the odd axis stays zero to preserve realness
      if ((axis == 1 && j == -gr.n1 / 2) || (axis == 2 && m == -gr.n2 / 2)) {
        out.coeffs[a] = cplx{};
        continue;
      }
      const double r2 = gr.xi_norm2(j, m);
      if (r2 == 0.0) {
        out.coeffs[a] = cplx{};
        continue;
      }
      const double xi = axis == 1 ? gr.xi1(j) : gr.xi2(m);
      out.coeffs[a] = cplx(0.0, xi / std::sqrt(r2)) * g.coeffs[a];
    }
  }
  return out;
}

SpectralField derivative(const SpectralField& g, int axis) {
  if (axis != 1 && axis != 2)
    throw std::invalid_argument("derivative: axis must be 1 or 2");
  const GridSpec& gr = g.grid;
  SpectralField out(gr);
  for (int k = 0; k < gr.n2; ++k) {
    const int m = gr.mfreq(k);
    for (int i = 0; i < gr.n1; ++i) {
      const int j = gr.jfreq(i);
      const int a = gr.idx(i, k);
      if ((axis == 1 && j == -gr.n1 / 2) || (axis == 2 && m == -gr.n2 / 2)) {
        out.coeffs[a] = cplx{};
        continue;
      }
      const double xi = axis == 1 ? gr.xi1(j) : gr.xi2(m);
      out.coeffs[a] = cplx(0.0, xi) * g.coeffs[a];
    }
  }
  return out;
}

std::pair<SpectralField, SpectralField> velocity_from_theta(
    const SpectralField& theta) {
  SpectralField u1 = riesz(theta, 2);
  for (cplx& c : u1.coeffs) c = -c;
  return {std::move(u1), riesz(theta, 1)};
}

SpectralField horizontal_mean(const SpectralField& g) {
  const GridSpec& gr = g.grid;
  SpectralField out(gr);
  for (int k = 0; k < gr.n2; ++k) out.at(0, k) = g.at(0, k);
  return out;
}

SpectralField dealias(const SpectralField& g) {
  const GridSpec& gr = g.grid;
  const double b1 = gr.n1 / 3.0, b2 = gr.n2 / 3.0;
  SpectralField out(gr);
  for (int k = 0; k < gr.n2; ++k) {
    const int m = gr.mfreq(k);
    for (int i = 0; i < gr.n1; ++i) {
      const int j = gr.jfreq(i);
      const int a = gr.idx(i, k);
      out.coeffs[a] = (std::abs(j) > b1 || std::abs(m) > b2) ? cplx{} : g.coeffs[a];
    }
  }
  return out;
}

double l2_norm(const SpectralField& g) {
  double s = 0.0;
  for (const cplx& c : g.coeffs) s += std::norm(c);
  return std::sqrt(g.grid.domain_area() * s);
}

double l2_norm(const PhysicalField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(f.grid.cell_area() * s);
}

double lp_norm(const PhysicalField& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (p == 2.0) return l2_norm(f);
  double s = 0.0;
  for (double v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(f.grid.cell_area() * s, 1.0 / p);
}

double sobolev_norm(const SpectralField& g, double s) {
  const GridSpec& gr = g.grid;
  double acc = 0.0;
  for (int k = 0; k < gr.n2; ++k) {
    const int m = gr.mfreq(k);
    for (int i = 0; i < gr.n1; ++i) {
      const int j = gr.jfreq(i);
      acc += std::pow(1.0 + gr.xi_norm2(j, m), s) *
             std::norm(g.coeffs[gr.idx(i, k)]);
    }
  }
  return std::sqrt(gr.domain_area() * acc);
}

double hhalf_seminorm(const SpectralField& g) {
  const GridSpec& gr = g.grid;
  double acc = 0.0;
  for (int k = 0; k < gr.n2; ++k) {
    const int m = gr.mfreq(k);
    for (int i = 0; i < gr.n1; ++i)
      acc += std::sqrt(gr.xi_norm2(gr.jfreq(i), m)) *
             std::norm(g.coeffs[gr.idx(i, k)]);
  }
  return std::sqrt(gr.domain_area() * acc);
}

double inner_l2(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "inner_l2");
  double s = 0.0;
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    const cplx &x = a.coeffs[i], &y = b.coeffs[i];
    s += x.real() * y.real() + x.imag() * y.imag();
  }
  return a.grid.domain_area() * s;
}

double conjugate_symmetry_defect(const SpectralField& g) {
  const GridSpec& gr = g.grid;
  double worst = 0.0;
  for (int k = 0; k < gr.n2; ++k) {
    const int kp = (gr.n2 - k) % gr.n2;
    for (int i = 0; i < gr.n1; ++i) {
      const int ip = (gr.n1 - i) % gr.n1;
      worst = std::max(worst,
                       std::abs(g.at(ip, kp) - std::conj(g.at(i, k))));
    }
  }
  return worst;
}

SpectralField scaled(const SpectralField& g, double a) {
  SpectralField out = g;
  for (cplx& c : out.coeffs) c *= a;
  return out;
}

SpectralField axpy(double a, const SpectralField& x, const SpectralField& y) {
  require_same_grid(x.grid, y.grid, "axpy");
  SpectralField out = y;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += a * x.coeffs[i];
  return out;
}

}  // namespace sqg
