// Transform conventions and multiplier operators, checked against brute-force
// oracles and closed forms on small grids, plus property checks on seeded
// random fields at production sizes.

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "sqg/operators.hpp"
#include "sqg/random_fields.hpp"
#include "sqg/transforms.hpp"

using namespace sqg;

namespace {

PhysicalField sampled(const GridSpec& g, double (*f)(double, double)) {
  PhysicalField out(g);
  for (int k = 0; k < g.n2; ++k)
    for (int i = 0; i < g.n1; ++i) out.at(i, k) = f(g.x1(i), g.x2(k));
  return out;
}

double rel_l2_diff(const SpectralField& a, const SpectralField& b) {
  SpectralField d = axpy(-1.0, a, b);
  const double scale = l2_norm(a);
  return scale > 0.0 ? l2_norm(d) / scale : l2_norm(d);
}

}  // namespace

TEST_CASE("forward transform matches the direct DFT sum on an 8x8 grid") {
  GridSpec g(8, 8, 2.0 * kPi, kPi);
  PhysicalField f(g);
  // deterministic, non-symmetric values
  for (int k = 0; k < g.n2; ++k)
    for (int i = 0; i < g.n1; ++i)
      f.at(i, k) = std::sin(3.0 * g.x1(i) + 0.7) * std::cos(2.0 * g.x2(k)) +
                   0.25 * std::cos(g.x1(i) * 2.0 - g.x2(k));
  SpectralField fast = forward_transform(f);
  SpectralField slow = oracle::dft_forward(f);
  CHECK(oracle::max_coeff_diff(fast, slow) < 1e-13);

  PhysicalField back = oracle::dft_inverse(fast);
  CHECK(oracle::max_value_diff(back, inverse_transform(fast)) < 1e-12);
}

TEST_CASE("constant field maps to coefficient 1 at the zero mode") {
  GridSpec g(16, 32);
  PhysicalField one(g);
  for (double& v : one.values) v = 1.0;
  SpectralField c = forward_transform(one);
  CHECK(std::abs(c.at(0, 0) - cplx(1.0, 0.0)) < 1e-14);
  double rest = 0.0;
  for (size_t t = 1; t < c.coeffs.size(); ++t) rest += std::abs(c.coeffs[t]);
  CHECK(rest < 1e-12);
}

TEST_CASE("cos(x1) has coefficients 1/2 at (+-1, 0)") {
  GridSpec g(32, 16);
  PhysicalField f = sampled(g, [](double x1, double) { return std::cos(x1); });
  SpectralField c = forward_transform(f);
  CHECK(std::abs(c.mode(1, 0) - cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(c.mode(-1, 0) - cplx(0.5, 0.0)) < 1e-14);
  double rest = 0.0;
  for (int k = 0; k < g.n2; ++k)
    for (int i = 0; i < g.n1; ++i)
      if (!(k == 0 && (i == 1 || i == g.n1 - 1)))
        rest = std::max(rest, std::abs(c.at(i, k)));
  CHECK(rest < 1e-14);
}

TEST_CASE("round-trip and Parseval on seeded random fields") {
  for (GridSpec g : {GridSpec(64, 128), GridSpec(128, 256)}) {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      RandomFieldOptions opt;
      opt.mean_free = false;
      SpectralField c = random_real_field(g, seed, opt);
      PhysicalField f = inverse_transform(c);
      SpectralField c2 = forward_transform(f);
      CHECK(rel_l2_diff(c, c2) < 1e-12);
      // physical quadrature norm vs weighted coefficient norm
      CHECK(std::abs(l2_norm(f) - l2_norm(c)) < 1e-12 * l2_norm(c));
      CHECK(conjugate_symmetry_defect(c2) < 1e-15);
    }
  }
}

TEST_CASE("fractional laplacian: closed forms and zero-mode convention") {
  GridSpec g(32, 32, 2.0 * kPi, kPi);  // xi2 integer on this grid

  SUBCASE("single mode |xi| = sqrt(2) scales by |xi|^s") {
    PhysicalField f =
        sampled(g, [](double a, double b) { return std::cos(a + b); });
    SpectralField c = forward_transform(f);
    for (double s : {1.0, 0.5, -1.0, 2.0}) {
      SpectralField out = fractional_laplacian(c, s);
      const double want = std::pow(std::sqrt(2.0), s) * 0.5;
      CHECK(std::abs(out.mode(1, 1) - cplx(want, 0.0)) < 1e-13);
      CHECK(std::abs(out.mode(-1, -1) - cplx(want, 0.0)) < 1e-13);
    }
  }

  SUBCASE("zero mode is sent to zero for s > 0") {
    PhysicalField f =
        sampled(g, [](double a, double) { return 2.0 + std::cos(a); });
    SpectralField out = fractional_laplacian(forward_transform(f), 1.0);
    CHECK(out.at(0, 0) == cplx{});
  }

  SUBCASE("negative power demands a mean-free field") {
    PhysicalField f = sampled(g, [](double, double) { return 1.0; });
    CHECK_THROWS_WITH_AS(fractional_laplacian(forward_transform(f), -1.0),
                         "fractional inverse of non-mean-free field",
                         std::invalid_argument);
  }

  SUBCASE("half laplacian composed twice equals the full laplacian") {
    SpectralField c = random_real_field(g, 77);
    SpectralField twice =
        fractional_laplacian(fractional_laplacian(c, 0.5), 0.5);
    SpectralField once = fractional_laplacian(c, 1.0);
    CHECK(rel_l2_diff(once, twice) < 1e-12);
  }
}

TEST_CASE("riesz transforms") {
  GridSpec g(32, 16);

  SUBCASE("R1 cos(x1) = -sin(x1)") {
    PhysicalField f = sampled(g, [](double a, double) { return std::cos(a); });
    PhysicalField want =
        sampled(g, [](double a, double) { return -std::sin(a); });
    PhysicalField got = inverse_transform(riesz(forward_transform(f), 1));
    CHECK(oracle::max_value_diff(got, want) < 1e-13);
  }

  SUBCASE("isometry off the mean: ||R1 g||^2 + ||R2 g||^2 = ||g - mean||^2") {
    GridSpec big(64, 128);
    for (std::uint64_t seed : {21u, 22u}) {
      RandomFieldOptions opt;
      opt.mean_free = false;
      SpectralField c = random_real_field(big, seed, opt);
      SpectralField mf = axpy(-1.0, horizontal_mean(c), c);
      // remove the full mean, not just the zonal sector: the identity is
      // against the zero mode only
      SpectralField m0(big);
      m0.at(0, 0) = c.at(0, 0);
      SpectralField nomean = axpy(-1.0, m0, c);
      const double lhs = std::pow(l2_norm(riesz(c, 1)), 2) +
                         std::pow(l2_norm(riesz(c, 2)), 2);
      const double rhs = std::pow(l2_norm(nomean), 2);
      CHECK(std::abs(lhs - rhs) < 1e-12 * rhs);
      (void)mf;
    }
  }

  SUBCASE("R_i equals d_i Lambda^{-1} on mean-free fields") {
    GridSpec big(64, 128);
    SpectralField c = random_real_field(big, 23);
    for (int axis : {1, 2}) {
      SpectralField direct = riesz(c, axis);
      SpectralField composed = derivative(fractional_laplacian(c, -1.0), axis);
      CHECK(rel_l2_diff(direct, composed) < 1e-12);
    }
  }
}

TEST_CASE("velocity from theta is divergence-free") {
  GridSpec g(64, 128);
  SpectralField theta = random_real_field(g, 31);
  auto [u1, u2] = velocity_from_theta(theta);
  SpectralField div = axpy(1.0, derivative(u1, 1), derivative(u2, 2));
  const double grad_scale =
      l2_norm(derivative(u1, 1)) + l2_norm(derivative(u2, 2));
  CHECK(l2_norm(div) < 1e-12 * std::max(1.0, grad_scale));

  // u2 = R1 theta carries no zonal content
  for (int k = 0; k < g.n2; ++k) CHECK(u2.at(0, k) == cplx{});
}

TEST_CASE("horizontal mean: quadrature oracle, idempotence") {
  GridSpec g(32, 64);
  RandomFieldOptions opt;
  opt.mean_free = false;
  SpectralField c = random_real_field(g, 41, opt);
  PhysicalField f = inverse_transform(c);
  SpectralField zc = horizontal_mean(c);
  PhysicalField z = inverse_transform(zc);

  // row averages of point values match the zonal projection at each height
  for (int k = 0; k < g.n2; ++k) {
    double row = 0.0;
    for (int i = 0; i < g.n1; ++i) row += f.at(i, k);
    row /= g.n1;
    for (int i = 0; i < g.n1; ++i) CHECK(std::abs(z.at(i, k) - row) < 1e-13);
  }

  SpectralField zz = horizontal_mean(zc);
  CHECK(std::memcmp(zz.coeffs.data(), zc.coeffs.data(),
                    zc.coeffs.size() * sizeof(cplx)) == 0);
}

TEST_CASE("dealias: retained mode count and fine-grid product oracle") {
  SUBCASE("count") {
    for (GridSpec g : {GridSpec(8, 8, 2.0 * kPi, kPi), GridSpec(32, 64),
                       GridSpec(48, 96)}) {
      SpectralField ones(g);
      for (cplx& c : ones.coeffs) c = cplx(1.0, 0.0);
      SpectralField cut = dealias(ones);
      int kept = 0;
      for (const cplx& c : cut.coeffs)
        if (c != cplx{}) ++kept;
      const int want = (2 * (g.n1 / 3) + 1) * (2 * (g.n2 / 3) + 1);
      CHECK(kept == want);
    }
  }

  SUBCASE("product of band-limited fields matches the alias-free oracle") {
    GridSpec g(32, 32, 2.0 * kPi, kPi);
    RandomFieldOptions opt;
    opt.band_hi = g.n1 / 3.0;  // keep |xi| strictly under the retained band
    SpectralField a = random_real_field(g, 51, opt);
    SpectralField b = random_real_field(g, 52, opt);
    a = dealias(a);
    b = dealias(b);
    PhysicalField fa = inverse_transform(a), fb = inverse_transform(b);
    PhysicalField prod(g);
    for (size_t t = 0; t < prod.values.size(); ++t)
      prod.values[t] = fa.values[t] * fb.values[t];
    SpectralField lhs = dealias(forward_transform(prod));
    SpectralField rhs = dealias(oracle::fine_grid_product(a, b));
    CHECK(oracle::max_coeff_diff(lhs, rhs) < 1e-12);
  }

  SUBCASE("grid product equals the wrapped convolution sum") {
    GridSpec g(8, 8, 2.0 * kPi, kPi);
    RandomFieldOptions opt;
    opt.mean_free = false;
    SpectralField a = random_real_field(g, 53, opt);
    SpectralField b = random_real_field(g, 54, opt);
    PhysicalField fa = inverse_transform(a), fb = inverse_transform(b);
    PhysicalField prod(g);
    for (size_t t = 0; t < prod.values.size(); ++t)
      prod.values[t] = fa.values[t] * fb.values[t];
    SpectralField fast = forward_transform(prod);
    SpectralField slow = oracle::convolution(a, b);
    CHECK(oracle::max_coeff_diff(fast, slow) < 1e-10);
  }
}

TEST_CASE("multiplier operators commute pairwise") {
  GridSpec g(32, 64);
  SpectralField c = random_real_field(g, 61);
  using Op = SpectralField (*)(const SpectralField&);
  Op ops[] = {
      [](const SpectralField& x) { return fractional_laplacian(x, 0.5); },
      [](const SpectralField& x) { return fractional_laplacian(x, 1.0); },
      [](const SpectralField& x) { return riesz(x, 1); },
      [](const SpectralField& x) { return riesz(x, 2); },
      [](const SpectralField& x) { return horizontal_mean(x); },
      [](const SpectralField& x) { return dealias(x); },
  };
  for (Op f : ops)
    for (Op h : ops) {
      SpectralField ab = f(h(c));
      SpectralField ba = h(f(c));
      CHECK(oracle::max_coeff_diff(ab, ba) < 1e-12);
    }
}

TEST_CASE("Lp norms against exact integrals of a positive trigonometric field") {
  GridSpec g(64, 32);
  PhysicalField f =
      sampled(g, [](double a, double) { return 2.0 + std::cos(a); });
  const double area = g.domain_area();
  CHECK(std::abs(lp_norm(f, 1.0) - 2.0 * area) < 1e-12 * area);
  // int (2+cos)^2 = (4 + 1/2) |Omega|
  CHECK(std::abs(std::pow(lp_norm(f, 2.0), 2) - 4.5 * area) < 1e-11 * area);
  // int (2+cos)^3 = (8 + 6/2) |Omega| = 11 |Omega|
  CHECK(std::abs(std::pow(lp_norm(f, 3.0), 3) - 11.0 * area) < 1e-10 * area);
  CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(GridSpec(7, 8), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(8, 2), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(8, 8, -1.0, kPi), std::invalid_argument);

  GridSpec g(8, 8, 2.0 * kPi, kPi);
  PhysicalField f(g);
  f.values[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(forward_transform(f), std::invalid_argument);

  SpectralField a(g);
  SpectralField b(GridSpec(16, 8, 2.0 * kPi, kPi));
  CHECK_THROWS_AS(inner_l2(a, b), std::invalid_argument);
  CHECK_THROWS_AS(riesz(a, 3), std::invalid_argument);
}
