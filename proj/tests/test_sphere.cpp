#include <doctest.h>

#include <cmath>
#include <vector>

#include "isocount/sphere.hpp"

using namespace isocount;

namespace {

constexpr double kPi = 3.14159265358979323846;

Unit3 sph(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

// Gauss-Legendre nodes/weights on [-1, 1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
      }
      double dp = n * (t * p0 - p1) / (t * t - 1);
      double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1, p1 = 0;
    for (int j = 0; j < n; ++j) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
    }
    double dp = n * (t * p0 - p1) / (t * t - 1);
    x[i] = t;
    w[i] = 2.0 / ((1 - t * t) * dp * dp);
  }
}

std::vector<Unit3> fibonacci_sphere(int n) {
  std::vector<Unit3> pts;
  const double ga = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.push_back({r * std::cos(ga * i), r * std::sin(ga * i), z});
  }
  return pts;
}

}  // namespace

TEST_CASE("harmonic point values") {
  CHECK(real_spherical_harmonic(0, 0, sph(0.7, 1.1)) == doctest::Approx(1.0));
  CHECK(real_spherical_harmonic(1, 0, {0, 0, 1}) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(real_spherical_harmonic(1, 2, {0, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(real_spherical_harmonic(1, 0, {0, 0, 2}), PreconditionError);
}

TEST_CASE("parity identity") {
  for (int l = 0; l <= 5; ++l)
    for (int m = -l; m <= l; ++m) {
      Unit3 u = sph(1.234, 0.567);
      Unit3 nu{-u[0], -u[1], -u[2]};
      double a = real_spherical_harmonic(l, m, u);
      double b = real_spherical_harmonic(l, m, nu);
      CHECK(b == doctest::Approx((l % 2 == 0 ? 1 : -1) * a).epsilon(1e-10));
    }
}

TEST_CASE("orthonormality under the unit-measure product grid") {
  std::vector<double> gx, gw;
  gauss_legendre(48, gx, gw);
  const int mphi = 64;
  // collect (l, m) pairs up to degree 6
  std::vector<std::pair<int, int>> lm;
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m) lm.push_back({l, m});
  for (size_t a = 0; a < lm.size(); ++a)
    for (size_t b = a; b < lm.size(); ++b) {
      double acc = 0;
      for (int i = 0; i < 48; ++i) {
        double st = std::sqrt(std::max(0.0, 1 - gx[i] * gx[i]));
        double row = 0;
        for (int j = 0; j < mphi; ++j) {
          double phi = 2 * kPi * j / mphi;
          Unit3 u{st * std::cos(phi), st * std::sin(phi), gx[i]};
          row += real_spherical_harmonic(lm[a].first, lm[a].second, u) *
                 real_spherical_harmonic(lm[b].first, lm[b].second, u);
        }
        acc += gw[i] * row / mphi;
      }
      acc /= 2;  // unit total measure
      double want = (a == b) ? 1.0 : 0.0;
      CHECK(std::abs(acc - want) < 1e-8);
    }
}

TEST_CASE("weyl sums") {
  SUBCASE("single north pole point") {
    DirectionSet d{{{0, 0, 1}}};
    auto rows = weyl_sums(d, 2);
    for (const auto& r : rows)
      if (r.l == 1 && r.m == 0)
        CHECK(r.normalized == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  }
  SUBCASE("antipodal symmetry kills odd degrees") {
    DirectionSet d;
    auto pts = fibonacci_sphere(64);
    for (const Unit3& u : pts) {
      d.points.push_back(u);
      d.points.push_back({-u[0], -u[1], -u[2]});
    }
    for (const auto& r : weyl_sums(d, 4))
      if (r.l % 2 == 1) CHECK(r.normalized < 1e-9);
  }
  SUBCASE("quasi-uniform points equidistribute") {
    DirectionSet d{fibonacci_sphere(10000)};
    for (const auto& r : weyl_sums(d, 4)) CHECK(r.normalized < 0.05);
  }
  SUBCASE("empty set rejected") {
    CHECK_THROWS_AS(weyl_sums(DirectionSet{}, 2), PreconditionError);
  }
}

TEST_CASE("great-circle average eigenvalues") {
  CHECK(funk_eigenvalue(0) == Rat(1));
  CHECK(funk_eigenvalue(1) == Rat(-1, 2));
  CHECK(funk_eigenvalue(2) == Rat(3, 8));
  CHECK_THROWS_AS(funk_eigenvalue(-1), PreconditionError);
}

TEST_CASE("numeric transform reproduces the spectrum") {
  SUBCASE("degree 2 at the pole") {
    WeightFunction f = WeightFunction::harmonic(2, 0);
    Unit3 north{0, 0, 1};
    double got = funk_transform_numeric(f, north, 256);
    double want = funk_eigenvalue(1).get_d() * f.eval(north);
    CHECK(std::abs(got - want) < 1e-6);
  }
  SUBCASE("odd harmonics are annihilated") {
    for (int m = -1; m <= 1; ++m) {
      WeightFunction f = WeightFunction::harmonic(1, m);
      CHECK(std::abs(funk_transform_numeric(f, sph(0.9, 2.1), 256)) < 1e-6);
    }
  }
  SUBCASE("constants are fixed") {
    WeightFunction one = WeightFunction::constant(1.0);
    CHECK(funk_transform_numeric(one, sph(0.4, 0.3), 64) == doctest::Approx(1.0));
  }
  SUBCASE("spectrum up to degree 6 at 512 points") {
    for (int n = 0; n <= 3; ++n) {
      for (int m = -2 * n; m <= 2 * n; m += std::max(1, n)) {
        WeightFunction f = WeightFunction::harmonic(2 * n, m);
        Unit3 u = sph(1.1, 0.7);
        double fu = f.eval(u);
        if (std::abs(fu) < 1e-3) continue;
        double got = funk_transform_numeric(f, u, 512);
        CHECK(std::abs(got / fu - funk_eigenvalue(n).get_d()) < 1e-6);
      }
    }
  }
  SUBCASE("too few quadrature points rejected") {
    CHECK_THROWS_AS(
        funk_transform_numeric(WeightFunction::constant(1), {0, 0, 1}, 4),
        PreconditionError);
  }
}

TEST_CASE("equator/pole consistency") {
  DirectionSet d;
  for (const Unit3& u : fibonacci_sphere(40)) {
    d.points.push_back(u);
    d.points.push_back({-u[0], -u[1], -u[2]});
  }
  SUBCASE("even harmonic: both routes agree") {
    WeightFunction f = WeightFunction::harmonic(2, 1);
    auto [poles, equators] = equator_pole_consistency(d, f, 256);
    CHECK(std::abs(poles - equators) <= 1e-6 * (1 + std::abs(poles)));
  }
  SUBCASE("odd harmonic: both routes vanish") {
    WeightFunction f = WeightFunction::harmonic(3, 0);
    auto [poles, equators] = equator_pole_consistency(d, f, 256);
    CHECK(std::abs(poles) < 1e-9);
    CHECK(std::abs(equators) < 1e-7);
  }
  SUBCASE("constants count the set") {
    WeightFunction f = WeightFunction::constant(1.0);
    auto [poles, equators] = equator_pole_consistency(d, f, 64);
    CHECK(poles == doctest::Approx(static_cast<double>(d.points.size())));
    CHECK(equators == doctest::Approx(static_cast<double>(d.points.size())));
  }
  SUBCASE("non-antipodal set rejected") {
    DirectionSet bad{{{0, 0, 1}, {1, 0, 0}}};
    CHECK_THROWS_AS(equator_pole_consistency(bad, WeightFunction::constant(1)),
                    PreconditionError);
  }
}
