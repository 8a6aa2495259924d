#include "isocount/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace isocount {

namespace {

// fully normalized associated Legendre values P(l, m) for all l <= lmax at
// fixed m, w.r.t. the unit-measure sphere (geodesy normalization)
void legendre_column(int lmax, int m, double ct, double st,
                     std::vector<double>& out) {
  out.assign(lmax + 1, 0.0);
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k)
    pmm *= st * std::sqrt((2.0 * k + 1.0) / (2.0 * k));
  if (m <= lmax) out[m] = pmm;
  if (m + 1 <= lmax) out[m + 1] = std::sqrt(2.0 * m + 3.0) * ct * pmm;
  for (int l = m + 2; l <= lmax; ++l) {
    double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
    double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) /
                         (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
    out[l] = a * (ct * out[l - 1] - b * out[l - 2]);
  }
}

void check_unit(const Unit3& u) {
  double n2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  if (std::abs(n2 - 1.0) > 1e-9)
    throw PreconditionError("spherical harmonic: input not a unit vector");
}

}  // namespace

double real_spherical_harmonic(int l, int m, const Unit3& u) {
  if (l < 0 || std::abs(m) > l)
    throw PreconditionError("real_spherical_harmonic: need |m| <= l");
  check_unit(u);
  const double ct = std::clamp(u[2], -1.0, 1.0);
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double phi = std::atan2(u[1], u[0]);
  const int am = std::abs(m);
  std::vector<double> col;
  legendre_column(l, am, ct, st, col);
  double p = col[l];
  if (m == 0) return p;
  double t = (m > 0) ? std::cos(am * phi) : std::sin(am * phi);
  return std::sqrt(2.0) * p * t;
}

double WeightFunction::eval(const Unit3& u) const {
  double s = 0;
  for (const HarmonicTerm& t : terms)
    s += t.coeff * real_spherical_harmonic(t.l, t.m, u);
  return s;
}

double WeightFunction::integral() const {
  double s = 0;
  for (const HarmonicTerm& t : terms)
    if (t.l == 0) s += t.coeff;
  return s;
}

int WeightFunction::max_degree() const {
  int d = 0;
  for (const HarmonicTerm& t : terms) d = std::max(d, t.l);
  return d;
}

WeightFunction WeightFunction::funk_image() const {
  WeightFunction out;
  for (const HarmonicTerm& t : terms) {
    if (t.l % 2 != 0) continue;  // odd harmonics are annihilated
    double lambda = funk_eigenvalue(t.l / 2).get_d();
    out.terms.push_back({t.l, t.m, t.coeff * lambda});
  }
  return out;
}

std::vector<WeylRow> weyl_sums(const DirectionSet& d, int lmax) {
  if (d.points.empty()) throw PreconditionError("weyl_sums: empty set");
  std::vector<WeylRow> rows;
  for (int l = 1; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m) rows.push_back({l, m, 0.0});
  for (const Unit3& u : d.points) {
    size_t idx = 0;
    for (int l = 1; l <= lmax; ++l)
      for (int m = -l; m <= l; ++m)
        rows[idx++].normalized += real_spherical_harmonic(l, m, u);
  }
  const double n = static_cast<double>(d.points.size());
  for (WeylRow& r : rows) r.normalized = std::abs(r.normalized) / n;
  return rows;
}

Rat funk_eigenvalue(int n) {
  if (n < 0) throw PreconditionError("funk_eigenvalue: n >= 0");
  Rat v(1);
  for (int i = 1; i <= n; ++i) v *= Rat(2 * i - 1, 2 * i);
  return (n % 2 == 0) ? v : -v;
}

double funk_transform_numeric(const WeightFunction& f, const Unit3& u,
                              int quad_points) {
  if (quad_points < 8)
    throw PreconditionError("funk_transform_numeric: need >= 8 points");
  check_unit(u);
  // orthonormal pair spanning the equator plane of u
  Unit3 h = (std::abs(u[0]) < 0.9) ? Unit3{1, 0, 0} : Unit3{0, 1, 0};
  double hu = h[0] * u[0] + h[1] * u[1] + h[2] * u[2];
  Unit3 v{h[0] - hu * u[0], h[1] - hu * u[1], h[2] - hu * u[2]};
  double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  for (double& x : v) x /= vn;
  Unit3 w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
  double acc = 0;
  const double step = 6.283185307179586 / quad_points;
  for (int k = 0; k < quad_points; ++k) {
    double c = std::cos(k * step), s = std::sin(k * step);
    Unit3 x{c * v[0] + s * w[0], c * v[1] + s * w[1], c * v[2] + s * w[2]};
    acc += f.eval(x);
  }
  return acc / quad_points;
}

std::pair<double, double> equator_pole_consistency(const DirectionSet& d,
                                                   const WeightFunction& f,
                                                   int quad_points) {
  // the set must come in antipodal pairs
  std::vector<Unit3> sorted = d.points;
  std::sort(sorted.begin(), sorted.end());
  for (const Unit3& u : d.points) {
    Unit3 nu{-u[0], -u[1], -u[2]};
    auto it = std::lower_bound(sorted.begin(), sorted.end(),
                               Unit3{nu[0] - 1e-9, nu[1] - 1e-9, nu[2] - 1e-9});
    bool found = false;
    for (; it != sorted.end() && (*it)[0] <= nu[0] + 1e-9; ++it) {
      if (std::abs((*it)[1] - nu[1]) <= 1e-9 && std::abs((*it)[2] - nu[2]) <= 1e-9) {
        found = true;
        break;
      }
    }
    if (!found)
      throw PreconditionError("equator_pole_consistency: set not closed under antipodes");
  }
  WeightFunction ff = f.funk_image();
  double pole_sum = 0, equator_sum = 0;
  for (const Unit3& u : d.points) {
    pole_sum += ff.eval(u);
    equator_sum += funk_transform_numeric(f, u, quad_points);
  }
  return {pole_sum, equator_sum};
}

}  // namespace isocount
