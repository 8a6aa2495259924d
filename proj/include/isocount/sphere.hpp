#pragma once

#include <array>
#include <utility>
#include <vector>

#include "isocount/exact.hpp"

namespace isocount {

using Unit3 = std::array<double, 3>;

/// Real spherical harmonic Y_{l,m}, orthonormal for the unit total measure
/// on S^2 (so Y_00 == 1 and the l = 0 coefficient of an expansion is its
/// mean).  m > 0 are the cosine harmonics, m < 0 the sine ones.
double real_spherical_harmonic(int l, int m, const Unit3& u);

struct HarmonicTerm {
  int l = 0;
  int m = 0;
  double coeff = 0;
};

/// Smooth weight as a finite harmonic expansion; the integral against the
/// unit-measure sphere is exactly the constant term.
struct WeightFunction {
  std::vector<HarmonicTerm> terms;

  double eval(const Unit3& u) const;
  double integral() const;
  int max_degree() const;
  /// Spectral image under the great-circle average: odd degrees are
  /// annihilated, degree 2n is scaled by funk_eigenvalue(n).
  WeightFunction funk_image() const;

  static WeightFunction constant(double c) { return {{{0, 0, c}}}; }
  static WeightFunction harmonic(int l, int m, double c = 1.0) {
    return {{{l, m, c}}};
  }
};

struct DirectionSet {
  std::vector<Unit3> points;
};

struct WeylRow {
  int l = 0;
  int m = 0;
  double normalized = 0;  // |sum of Y_{l,m} over the set| / N
};

/// Normalized Weyl sums for 1 <= l <= lmax; smallness across low degrees is
/// the quantitative equidistribution diagnostic.
std::vector<WeylRow> weyl_sums(const DirectionSet& d, int lmax);

/// Eigenvalue of the great-circle average on harmonics of degree 2n:
/// (-1)^n (2n-1)!! / (2n)!!, exactly; n = 0 gives 1.
Rat funk_eigenvalue(int n);

/// Trapezoid average of f over the great circle with pole u (exact for
/// trigonometric polynomials below the aliasing order).
double funk_transform_numeric(const WeightFunction& f, const Unit3& u,
                              int quad_points);

/// (sum over poles of the spectral transform, sum of numeric equator
/// integrals); requires the set closed under antipodes.
std::pair<double, double> equator_pole_consistency(const DirectionSet& d,
                                                   const WeightFunction& f,
                                                   int quad_points = 256);

}  // namespace isocount
