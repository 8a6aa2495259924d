#pragma once

#include <map>
#include <string>
#include <vector>

#include "isocount/lattice.hpp"

namespace isocount {

struct ZetaValue {
  double value = 0;
  double bound = 0;  // rigorous remainder bound from the integral tail
};

/// Partial sums plus an integral tail estimate; bound <= tol.
ZetaValue zeta_with_bound(int s, double tol = 1e-12);

/// |O^eps_{2l}(F_p)| by the closed-form product
///   2 p^{l(l-1)} (p^l -+ 1) prod_{i<l} (p^{2i} - 1),
/// split == true picks the plus (split) type and the minus sign.  p odd.
Int orthogonal_group_order(int l, bool split, const Int& p);

/// |O_{2l+1}(F_p)| = 2 p^{l^2} prod_{i<=l} (p^{2i} - 1).  p odd.
Int orthogonal_group_order_odd(int l, const Int& p);

/// Whether the reduction of the form mod p is the split (plus) type:
/// (-1)^(n/2) det is a nonzero square mod p.  Even rank, p odd, p not
/// dividing det.
bool split_type_mod_p(const Mat<i64>& gram, long p);

/// p^{-dim O} * #O(F_p) as an exact rational; dim O = n(n-1)/2.
Rat local_volume(const Mat<i64>& gram, long p);

/// The convergent local part of the counting constant: the product over
/// odd primes p <= cutoff of vol_n(p) / vol_{n-2}(p), where the rank n-2
/// form is the complement of a hyperbolic plane.  Factors are
/// 1 + O(p^{-(n/2-1)}), so truncations converge fast and increase
/// monotonically for the split/split case.
double euler_ratio_product(const GramLattice& l, long cutoff);

struct ConstantReport {
  std::map<int, ZetaValue> zeta_values;
  std::vector<std::pair<long, double>> local_volumes;  // (p, local volume)
  double truncated_product = 0;
  double truncation_bound = 0;
  long prime_cutoff = 0;
  double family_value = 0;   // 1 / (pi^20 zeta(11))
  double fitted_c = 0;
  double fitted_c_stderr = 0;
  double fitted_ratio = 0;   // fitted_c / family_value, the empirical
                             // rational-factor candidate (no exactness claim)
  double fitted_ratio_stderr = 0;
  bool degenerate = false;   // fitted_c <= 0
};

/// Assembles the constant-family report for the rank-22 counting run.
ConstantReport make_constant_report(double fitted_c, double fitted_c_stderr,
                                    long prime_cutoff);

std::vector<long> primes_up_to(long n);

}  // namespace isocount
