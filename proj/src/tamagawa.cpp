#include "isocount/tamagawa.hpp"

#include <cmath>
#include <numbers>

namespace isocount {

ZetaValue zeta_with_bound(int s, double tol) {
  if (s < 2) throw PreconditionError("zeta: s >= 2 required");
  if (tol <= 0) throw PreconditionError("zeta: tolerance must be positive");
  // remainder after k terms lies in [((k+1)^(1-s))/(s-1), (k^(1-s))/(s-1)];
  // return the midpoint so the bound is the half-width
  auto tail_hi = [&](double k) { return std::pow(k, 1.0 - s) / (s - 1); };
  auto tail_lo = [&](double k) { return std::pow(k + 1.0, 1.0 - s) / (s - 1); };
  long k = 2;
  while ((tail_hi(static_cast<double>(k)) - tail_lo(static_cast<double>(k))) / 2 > tol / 2 &&
         k < 100'000'000L)
    k = k * 3 / 2 + 1;
  double sum = 0;
  for (long i = k; i >= 1; --i) sum += std::pow(static_cast<double>(i), -s);
  double lo = tail_lo(static_cast<double>(k)), hi = tail_hi(static_cast<double>(k));
  ZetaValue z;
  z.value = sum + (lo + hi) / 2;
  z.bound = (hi - lo) / 2 + 8 * 2.22e-16 * sum;
  ISOCOUNT_CHECK(z.bound <= tol, "zeta tail bound exceeds tolerance");
  return z;
}

Int orthogonal_group_order(int l, bool split, const Int& p) {
  if (l < 1) throw PreconditionError("group order: l >= 1");
  if (p == 2 || p % 2 == 0)
    throw PreconditionError("group order: odd p only (p = 2 is oracle-only)");
  Int order = 2;
  Int pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(l) * (l - 1));
  order *= pk;
  Int pl;
  mpz_pow_ui(pl.get_mpz_t(), p.get_mpz_t(), l);
  order *= split ? Int(pl - 1) : Int(pl + 1);
  for (int i = 1; i <= l - 1; ++i) {
    Int p2i;
    mpz_pow_ui(p2i.get_mpz_t(), p.get_mpz_t(), 2u * i);
    order *= (p2i - 1);
  }
  return order;
}

Int orthogonal_group_order_odd(int l, const Int& p) {
  if (l < 0) throw PreconditionError("group order: l >= 0");
  if (p == 2 || p % 2 == 0) throw PreconditionError("group order: odd p only");
  Int order = 2;
  Int pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(l) * l);
  order *= pk;
  for (int i = 1; i <= l; ++i) {
    Int p2i;
    mpz_pow_ui(p2i.get_mpz_t(), p.get_mpz_t(), 2u * i);
    order *= (p2i - 1);
  }
  return order;
}

bool split_type_mod_p(const Mat<i64>& gram, long p) {
  const int n = gram.rows;
  if (n % 2 != 0) throw PreconditionError("split type: even rank only");
  Int det = det_bareiss(to_int_mat(gram));
  Int pp(p);
  Int disc = det;
  if ((n / 2) % 2 == 1) disc = -disc;
  Int r = disc % pp;
  if (r < 0) r += pp;
  ISOCOUNT_CHECK(r != 0, "form is not unimodular at p");
  // Euler criterion
  Int e;
  mpz_powm_ui(e.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2),
              pp.get_mpz_t());
  return e == 1;
}

Rat local_volume(const Mat<i64>& gram, long p) {
  if (p == 2) throw PreconditionError("local volume: p = 2 is folded into the rational factor");
  const int n = gram.rows;
  Int order;
  if (n % 2 == 0)
    order = orthogonal_group_order(n / 2, split_type_mod_p(gram, p), Int(p));
  else
    order = orthogonal_group_order_odd((n - 1) / 2, Int(p));
  Int pdim;
  mpz_pow_ui(pdim.get_mpz_t(), Int(p).get_mpz_t(),
             static_cast<unsigned long>(n) * (n - 1) / 2);
  Rat v(order, pdim);
  v.canonicalize();
  ISOCOUNT_CHECK(v > 0 && v <= 2, "local volume must lie in (0, 2]");
  return v;
}

std::vector<long> primes_up_to(long n) {
  std::vector<bool> sieve(n + 1, true);
  std::vector<long> out;
  for (long i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (long j = 2 * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

double euler_ratio_product(const GramLattice& l, long cutoff) {
  if (l.rank < 4) throw PreconditionError("euler product: rank >= 4 required");
  if (l.determinant != 1 && l.determinant != -1)
    throw PreconditionError("euler product: unimodular forms only");
  // complement of one hyperbolic plane: det flips sign, rank drops by 2
  const int n = l.rank;
  Int det_sub = -l.determinant;
  double prod = 1.0;
  for (long p : primes_up_to(cutoff)) {
    if (p == 2) continue;
    Rat vn = local_volume(l.gram, p);
    // rank n-2 volume from the formulas directly (type from the complement
    // discriminant)
    Int disc = det_sub;
    if (((n - 2) / 2) % 2 == 1) disc = -disc;
    Int pp(p), r = disc % pp;
    if (r < 0) r += pp;
    Int e;
    mpz_powm_ui(e.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2),
                pp.get_mpz_t());
    Int order = orthogonal_group_order((n - 2) / 2, e == 1, pp);
    Int pdim;
    mpz_pow_ui(pdim.get_mpz_t(), pp.get_mpz_t(),
               static_cast<unsigned long>(n - 2) * (n - 3) / 2);
    Rat vsub(order, pdim);
    vsub.canonicalize();
    Rat factor = vn / vsub;
    prod *= factor.get_d();
  }
  return prod;
}

ConstantReport make_constant_report(double fitted_c, double fitted_c_stderr,
                                    long prime_cutoff) {
  ConstantReport rep;
  rep.prime_cutoff = prime_cutoff;
  for (int s : {2, 4, 6, 11}) rep.zeta_values[s] = zeta_with_bound(s, 1e-12);
  const double pi = std::numbers::pi;
  rep.family_value = 1.0 / (std::pow(pi, 20) * rep.zeta_values[11].value);

  GramLattice k3 = k3_lattice();
  rep.truncated_product = euler_ratio_product(k3, prime_cutoff);
  // the factors are 1 + O(p^{-10}); crude but rigorous tail estimate
  rep.truncation_bound = 4.0 * std::pow(static_cast<double>(prime_cutoff), -9.0);
  for (long p : primes_up_to(std::min<long>(prime_cutoff, 100)))
    if (p != 2)
      rep.local_volumes.push_back({p, local_volume(k3.gram, p).get_d()});

  rep.fitted_c = fitted_c;
  rep.fitted_c_stderr = fitted_c_stderr;
  if (fitted_c <= 0) {
    rep.degenerate = true;
    rep.fitted_ratio = 0;
    rep.fitted_ratio_stderr = 0;
  } else {
    rep.fitted_ratio = fitted_c / rep.family_value;
    rep.fitted_ratio_stderr = fitted_c_stderr / rep.family_value;
  }
  return rep;
}

}  // namespace isocount
