#include "isocount/orbit.hpp"

#include <algorithm>

namespace isocount {

namespace {

Mat<Int> gram_int(const GramLattice& l) { return to_int_mat(l.gram); }

ZVec unit_vec(int n, int i) {
  ZVec v(n, Int(0));
  v[i] = 1;
  return v;
}

// the first two 2x2 blocks must be hyperbolic planes split off orthogonally
void check_two_hyperbolic_blocks(const GramLattice& l) {
  if (!l.even) throw PreconditionError("reduction: lattice must be even");
  if (l.rank < 5)
    throw PreconditionError("reduction: need two hyperbolic blocks plus a complement");
  auto g = [&](int i, int j) { return l.gram(i, j); };
  for (int b = 0; b < 2; ++b) {
    int o = 2 * b;
    if (g(o, o) != 0 || g(o + 1, o + 1) != 0 || g(o, o + 1) != 1)
      throw PreconditionError("reduction: leading blocks are not hyperbolic planes");
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 4; j < l.rank; ++j)
      if (g(i, j) != 0)
        throw PreconditionError("reduction: hyperbolic blocks are not split off");
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j)
      if (g(i, j) != 0)
        throw PreconditionError("reduction: hyperbolic blocks are not orthogonal");
}

// sublattice on basis indices [from, n): Gram restriction
GramLattice sub_lattice(const GramLattice& l, int from) {
  Mat<i64> g(l.rank - from, l.rank - from);
  for (int i = from; i < l.rank; ++i)
    for (int j = from; j < l.rank; ++j) g(i - from, j - from) = l.gram(i, j);
  return make_lattice(std::move(g));
}

Int round_div(const Int& a, const Int& b) {
  // nearest integer to a/b
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += (b > 0 ? 1 : -1);
  return q;
}

}  // namespace

bool verify_isometry(const GramLattice& l, const Mat<Int>& m) {
  if (m.rows != l.rank || m.cols != l.rank) return false;
  Mat<Int> g = gram_int(l);
  return mul(mul(transpose(m), g), m) == g;
}

Isometry identity_isometry(const GramLattice& l) {
  return {Mat<Int>::identity(l.rank), {}};
}

Isometry eichler_transvection(const GramLattice& l, const ZVec& f, const ZVec& a) {
  const int n = l.rank;
  if (!l.even) throw PreconditionError("transvection: lattice must be even");
  if (quadratic_value(l, f) != 0)
    throw PreconditionError("transvection: q(f) = " +
                            quadratic_value(l, f).get_str() + ", need 0");
  Int fa = bilinear_value(l, f, a);
  if (fa != 0)
    throw PreconditionError("transvection: f.a = " + fa.get_str() + ", need 0");
  Int qa = quadratic_value(l, a);
  Int half_qa = qa / 2;

  ZVec gf = mul(gram_int(l), f), ga = mul(gram_int(l), a);
  Mat<Int> m = Mat<Int>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) += -f[i] * ga[j] + a[i] * gf[j] - half_qa * f[i] * gf[j];
  ISOCOUNT_CHECK(verify_isometry(l, m), "transvection must preserve the form");
  ISOCOUNT_CHECK(mul(m, f) == f, "transvection must fix f");
  Isometry iso{std::move(m), {}};
  iso.provenance.push_back({GenStep::Kind::transvection, f, a});
  return iso;
}

Isometry compose(const GramLattice& l, const Isometry& after, const Isometry& first) {
  Isometry out{mul(after.matrix, first.matrix), first.provenance};
  out.provenance.insert(out.provenance.end(), after.provenance.begin(),
                        after.provenance.end());
  (void)l;
  return out;
}

Isometry inverse(const GramLattice& l, const Isometry& g) {
  Isometry out = identity_isometry(l);
  for (auto it = g.provenance.rbegin(); it != g.provenance.rend(); ++it) {
    Isometry step;
    switch (it->kind) {
      case GenStep::Kind::transvection: {
        ZVec na = it->a;
        for (Int& x : na) x = -x;
        step = eichler_transvection(l, it->f, na);
        break;
      }
      case GenStep::Kind::negate_u1:
      case GenStep::Kind::swap_u1: {
        Isometry self{Mat<Int>::identity(l.rank), {*it}};
        if (it->kind == GenStep::Kind::negate_u1) {
          self.matrix(0, 0) = -1;
          self.matrix(1, 1) = -1;
        } else {
          self.matrix(0, 0) = self.matrix(1, 1) = 0;
          self.matrix(0, 1) = self.matrix(1, 0) = 1;
        }
        step = std::move(self);
        break;
      }
    }
    out = compose(l, step, out);
  }
  ISOCOUNT_CHECK(mul(out.matrix, g.matrix) == Mat<Int>::identity(l.rank),
                 "inverse from reversed provenance failed");
  return out;
}

namespace {

// driver state for the reduction schedule
struct Reducer {
  const GramLattice& l;
  int n;
  ZVec v;
  Isometry acc;
  int steps = 0;
  static constexpr int kStepBound = 64;

  Reducer(const GramLattice& ll, ZVec w)
      : l(ll), n(ll.rank), v(std::move(w)), acc(identity_isometry(ll)) {}

  void bump() {
    if (++steps > kStepBound)
      throw ReductionError("reduction exceeded the 64-generator step bound",
                           acc);
  }

  void apply(const Isometry& g) {
    bump();
    v = mul(g.matrix, v);
    acc = compose(l, g, acc);
  }

  void transvect(int fidx, const ZVec& a) {
    apply(eichler_transvection(l, unit_vec(n, fidx), a));
  }

  void negate_u1() {
    Isometry g = identity_isometry(l);
    g.matrix(0, 0) = -1;
    g.matrix(1, 1) = -1;
    g.provenance.push_back({GenStep::Kind::negate_u1, {}, {}});
    apply(g);
  }

  void swap_u1() {
    Isometry g = identity_isometry(l);
    g.matrix(0, 0) = g.matrix(1, 1) = 0;
    g.matrix(0, 1) = g.matrix(1, 0) = 1;
    g.provenance.push_back({GenStep::Kind::swap_u1, {}, {}});
    apply(g);
  }

  // pairings against the distinguished blocks; with the split-off block
  // structure these are just coordinates
  Int alpha() const { return v[0]; }  // v.g1
  Int beta() const { return v[1]; }   // v.f1
  Int c2() const { return v[3]; }     // v.f2
  Int d2() const { return v[2]; }     // v.g2

  ZVec scaled_unit(int i, const Int& k) {
    ZVec a(n, Int(0));
    a[i] = k;
    return a;
  }

  // moves named by their effect on the tracked pairings; basis indices are
  // f1=0, g1=1, f2=2, g2=3
  void beta_plus_c(const Int& k) { transvect(2, scaled_unit(1, k)); }   // E(f2, k g1)
  void beta_plus_d(const Int& k) { transvect(3, scaled_unit(1, k)); }   // E(g2, k g1)
  void c_plus_beta(const Int& k) { transvect(0, scaled_unit(3, k)); }   // E(f1, k g2)
  void d_plus_beta(const Int& k) { transvect(0, scaled_unit(2, k)); }   // E(f1, k f2)
  void c_plus_alpha(const Int& k) { transvect(1, scaled_unit(3, k)); }  // E(g1, k g2)

  bool is_target() const {
    if (v[0] != 1) return false;
    for (int i = 1; i < n; ++i)
      if (v[i] != 0) return false;
    return true;
  }

  // balanced Euclid between beta and one partner pairing
  template <class Get, class AddP, class AddB>
  void gcd_pair(Get get, AddP add_p_by_beta, AddB add_beta_by_p) {
    for (int guard = 0; guard < kStepBound; ++guard) {
      Int b = beta();
      Int p = get();
      if (p == 0 || abs(b) == 1) return;
      ISOCOUNT_CHECK(b != 0, "euclid lead vanished");
      Int k = -round_div(p, b);
      if (k != 0) {
        add_p_by_beta(k);
        p = get();
        if (p == 0) return;
      }
      Int k2 = -round_div(b, p);
      if (k2 != 0) add_beta_by_p(k2);
      if (beta() == 0) {
        add_beta_by_p(Int(1));   // beta <- p
        add_p_by_beta(Int(-1));  // p <- 0
        return;
      }
    }
    throw ReductionError("euclid phase failed to converge", acc);
  }

  // component of v orthogonal to U1 (coordinates >= 2)
  ZVec tail_part(int from) const {
    ZVec z(n, Int(0));
    for (int i = from; i < n; ++i) z[i] = v[i];
    return z;
  }

  // a in the complement sublattice (indices >= from) with a.z0 == 1
  ZVec pairing_partner(int from, const ZVec& z) {
    GramLattice sub = sub_lattice(l, from);
    ZVec zr(z.begin() + from, z.end());
    Int c = content(zr);
    for (Int& x : zr) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    ZVec a_sub = dual_pairing_solve(sub, zr);
    ZVec a(n, Int(0));
    for (int i = from; i < n; ++i) a[i] = a_sub[i - from];
    return a;
  }

  void run() {
    ISOCOUNT_CHECK(is_primitive(v), "reduction input must be primitive");
    ISOCOUNT_CHECK(quadratic_value(l, v) == 0, "reduction input must be isotropic");
    if (is_target()) return;

    // A: make v.f1 nonzero
    if (beta() == 0) {
      ZVec z = tail_part(2);
      if (content(z) == 0) {
        // v is a multiple of f1; primitivity forces v = -f1
        ISOCOUNT_CHECK(alpha() == -1 || alpha() == 1, "primitive multiple of f1");
        if (alpha() == -1) negate_u1();
        ISOCOUNT_CHECK(is_target(), "phase A normalization failed");
        return;
      }
      ZVec a = pairing_partner(2, z);
      // E(g1, a) sends beta to -(a.v) - q(a)/2 * alpha; flip a if that hits 0
      Int av = bilinear_value(l, a, v);
      Int qa2 = quadratic_value(l, a) / 2;
      if (-av - qa2 * alpha() == 0)
        for (Int& x : a) x = -x;
      transvect(1, a);
      ISOCOUNT_CHECK(beta() != 0, "phase A must produce a nonzero pairing");
    }

    // B: contract beta to +/-1 through Euclid against the U2 pairings, the
    // complement content, and alpha; primitivity makes the joint gcd 1, and
    // every step replaces beta by one of its divisors
    auto gcd_c = [&] {
      gcd_pair([&] { return c2(); }, [&](const Int& k) { c_plus_beta(k); },
               [&](const Int& k) { beta_plus_c(k); });
    };
    auto gcd_d = [&] {
      gcd_pair([&] { return d2(); }, [&](const Int& k) { d_plus_beta(k); },
               [&](const Int& k) { beta_plus_d(k); });
    };
    for (int pass = 0; pass < 16 && abs(beta()) != 1; ++pass) {
      gcd_c();
      if (abs(beta()) == 1) break;
      gcd_d();
      if (abs(beta()) == 1) break;
      ZVec z = tail_part(4);
      if (content(z) != 0) {
        ZVec a = pairing_partner(4, z);
        transvect(2, a);  // E(f2, a): pumps the complement content into d2
        gcd_d();
        if (abs(beta()) == 1) break;
      }
      if (alpha() != 0) {
        // flush both pools so the mix brings in alpha alone
        gcd_c();
        gcd_d();
        if (abs(beta()) == 1) break;
        c_plus_alpha(Int(1));
        gcd_c();
      }
    }
    if (abs(beta()) != 1)
      throw ReductionError("euclid phases failed to reach pairing 1", acc);
    if (beta() == -1) negate_u1();

    // C: with v.f1 == 1, one transvection sends v to g1, then swap
    ZVec z = tail_part(2);
    if (content(z) != 0) {
      ZVec a = z;
      for (Int& x : a) x = -x;
      transvect(0, a);  // E(f1, -z) v = g1
    }
    swap_u1();
    ISOCOUNT_CHECK(is_target(), "reduction postcondition gamma w == f1");
  }
};

}  // namespace

Isometry reduce_to_standard(const GramLattice& l, const ZVec& w) {
  check_two_hyperbolic_blocks(l);
  if (static_cast<int>(w.size()) != l.rank)
    throw PreconditionError("reduction: dimension mismatch");
  Reducer red(l, w);
  red.run();
  ISOCOUNT_CHECK(verify_isometry(l, red.acc), "reduction output must be an isometry");
  ISOCOUNT_CHECK(mul(red.acc.matrix, w) == unit_vec(l.rank, 0),
                 "reduction postcondition gamma w == f1");
  return std::move(red.acc);
}

Isometry map_between(const GramLattice& l, const ZVec& v, const ZVec& w) {
  Isometry rv = reduce_to_standard(l, v);
  Isometry rw = reduce_to_standard(l, w);
  Isometry g = compose(l, inverse(l, rw), rv);
  ISOCOUNT_CHECK(mul(g.matrix, v) == w, "map_between postcondition");
  return g;
}

SplittingCertificate hyperbolic_splitting(const GramLattice& l, const ZVec& w) {
  if (l.determinant != 1 && l.determinant != -1)
    throw PreconditionError("splitting: lattice must be unimodular");
  if (!l.even) throw PreconditionError("splitting: lattice must be even");
  if (quadratic_value(l, w) != 0)
    throw PreconditionError("splitting: vector must be isotropic");
  if (!is_primitive(w))
    throw PreconditionError("splitting: vector must be primitive");

  SplittingCertificate cert;
  cert.w = w;
  cert.x = dual_pairing_solve(l, w);
  Int qx = quadratic_value(l, cert.x);
  cert.k = qx / 2;
  cert.x1 = cert.x;
  for (int i = 0; i < l.rank; ++i) cert.x1[i] -= cert.k * w[i];
  ISOCOUNT_CHECK(quadratic_value(l, cert.x1) == 0, "splitting: q(x1) == 0");
  ISOCOUNT_CHECK(bilinear_value(l, w, cert.x1) == 1, "splitting: w.x1 == 1");

  Mat<Int> rows(2, l.rank);
  ZVec gw = mul(gram_int(l), w), gx1 = mul(gram_int(l), cert.x1);
  for (int j = 0; j < l.rank; ++j) {
    rows(0, j) = gw[j];
    rows(1, j) = gx1[j];
  }
  cert.complement_basis = saturated_kernel_basis(rows);
  ISOCOUNT_CHECK(cert.complement_basis.rows == l.rank - 2,
                 "splitting: complement rank must be n - 2");
  for (int i = 0; i < cert.complement_basis.rows; ++i) {
    ZVec b(l.rank);
    for (int j = 0; j < l.rank; ++j) b[j] = cert.complement_basis(i, j);
    ISOCOUNT_CHECK(bilinear_value(l, b, w) == 0, "complement row pairs to 0 with w");
    ISOCOUNT_CHECK(bilinear_value(l, b, cert.x1) == 0,
                   "complement row pairs to 0 with x1");
  }

  Mat<Int> cg = mul(mul(cert.complement_basis, gram_int(l)),
                    transpose(cert.complement_basis));
  cert.complement_gram = Mat<i64>(cg.rows, cg.cols);
  for (size_t i = 0; i < cg.a.size(); ++i) {
    ISOCOUNT_CHECK(cg.a[i].fits_slong_p(), "complement gram entry overflow");
    cert.complement_gram.a[i] = cg.a[i].get_si();
  }
  cert.complement_even_unimodular = is_even_unimodular(cert.complement_gram);
  cert.complement_inertia = inertia_exact(to_rat_mat(to_int_mat(cert.complement_gram)));
  return cert;
}

}  // namespace isocount
