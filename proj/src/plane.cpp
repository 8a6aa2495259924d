#include "isocount/plane.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

namespace isocount {

namespace {

constexpr double kMarginFactor = 1024.0;  // times n * DBL_EPSILON

Mat<Rat> sym_check(Mat<Rat> m, const char* what) {
  ISOCOUNT_CHECK(is_symmetric(m), std::string(what) + " must be symmetric");
  return m;
}

// rows of (G * frame_i)^T for a G-orthonormal frame of the plane span;
// double Gram-Schmidt on the (exact or float) basis rows.
Mat<double> build_frame_pair(const Mat<double>& basis, const Mat<double>& gram) {
  const int r = basis.rows, n = basis.cols;
  Mat<double> frame = basis;
  auto gdot = [&](const double* a, const double* b) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      double gi = 0;
      for (int j = 0; j < n; ++j) gi += gram(i, j) * b[j];
      s += a[i] * gi;
    }
    return s;
  };
  for (int i = 0; i < r; ++i) {
    double* fi = &frame(i, 0);
    for (int k = 0; k < i; ++k) {
      const double* fk = &frame(k, 0);
      double c = gdot(fi, fk);
      for (int j = 0; j < n; ++j) fi[j] -= c * fk[j];
    }
    double nrm = gdot(fi, fi);
    ISOCOUNT_CHECK(nrm > 0, "frame orthonormalization hit a non-positive norm");
    double inv = 1.0 / std::sqrt(nrm);
    for (int j = 0; j < n; ++j) fi[j] *= inv;
  }
  Mat<double> pair(r, n);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += gram(k, j) * frame(i, j);
      pair(i, k) = s;
    }
  return pair;
}

// cyclic Jacobi on a symmetric matrix; eigenvectors in columns of v
void jacobi_eigen(Mat<double> a, std::vector<double>& eval, Mat<double>& evec) {
  const int n = a.rows;
  evec = Mat<double>::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-26) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = evec(k, p), vkq = evec(k, q);
          evec(k, p) = c * vkp - s * vkq;
          evec(k, q) = s * vkp + c * vkq;
        }
      }
  }
  eval.resize(n);
  for (int i = 0; i < n; ++i) eval[i] = a(i, i);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng), u2 = uniform01(rng);
  while (u1 <= 1e-300) u1 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// float Cholesky with a tolerance; true iff all pivots clear the margin
bool chol_positive(const Mat<double>& m, double margin) {
  const int n = m.rows;
  Mat<double> a = m;
  double scale = 0;
  for (double x : m.a) scale = std::max(scale, std::abs(x));
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (d <= margin * scale) return false;
    d = std::sqrt(d);
    a(j, j) = d;
    for (int i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (int k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
      a(i, j) = v / d;
    }
  }
  return true;
}

}  // namespace

TwistorPlane make_plane(const GramLattice& l, const Mat<Rat>& basis_rows) {
  const int n = l.rank, r = basis_rows.rows;
  if (basis_rows.cols != n)
    throw PreconditionError("plane basis: vector length does not match rank");
  if (r < 1 || r > n) throw PreconditionError("plane basis: bad rank");

  TwistorPlane p;
  p.lattice = l;
  p.mode = PlaneMode::exact;
  p.r = r;
  p.basis = basis_rows;

  Mat<Rat> g = to_rat_mat(to_int_mat(l.gram));
  Mat<Rat> bt = transpose(basis_rows);          // n x r
  Mat<Rat> gb = mul(g, bt);                     // n x r
  p.gram_p = sym_check(mul(basis_rows, gb), "gram_p");

  LdlResult ldl = ldl_exact(p.gram_p);
  if (!ldl.positive)
    throw PreconditionError(
        "plane span not positive definite: leading principal minor " +
        std::to_string(ldl.bad_pivot + 1) + " is not positive");

  // pi = B^T gram_p^-1 B G  with column-vector convention
  Mat<Rat> inv_gp = inverse_exact(p.gram_p);
  p.projector = mul(mul(bt, inv_gp), mul(basis_rows, g));
  p.seminorm_mat = sym_check(mul(g, p.projector), "G*pi");
  ISOCOUNT_CHECK(mul(p.projector, p.projector) == p.projector,
                 "projector must be idempotent");

  Mat<Rat> q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = 2 * p.seminorm_mat(i, j) - g(i, j);
  p.majorant = sym_check(std::move(q), "majorant");
  LdlResult qldl = ldl_exact(p.majorant);
  ISOCOUNT_CHECK(qldl.positive, "majorant must be positive definite");

  p.frame_pair = build_frame_pair(to_double_mat(p.basis),
                                  to_double_mat(g));
  p.f_majorant = to_double_mat(p.majorant);
  p.margin = 0.0;
  return p;
}

TwistorPlane make_plane(const GramLattice& l, const std::vector<IVec>& rows) {
  Mat<Rat> b(static_cast<int>(rows.size()), l.rank);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != l.rank)
      throw PreconditionError("plane basis: vector length does not match rank");
    for (int j = 0; j < l.rank; ++j) b(static_cast<int>(i), j) = Rat(static_cast<long>(rows[i][j]));
  }
  return make_plane(l, b);
}

TwistorPlane random_plane(const GramLattice& l, std::uint64_t seed) {
  const int n = l.rank;
  const int r = l.signature.pos;
  if (r < 1) throw PreconditionError("random_plane: no positive directions");

  Mat<double> gd(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gd(i, j) = static_cast<double>(l.gram(i, j));
  std::vector<double> eval;
  Mat<double> evec;
  jacobi_eigen(gd, eval, evec);

  std::vector<int> pos_idx, neg_idx;
  for (int i = 0; i < n; ++i) (eval[i] > 0 ? pos_idx : neg_idx).push_back(i);
  ISOCOUNT_CHECK(static_cast<int>(pos_idx.size()) == r,
                 "spectral decomposition disagrees with the exact signature");

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const double margin = kMarginFactor * n * DBL_EPSILON;

  for (int attempt = 0; attempt < 64; ++attempt) {
    // gaussian draws, negative-cone component damped so the span stays
    // positive definite while still tilting away from the eigenspace
    double tilt = 0.45 / (1 << std::min(attempt, 8));
    Mat<double> basis(r, n);
    for (int i = 0; i < r; ++i) {
      std::vector<double> raw(n);
      for (double& x : raw) x = gaussian(rng);
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int idx : pos_idx) s += evec(k, idx) * raw[idx];
        for (int idx : neg_idx) s += tilt * evec(k, idx) * raw[idx];
        basis(i, k) = s;
      }
    }
    // positive definiteness of the span under G, with margin
    Mat<double> gp(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        double s = 0;
        for (int a = 0; a < n; ++a) {
          double gi = 0;
          for (int b = 0; b < n; ++b) gi += gd(a, b) * basis(j, b);
          s += basis(i, a) * gi;
        }
        gp(i, j) = s;
      }
    if (!chol_positive(gp, 1e-6)) continue;

    TwistorPlane p;
    p.lattice = l;
    p.mode = PlaneMode::floating;
    p.r = r;
    p.seed = seed;
    p.margin = margin;
    p.frame_pair = build_frame_pair(basis, gd);

    // majorant from the frame: Q = 2 * C^T C - G with C = frame * G
    p.f_majorant = Mat<double>(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int k = 0; k < r; ++k) s += p.frame_pair(k, i) * p.frame_pair(k, j);
        p.f_majorant(i, j) = 2 * s - gd(i, j);
      }
    if (!chol_positive(p.f_majorant, margin)) continue;
    return p;
  }
  throw PreconditionError("random_plane: degenerate draws exhausted retries");
}

Rat seminorm_sq_exact(const TwistorPlane& p, const ZVec& e) {
  if (p.mode != PlaneMode::exact)
    throw PreconditionError("seminorm_sq_exact requires an exact-mode plane");
  if (static_cast<int>(e.size()) != p.n())
    throw PreconditionError("seminorm: dimension mismatch");
  Rat acc = 0;
  for (int i = 0; i < p.n(); ++i) {
    if (e[i] == 0) continue;
    Rat row = 0;
    for (int j = 0; j < p.n(); ++j) {
      if (e[j] == 0) continue;
      row += p.seminorm_mat(i, j) * Rat(e[j]);
    }
    acc += Rat(e[i]) * row;
  }
  return acc;
}

Rat seminorm_sq_exact(const TwistorPlane& p, const IVec& e) {
  return seminorm_sq_exact(p, to_zvec(e));
}

BoundedValue seminorm_sq_float(const TwistorPlane& p, const IVec& e) {
  const int n = p.n(), r = p.r;
  if (static_cast<int>(e.size()) != n)
    throw PreconditionError("seminorm: dimension mismatch");
  double value = 0, mag = 0;
  for (int i = 0; i < r; ++i) {
    double d = 0, dabs = 0;
    for (int j = 0; j < n; ++j) {
      double t = p.frame_pair(i, j) * static_cast<double>(e[j]);
      d += t;
      dabs += std::abs(t);
    }
    value += d * d;
    mag += dabs * dabs;
  }
  // evaluation rounding plus the plane's construction margin
  double eps = (2.0 * n + 8.0) * DBL_EPSILON;
  double halfwidth = eps * mag + p.margin * mag;
  return {value, halfwidth};
}

std::vector<double> direction(const TwistorPlane& p, const IVec& e) {
  const int n = p.n(), r = p.r;
  if (static_cast<int>(e.size()) != n)
    throw PreconditionError("direction: dimension mismatch");
  std::vector<double> d(r, 0.0);
  double norm2 = 0;
  for (int i = 0; i < r; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += p.frame_pair(i, j) * static_cast<double>(e[j]);
    d[i] = s;
    norm2 += s * s;
  }
  if (norm2 <= 0)
    throw PreconditionError("direction: zero projection to the plane");
  double inv = 1.0 / std::sqrt(norm2);
  for (double& x : d) x *= inv;
  return d;
}

// ---------------------------------------------------------------------------
// genericity witness search

namespace {

struct ExactScanner {
  // enumerate x with x^T Q x <= radius2, |x_i| <= height, q(x) == target,
  // solving the last coordinate as an integer quadratic
  const Mat<Rat>& q_form;   // positive definite majorant
  const Mat<i64>& gram;     // ambient integer form
  Rat radius2;
  i64 height;
  Int target;
  std::uint64_t node_budget;
  std::uint64_t nodes = 0;
  bool budget_hit = false;

  ExactScanner(const Mat<Rat>& q, const Mat<i64>& g, Rat r2, i64 h, Int tgt,
               std::uint64_t budget)
      : q_form(q), gram(g), radius2(std::move(r2)), height(h),
        target(std::move(tgt)), node_budget(budget) {}

  std::vector<Rat> d;
  Mat<Rat> lower;
  IVec x;

  template <class F>
  void run(F&& emit) {
    const int n = q_form.rows;
    LdlResult ldl = ldl_exact(q_form);
    ISOCOUNT_CHECK(ldl.positive, "scanner needs a positive definite form");
    d = std::move(ldl.d);
    lower = std::move(ldl.lower);
    x.assign(n, 0);
    descend(n - 1, radius2, emit);
  }

  // center of level i given x_{i+1..n-1}: c_i = -sum_{j>i} L(j,i) x_j
  Rat center(int i) const {
    Rat c = 0;
    for (int j = i + 1; j < q_form.rows; ++j)
      if (x[j] != 0) c -= lower(j, i) * Rat(x[j]);
    return c;
  }

  template <class F>
  void descend(int level, const Rat& budget, F&& emit) {
    if (budget_hit) return;
    if (++nodes > node_budget) {
      budget_hit = true;
      return;
    }
    const Rat c = center(level);
    if (level == 0) {
      solve_last(c, budget, emit);
      return;
    }
    if (budget < 0) return;
    Int k = isqrt_rat(budget / d[level]);
    Int lo_i, hi_i;
    Rat cr = c;
    // integer window [ceil(c - s), floor(c + s)] intersected with the box
    Int cf;
    mpz_fdiv_q(cf.get_mpz_t(), cr.get_num().get_mpz_t(), cr.get_den().get_mpz_t());
    lo_i = cf - k - 1;
    hi_i = cf + k + 1;
    while (Rat(lo_i) < cr && d[level] * (cr - Rat(lo_i)) * (cr - Rat(lo_i)) > budget) ++lo_i;
    while (Rat(hi_i) > cr && d[level] * (Rat(hi_i) - cr) * (Rat(hi_i) - cr) > budget) --hi_i;
    i64 lo = std::max<i64>(-height, lo_i.fits_slong_p() ? lo_i.get_si() : -height);
    i64 hi = std::min<i64>(height, hi_i.fits_slong_p() ? hi_i.get_si() : height);
    for (i64 xv = lo; xv <= hi; ++xv) {
      Rat dev = Rat(xv) - c;
      Rat used = d[level] * dev * dev;
      if (used > budget) continue;
      x[level] = xv;
      descend(level - 1, budget - used, emit);
      if (budget_hit) return;
    }
    x[level] = 0;
  }

  template <class F>
  void solve_last(const Rat& c, const Rat& budget, F&& emit) {
    const int n = q_form.rows;
    // q(x) = A t^2 + B t + C with t = x_0
    Int a = gram(0, 0);
    Int b = 0, cc = 0;
    for (int j = 1; j < n; ++j)
      if (x[j] != 0) b += 2 * Int(static_cast<long>(gram(0, j))) * Int(static_cast<long>(x[j]));
    for (int i = 1; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = 1; j < n; ++j)
        if (x[j] != 0)
          cc += Int(static_cast<long>(gram(i, j))) * Int(static_cast<long>(x[i])) * Int(static_cast<long>(x[j]));
    }
    cc -= target;
    auto try_root = [&](const Int& t) {
      if (!t.fits_slong_p()) return;
      i64 tv = t.get_si();
      if (tv < -height || tv > height) return;
      Rat dev = Rat(t) - c;
      if (d[0] * dev * dev > budget) return;
      x[0] = tv;
      emit(x);
      x[0] = 0;
    };
    if (a != 0) {
      Int disc = b * b - 4 * a * cc;
      if (disc < 0) return;
      Int s = isqrt(disc);
      if (s * s != disc) return;
      for (int sign = 0; sign < (s == 0 ? 1 : 2); ++sign) {
        Int num = -b + (sign == 0 ? s : -s);
        Int den = 2 * a;
        if (num % den == 0) try_root(num / den);
      }
    } else if (b != 0) {
      if (cc % b == 0) try_root(-cc / b);
    } else if (cc == 0) {
      // the form is flat in x_0 here; walk the window
      Int k = isqrt_rat(budget / d[0]);
      for (Int t = -k - 1; t <= k + 1; ++t) try_root(t);
    }
  }
};

Rat box_bound_abs(const Mat<Rat>& m, i64 h) {
  Rat s = 0;
  for (const Rat& v : m.a) s += abs(v);
  return s * Rat(static_cast<long>(h)) * Rat(static_cast<long>(h));
}

bool collinear(const IVec& a, const IVec& b) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      __int128 m = static_cast<__int128>(a[i]) * b[j] -
                   static_cast<__int128>(a[j]) * b[i];
      if (m != 0) return false;
    }
  return true;
}

}  // namespace

WitnessSearchResult genericity_witness_search(const TwistorPlane& p, int bound,
                                              const WitnessSearchOptions& opt) {
  if (p.mode != PlaneMode::exact)
    throw PreconditionError(
        "genericity search requires an exact-mode plane: proportionality is "
        "not decidable with rounding");
  if (bound < 1) throw PreconditionError("genericity: bound must be positive");

  const GramLattice& l = p.lattice;
  const int n = l.rank;
  WitnessSearchResult out;
  out.bound = bound;

  Mat<Rat> g = to_rat_mat(to_int_mat(l.gram));
  Rat s_box = box_bound_abs(p.seminorm_mat, bound);
  Rat q_box = box_bound_abs(g, bound);

  // projections as exact rational vectors
  auto project = [&](const IVec& v) {
    std::vector<Rat> pr(n, Rat(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (v[j] != 0) pr[i] += p.projector(i, j) * Rat(static_cast<long>(v[j]));
    return pr;
  };
  auto proportional = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
  };

  std::uint64_t budget_left = opt.node_budget;
  bool any_budget_hit = false;

  // phase 1: all x with q(x) == -2 in the height box
  std::vector<IVec> roots;
  {
    ExactScanner sc{p.majorant, l.gram, 2 * s_box + 2, bound, Int(-2),
                    budget_left};
    sc.run([&](const IVec& x) { roots.push_back(x); });
    any_budget_hit |= sc.budget_hit;
    budget_left -= std::min(budget_left, sc.nodes);
    out.nodes += sc.nodes;
  }

  // common denominator of the projector, for integer constraint rows
  Int den = 1;
  for (const Rat& v : p.projector.a) {
    Int d0 = v.get_den();
    den = den / gcd(den, d0) * d0;
  }

  // phase 2: for each root x, scan the sublattice of vectors whose
  // projection is forced onto the line of pi(x)
  for (const IVec& xr : roots) {
    if (out.truncated || budget_left == 0) break;
    std::vector<Rat> px = project(xr);
    int pivot = -1;
    for (int i = 0; i < n; ++i)
      if (px[i] != 0) {
        pivot = i;
        break;
      }
    Mat<Int> cond;
    if (pivot < 0) {
      // zero projection: v must satisfy pi(v) == 0
      cond = Mat<Int>(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Rat e = p.projector(i, j) * Rat(den);
          ISOCOUNT_CHECK(e.get_den() == 1, "denominator clearing failed");
          cond(i, j) = e.get_num();
        }
    } else {
      // (pi x)_pivot (pi v)_j - (pi x)_j (pi v)_pivot == 0 for all j
      cond = Mat<Int>(n - 1, n);
      int row = 0;
      for (int j = 0; j < n; ++j) {
        if (j == pivot) continue;
        for (int k = 0; k < n; ++k) {
          Rat e = (px[pivot] * p.projector(j, k) - px[j] * p.projector(pivot, k));
          e *= Rat(den * den);
          ISOCOUNT_CHECK(e.get_den() == 1, "denominator clearing failed");
          cond(row, k) = e.get_num();
        }
        ++row;
      }
    }
    Mat<Int> kern = saturated_kernel_basis(cond);
    if (kern.rows < 2 && pivot >= 0) continue;  // only multiples of x project there
    if (kern.rows < 1) continue;

    // restricted majorant on the sublattice
    Mat<Rat> kr(kern.rows, n);
    for (int i = 0; i < kern.rows; ++i)
      for (int j = 0; j < n; ++j) kr(i, j) = Rat(kern(i, j));
    Mat<Rat> qk = mul(mul(kr, p.majorant), transpose(kr));
    // any q value reachable in the box is allowed, so scan the ellipsoid
    // that covers the box and filter at the leaves
    Rat radius2 = 2 * s_box + q_box;
    std::uint64_t local_budget = std::min<std::uint64_t>(budget_left, opt.node_budget / 4);
    size_t found_for_x = 0;
    LdlResult ldl = ldl_exact(qk);
    ISOCOUNT_CHECK(ldl.positive, "restricted majorant must be positive definite");
    std::vector<Rat> dd = ldl.d;
    Mat<Rat> ll = ldl.lower;
    IVec y(kern.rows, 0);
    std::uint64_t nodes = 0;
    bool hit = false;
    auto emit_v = [&](const IVec& yv) {
      IVec v(n, 0);
      bool in_box = true;
      for (int j = 0; j < n && in_box; ++j) {
        Int s = 0;
        for (int i = 0; i < kern.rows; ++i)
          s += Int(static_cast<long>(yv[i])) * kern(i, j);
        if (!s.fits_slong_p() || s < -bound || s > bound) {
          in_box = false;
          break;
        }
        v[j] = s.get_si();
      }
      if (!in_box) return;
      bool zero = std::all_of(v.begin(), v.end(), [](i64 t) { return t == 0; });
      if (zero || collinear(xr, v)) return;
      std::vector<Rat> pv = project(v);
      if (!proportional(px, pv)) return;
      if (found_for_x >= 8) return;
      if (out.witnesses.size() >= opt.max_witnesses) {
        out.truncated = true;
        return;
      }
      ++found_for_x;
      out.witnesses.push_back({xr, v, bound});
    };
    std::function<void(int, Rat)> walk = [&](int level, Rat budget) {
      if (hit || out.truncated) return;
      if (++nodes > local_budget) {
        hit = true;
        return;
      }
      Rat c = 0;
      for (int j = level + 1; j < kern.rows; ++j)
        if (y[j] != 0) c -= ll(j, level) * Rat(static_cast<long>(y[j]));
      if (budget < 0) return;
      Int k = isqrt_rat(budget / dd[level]);
      Int cf;
      mpz_fdiv_q(cf.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
      for (Int t = cf - k - 1; t <= cf + k + 1; ++t) {
        if (!t.fits_slong_p()) continue;
        Rat dev = Rat(t) - c;
        Rat used = dd[level] * dev * dev;
        if (used > budget) continue;
        y[level] = t.get_si();
        if (level == 0)
          emit_v(y);
        else
          walk(level - 1, budget - used);
        if (hit || out.truncated) return;
      }
      y[level] = 0;
    };
    walk(kern.rows - 1, radius2);
    any_budget_hit |= hit;
    out.nodes += nodes;
    budget_left -= std::min(budget_left, nodes);
  }

  out.exhaustive = !any_budget_hit && !out.truncated;
  // final invariant check on every reported witness
  for (const GenericityWitness& w : out.witnesses) {
    ISOCOUNT_CHECK(quadratic_value(l, w.x) == -2, "witness x must have q = -2");
    ISOCOUNT_CHECK(!collinear(w.x, w.v), "witness v must be independent of x");
  }
  return out;
}

std::string plane_descriptor(const TwistorPlane& p) {
  nlohmann::json j;
  j["r"] = p.r;
  j["rank"] = p.n();
  if (p.mode == PlaneMode::exact) {
    j["mode"] = "exact";
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < p.r; ++i) {
      std::vector<std::string> row;
      for (int k = 0; k < p.n(); ++k) row.push_back(p.basis(i, k).get_str());
      rows.push_back(std::move(row));
    }
    j["basis"] = rows;
  } else {
    j["mode"] = "float";
    j["seed"] = p.seed;
    j["margin"] = p.margin;
  }
  return j.dump();
}

}  // namespace isocount
