#include "isocount/linalg.hpp"

#include <algorithm>
#include <limits>

namespace isocount {

Int content(const ZVec& v) {
  Int g = 0;
  for (const Int& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

i64 content(const IVec& v) {
  Int g = 0;
  for (i64 x : v) {
    Int xi(static_cast<long>(x));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
    if (g == 1) break;
  }
  return static_cast<i64>(g.get_si());
}

ExtGcdResult extended_gcd(const ZVec& y) {
  ExtGcdResult res;
  res.g = 0;
  res.coeffs.assign(y.size(), Int(0));
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    if (res.g == 0) {
      res.g = abs(y[i]);
      res.coeffs[i] = y[i] > 0 ? 1 : -1;
      continue;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), res.g.get_mpz_t(),
               y[i].get_mpz_t());
    for (size_t j = 0; j < i; ++j) res.coeffs[j] *= s;
    res.coeffs[i] = t;
    res.g = g;
    if (res.g == 1) {
      // remaining coefficients stay zero
      break;
    }
  }
  return res;
}

Int isqrt(const Int& n) {
  ISOCOUNT_CHECK(n >= 0, "isqrt of negative value");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int isqrt_rat(const Rat& r) {
  ISOCOUNT_CHECK(r >= 0, "isqrt_rat of negative value");
  // floor(sqrt(p/q)) = floor(sqrt(p*q)/q)
  Int p = r.get_num(), q = r.get_den();
  Int root = isqrt(p * q);
  Int k;
  mpz_fdiv_q(k.get_mpz_t(), root.get_mpz_t(), q.get_mpz_t());
  // adjust against rounding at the boundary
  while (Rat(k + 1) * Rat(k + 1) <= r) k += 1;
  while (k > 0 && Rat(k) * Rat(k) > r) k -= 1;
  return k;
}

IVec to_ivec(const ZVec& v) {
  IVec out;
  out.reserve(v.size());
  for (const Int& x : v) {
    ISOCOUNT_CHECK(x.fits_slong_p(), "coordinate exceeds 64-bit range");
    out.push_back(static_cast<i64>(x.get_si()));
  }
  return out;
}

Inertia inertia_exact(Mat<Rat> m) {
  if (!is_symmetric(m))
    throw PreconditionError("inertia: matrix not symmetric");
  const int n = m.rows;
  Inertia sig;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    // pick a nonzero diagonal pivot among the remaining rows
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && m(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // all remaining diagonal entries vanish; a nonzero off-diagonal pair
      // (i,j) is made diagonal by the congruence row_i += row_j
      int bi = -1, bj = -1;
      for (int i = 0; i < n && bi < 0; ++i) {
        if (done[i]) continue;
        for (int j = 0; j < n; ++j) {
          if (done[j] || j == i) continue;
          if (m(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
        }
      }
      if (bi < 0) {
        sig.zero += std::count(done.begin(), done.end(), false);
        return sig;
      }
      for (int k = 0; k < n; ++k) m(bi, k) += m(bj, k);
      for (int k = 0; k < n; ++k) m(k, bi) += m(k, bj);
      piv = bi;  // now m(bi,bi) == 2*old(bi,bj) != 0
    }
    const Rat d = m(piv, piv);
    if (d > 0)
      ++sig.pos;
    else
      ++sig.neg;
    done[piv] = true;
    // clear row/column piv from the active block
    for (int i = 0; i < n; ++i) {
      if (done[i] || m(i, piv) == 0) continue;
      Rat f = m(i, piv) / d;
      for (int k = 0; k < n; ++k) m(i, k) -= f * m(piv, k);
      for (int k = 0; k < n; ++k) m(k, i) -= f * m(k, piv);
    }
  }
  return sig;
}

Int det_bareiss(Mat<Int> m) {
  ISOCOUNT_CHECK(m.rows == m.cols, "determinant of non-square matrix");
  const int n = m.rows;
  if (n == 0) return 1;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          sw = i;
          break;
        }
      if (sw < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(sw, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

namespace {

// Unimodular column operations reducing row `r` of `w` (columns >= from),
// mirrored on `u`.
void clear_row_by_column_gcd(Mat<Int>& w, Mat<Int>& u, int r, int from) {
  const int n = w.cols;
  int piv = -1;
  for (int j = from; j < n; ++j)
    if (w(r, j) != 0) {
      piv = j;
      break;
    }
  if (piv < 0) return;
  for (int j = piv + 1; j < n; ++j) {
    if (w(r, j) == 0) continue;
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
               w(r, piv).get_mpz_t(), w(r, j).get_mpz_t());
    Int a = w(r, piv) / g, b = w(r, j) / g;
    // (col_piv, col_j) <- (s*col_piv + t*col_j, -b*col_piv + a*col_j)
    for (int i = 0; i < w.rows; ++i) {
      Int cp = w(i, piv), cj = w(i, j);
      w(i, piv) = s * cp + t * cj;
      w(i, j) = a * cj - b * cp;
    }
    for (int i = 0; i < u.rows; ++i) {
      Int cp = u(i, piv), cj = u(i, j);
      u(i, piv) = s * cp + t * cj;
      u(i, j) = a * cj - b * cp;
    }
  }
  if (piv != from) {
    for (int i = 0; i < w.rows; ++i) std::swap(w(i, piv), w(i, from));
    for (int i = 0; i < u.rows; ++i) std::swap(u(i, piv), u(i, from));
  }
}

}  // namespace

Mat<Int> saturated_kernel_basis(const Mat<Int>& m) {
  const int n = m.cols;
  Mat<Int> w = m;
  Mat<Int> u = Mat<Int>::identity(n);
  int lead = 0;
  for (int r = 0; r < w.rows && lead < n; ++r) {
    clear_row_by_column_gcd(w, u, r, lead);
    if (w(r, lead) != 0) ++lead;
  }
  // columns `lead..n-1` of u span ker(m) over Z; unimodularity of u makes
  // the span saturated
  Mat<Int> basis(n - lead, n);
  for (int j = lead; j < n; ++j)
    for (int i = 0; i < n; ++i) basis(j - lead, i) = u(i, j);
  return basis;
}

bool has_unit_elementary_divisors(Mat<Int> b) {
  // Smith-style reduction; we only need the invariant factors.
  int r = 0, c = 0;
  const int rows = b.rows, cols = b.cols;
  int rank = 0;
  std::vector<Int> divisors;
  while (r < rows && c < cols) {
    // find nonzero pivot
    int pi = -1, pj = -1;
    for (int i = r; i < rows && pi < 0; ++i)
      for (int j = c; j < cols; ++j)
        if (b(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    for (int j = 0; j < cols; ++j) std::swap(b(r, j), b(pi, j));
    for (int i = 0; i < rows; ++i) std::swap(b(i, c), b(i, pj));
    bool again = true;
    while (again) {
      again = false;
      for (int i = r + 1; i < rows; ++i) {
        if (b(i, c) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), b(i, c).get_mpz_t(), b(r, c).get_mpz_t());
        for (int j = 0; j < cols; ++j) b(i, j) -= q * b(r, j);
        if (b(i, c) != 0) {
          for (int j = 0; j < cols; ++j) std::swap(b(r, j), b(i, j));
          again = true;
        }
      }
      for (int j = c + 1; j < cols; ++j) {
        if (b(r, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), b(r, j).get_mpz_t(), b(r, c).get_mpz_t());
        for (int i = 0; i < rows; ++i) b(i, j) -= q * b(i, c);
        if (b(r, j) != 0) {
          for (int i = 0; i < rows; ++i) std::swap(b(i, c), b(i, j));
          again = true;
        }
      }
    }
    divisors.push_back(abs(b(r, c)));
    ++rank;
    ++r;
    ++c;
  }
  for (const Int& d : divisors)
    if (d != 1) return false;
  return rank == std::min(rows, cols);
}

Mat<Rat> inverse_exact(Mat<Rat> m) {
  ISOCOUNT_CHECK(m.rows == m.cols, "inverse of non-square matrix");
  const int n = m.rows;
  Mat<Rat> inv = Mat<Rat>::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (m(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw PreconditionError("inverse: singular matrix");
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(m(k, j), m(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    Rat d = m(k, k);
    for (int j = 0; j < n; ++j) {
      m(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rat f = m(i, k);
      for (int j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

LdlResult ldl_exact(const Mat<Rat>& m) {
  ISOCOUNT_CHECK(is_symmetric(m), "ldl of non-symmetric matrix");
  const int n = m.rows;
  LdlResult res;
  res.d.assign(n, Rat(0));
  res.lower = Mat<Rat>::identity(n);
  for (int j = 0; j < n; ++j) {
    Rat dj = m(j, j);
    for (int k = 0; k < j; ++k) dj -= res.lower(j, k) * res.lower(j, k) * res.d[k];
    res.d[j] = dj;
    if (dj <= 0) {
      res.positive = false;
      res.bad_pivot = j;
      return res;
    }
    for (int i = j + 1; i < n; ++i) {
      Rat v = m(i, j);
      for (int k = 0; k < j; ++k) v -= res.lower(i, k) * res.lower(j, k) * res.d[k];
      res.lower(i, j) = v / dj;
    }
  }
  return res;
}

int rank_exact(Mat<Rat> m) {
  int rank = 0;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(row, j), m(piv, j));
    for (int i = row + 1; i < m.rows; ++i) {
      if (m(i, col) == 0) continue;
      Rat f = m(i, col) / m(row, col);
      for (int j = col; j < m.cols; ++j) m(i, j) -= f * m(row, j);
    }
    ++rank;
    ++row;
  }
  return rank;
}

}  // namespace isocount
