#include "isocount/lattice.hpp"

#include <sstream>

namespace isocount {

GramLattice make_lattice(Mat<i64> gram) {
  if (gram.rows == 0) throw PreconditionError("lattice: zero rank");
  if (!is_symmetric(gram)) throw PreconditionError("lattice: gram not symmetric");
  GramLattice l;
  l.rank = gram.rows;
  l.gram = std::move(gram);
  l.signature = inertia_exact(to_rat_mat(to_int_mat(l.gram)));
  l.even = true;
  for (int i = 0; i < l.rank; ++i)
    if (l.gram(i, i) % 2 != 0) l.even = false;
  l.determinant = det_bareiss(to_int_mat(l.gram));
  return l;
}

Mat<i64> e8_gram() {
  // Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
  Mat<i64> g(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = 2;
  auto edge = [&](int i, int j) { g(i, j) = g(j, i) = -1; };
  for (int i = 0; i < 6; ++i) edge(i, i + 1);
  edge(4, 7);
  return g;
}

GramLattice k3_lattice() {
  Mat<i64> g(22, 22);
  for (int b = 0; b < 3; ++b) {
    g(2 * b, 2 * b + 1) = 1;
    g(2 * b + 1, 2 * b) = 1;
  }
  Mat<i64> e8 = e8_gram();
  for (int b = 0; b < 2; ++b) {
    int off = 6 + 8 * b;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) g(off + i, off + j) = -e8(i, j);
  }
  GramLattice l = make_lattice(std::move(g));
  ISOCOUNT_CHECK(l.even, "k3 lattice must be even");
  ISOCOUNT_CHECK(l.determinant == -1, "k3 lattice must have determinant -1");
  ISOCOUNT_CHECK((l.signature == Inertia{3, 0, 19}), "k3 lattice signature");
  return l;
}

GramLattice diagonal_lattice(int p, int q) {
  if (p < 1 || q < 1) throw PreconditionError("diagonal lattice needs p,q >= 1");
  Mat<i64> g(p + q, p + q);
  for (int i = 0; i < p; ++i) g(i, i) = 1;
  for (int i = p; i < p + q; ++i) g(i, i) = -1;
  GramLattice l = make_lattice(std::move(g));
  if (p == 2 && q == 2) l.excluded_from_asymptotic = true;
  return l;
}

Int quadratic_value(const GramLattice& l, const ZVec& v) {
  return bilinear_value(l, v, v);
}

Int bilinear_value(const GramLattice& l, const ZVec& v, const ZVec& w) {
  if (static_cast<int>(v.size()) != l.rank || static_cast<int>(w.size()) != l.rank)
    throw PreconditionError("bilinear_value: dimension mismatch");
  Int acc = 0;
  for (int i = 0; i < l.rank; ++i) {
    if (v[i] == 0) continue;
    Int row = 0;
    for (int j = 0; j < l.rank; ++j) {
      if (l.gram(i, j) == 0 || w[j] == 0) continue;
      row += Int(static_cast<long>(l.gram(i, j))) * w[j];
    }
    acc += v[i] * row;
  }
  return acc;
}

bool is_primitive(const ZVec& v) {
  Int c = content(v);
  if (c == 0) throw PreconditionError("is_primitive: zero vector");
  return c == 1;
}

bool is_even_unimodular(const Mat<i64>& gram) {
  if (!is_symmetric(gram)) return false;
  for (int i = 0; i < gram.rows; ++i)
    if (gram(i, i) % 2 != 0) return false;
  Int d = det_bareiss(to_int_mat(gram));
  return d == 1 || d == -1;
}

ZVec dual_pairing_solve(const GramLattice& l, const ZVec& w) {
  if (l.determinant != 1 && l.determinant != -1)
    throw PreconditionError("dual_pairing_solve: lattice not unimodular");
  if (!is_primitive(w))
    throw PreconditionError("dual_pairing_solve: vector not primitive");
  ZVec gw = mul(to_int_mat(l.gram), w);
  ExtGcdResult e = extended_gcd(gw);
  ISOCOUNT_CHECK(e.g == 1, "dual pairing: gram*w should be primitive");
  ZVec x = e.coeffs;
  ISOCOUNT_CHECK(bilinear_value(l, x, w) == 1, "dual pairing postcondition x.w == 1");
  return x;
}

std::string lattice_to_text(const GramLattice& l) {
  std::ostringstream os;
  os << l.rank << "\n";
  for (int i = 0; i < l.rank; ++i) {
    for (int j = 0; j < l.rank; ++j) {
      if (j) os << ' ';
      os << l.gram(i, j);
    }
    os << "\n";
  }
  return os.str();
}

GramLattice lattice_from_text(const std::string& text) {
  std::istringstream is(text);
  int n = 0;
  if (!(is >> n) || n <= 0)
    throw ConfigError("lattice file: bad rank line");
  Mat<i64> g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(is >> g(i, j)))
        throw ConfigError("lattice file: expected " + std::to_string(n * n) +
                          " integer entries");
  return make_lattice(std::move(g));
}

}  // namespace isocount
