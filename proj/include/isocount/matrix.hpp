#pragma once

#include <initializer_list>
#include <vector>

#include "isocount/exact.hpp"

namespace isocount {

/// Minimal dense row-major matrix.
template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Mat(int r, int c, std::initializer_list<T> init) : rows(r), cols(c), a(init) {}

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  Mat<T> t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

template <class T>
Mat<T> mul(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const T& v = x(i, k);
      if (v == T(0)) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

template <class T>
std::vector<T> mul(const Mat<T>& m, const std::vector<T>& v) {
  std::vector<T> out(m.rows, T(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
  return out;
}

template <class T>
bool is_symmetric(const Mat<T>& m) {
  if (m.rows != m.cols) return false;
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

template <class S, class T>
Mat<T> convert(const Mat<S>& m, T (*f)(const S&)) {
  Mat<T> out(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = f(m.a[i]);
  return out;
}

inline Mat<Int> to_int_mat(const Mat<i64>& m) {
  Mat<Int> out(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = static_cast<long>(m.a[i]);
  return out;
}

inline Mat<Rat> to_rat_mat(const Mat<Int>& m) {
  Mat<Rat> out(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = Rat(m.a[i]);
  return out;
}

inline Mat<double> to_double_mat(const Mat<Rat>& m) {
  Mat<double> out(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = m.a[i].get_d();
  return out;
}

}  // namespace isocount
