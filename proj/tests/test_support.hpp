#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dioph/geometry.hpp"
#include "dioph/matrix.hpp"

namespace testing_support {

using dioph::Integer;
using dioph::IntMatrix;
using dioph::Rational;
using dioph::RatMatrix;

inline long uniform(std::mt19937_64& g, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(g);
}

inline IntMatrix random_int_matrix(std::mt19937_64& g, std::size_t rows,
                                   std::size_t cols, long bound) {
  IntMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = uniform(g, -bound, bound);
  return a;
}

inline dioph::System random_system(std::mt19937_64& g, int n, int m, long den) {
  RatMatrix t(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) t(i, j) = Rational(uniform(g, -den, den), uniform(g, 1, den));
  return dioph::System::from(t);
}

// Calls f on every integer vector with |v_i| <= bound.
template <class F>
void for_each_in_cube(std::size_t d, long bound, F&& f) {
  std::vector<long> v(d, -bound);
  while (true) {
    f(v);
    std::size_t k = d;
    while (k > 0 && v[k - 1] == bound) v[--k] = -bound;
    if (k == 0) return;
    ++v[k - 1];
  }
}

inline dioph::IntVector to_int_vector(const std::vector<long>& v) {
  return dioph::IntVector(v.begin(), v.end());
}

// Membership written out directly from the inequalities, independent of the
// library's box code. Primal: |x_j| <= r_j, |Σ_j θ_ij x_j + y_i| <= h_i.
// Dual: |y_i| <= h_i, |x_j - Σ_i θ_ij y_i| <= r_j.
inline bool oracle_member(const dioph::System& s, bool dual, const std::vector<Rational>& h,
                          const std::vector<Rational>& r, const dioph::IntVector& z) {
  auto absq = [](const Rational& q) { return q < 0 ? Rational(-q) : q; };
  int n = s.n, m = s.m;
  if (!dual) {
    for (int j = 0; j < m; ++j)
      if (absq(Rational(z[j])) > r[j]) return false;
    for (int i = 0; i < n; ++i) {
      Rational v = Rational(z[m + i]);
      for (int j = 0; j < m; ++j) v += s.theta(i, j) * Rational(z[j]);
      if (absq(v) > h[i]) return false;
    }
    return true;
  }
  for (int i = 0; i < n; ++i)
    if (absq(Rational(z[m + i])) > h[i]) return false;
  for (int j = 0; j < m; ++j) {
    Rational v = Rational(z[j]);
    for (int i = 0; i < n; ++i) v -= s.theta(i, j) * Rational(z[m + i]);
    if (absq(v) > r[j]) return false;
  }
  return true;
}

inline Integer oracle_dot(const dioph::IntVector& a, const dioph::IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace testing_support
