#pragma once

#include <algorithm>
#include <vector>

#include "dioph/matrix.hpp"

namespace dioph {

struct HermiteForm {
  IntMatrix H;  // H = M * U
  IntMatrix U;  // unimodular
  std::size_t rank = 0;
};

namespace detail {

// Extended gcd with g = s*a + t*b, g >= 0.
inline void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s,
                 Integer& t) {
  Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

// Column operation on (H, U): cols (a, b) <- (a, b) * [[p, q], [r, s]].
inline void combine_columns(IntMatrix& h, IntMatrix& u, std::size_t a,
                            std::size_t b, const Integer& p, const Integer& q,
                            const Integer& r, const Integer& s) {
  auto apply = [&](IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Integer va = m(i, a), vb = m(i, b);
      m(i, a) = va * p + vb * r;
      m(i, b) = va * q + vb * s;
    }
  };
  apply(h);
  apply(u);
}

inline void add_column_multiple(IntMatrix& m, std::size_t target,
                                std::size_t source, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += f * m(i, source);
}

}  // namespace detail

// Column Hermite normal form. Pivot rows increase strictly with the column
// index, pivots are positive and entries left of a pivot lie in [0, pivot).
// Zero columns come last.
inline HermiteForm hnf(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.cols()), 0};
  IntMatrix& h = out.H;
  IntMatrix& u = out.U;
  std::size_t c = 0;
  for (std::size_t i = 0; i < h.rows() && c < h.cols(); ++i) {
    for (std::size_t j = c + 1; j < h.cols(); ++j) {
      if (h(i, j) == 0) continue;
      Integer g, s, t;
      detail::xgcd(h(i, c), h(i, j), g, s, t);
      Integer a = h(i, c) / g;
      Integer b = h(i, j) / g;
      // [[s, -b], [t, a]] has determinant s*a + t*b = 1.
      detail::combine_columns(h, u, c, j, s, Integer(-b), t, a);
    }
    if (h(i, c) == 0) continue;
    if (h(i, c) < 0) {
      for (std::size_t r = 0; r < h.rows(); ++r) h(r, c) = -h(r, c);
      for (std::size_t r = 0; r < u.rows(); ++r) u(r, c) = -u(r, c);
    }
    for (std::size_t j = 0; j < c; ++j) {
      Integer f = -floor_div(h(i, j), h(i, c));
      if (f == 0) continue;
      detail::add_column_multiple(h, j, c, f);
      detail::add_column_multiple(u, j, c, f);
    }
    ++c;
  }
  out.rank = c;
  return out;
}

inline std::size_t rank(const IntMatrix& m) { return hnf(m).rank; }

// Basis (as columns) of the integer kernel {v : M v = 0}. The result is
// saturated since it comes from a unimodular transform.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  HermiteForm f = hnf(m);
  std::vector<std::size_t> idx;
  for (std::size_t j = f.rank; j < m.cols(); ++j) idx.push_back(j);
  return f.U.columns(idx);
}

// Squared determinant of the lattice spanned by the columns, det(B^T B).
inline Integer det_squared(const IntMatrix& basis) {
  if (basis.cols() == 0) return 1;
  return determinant(gram(basis));
}

class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(IntMatrix basis) : basis_(std::move(basis)) {
    det_squared_ = dioph::det_squared(basis_);
    if (det_squared_ == 0)
      throw Error(ErrorCode::kDependentInput, "basis columns are dependent");
  }

  const IntMatrix& basis() const { return basis_; }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  const Integer& det_squared() const { return det_squared_; }

  // Whether an integer vector lies in the lattice: solve B c = v over Q and
  // test integrality of c.
  bool contains(const IntVector& v) const {
    if (rank() == 0) {
      for (const Integer& x : v)
        if (x != 0) return false;
      return true;
    }
    RatMatrix g = to_rational(gram(basis_));
    RatVector rhs(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < dim(); ++i) s += Rational(basis_(i, j) * v[i]);
      rhs[j] = s;
    }
    RatVector c = inverse(g) * rhs;
    for (std::size_t i = 0; i < dim(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < rank(); ++j) s += c[j] * Rational(basis_(i, j));
      if (s != Rational(v[i])) return false;
    }
    for (const Rational& q : c)
      if (denominator(q) != 1) return false;
    return true;
  }

 private:
  IntMatrix basis_;
  Integer det_squared_ = 1;
};

// The lattice span_R(columns) ∩ Z^d.
inline Lattice saturate(const IntMatrix& span_basis) {
  if (rank(span_basis) != span_basis.cols())
    throw Error(ErrorCode::kDependentInput, "span basis columns are dependent");
  IntMatrix ortho = kernel_basis(span_basis.transpose());
  return Lattice(kernel_basis(ortho.transpose()));
}

// Λ⊥ = span(L)⊥ ∩ Z^d for a saturated L.
inline Lattice orthogonal_lattice(const Lattice& l) {
  if (l.rank() > 0 && saturate(l.basis()).det_squared() != l.det_squared())
    throw Error(ErrorCode::kNotSaturated, "input lattice is not saturated");
  return Lattice(kernel_basis(l.basis().transpose()));
}

struct GrassmannCoords {
  std::size_t d = 0;
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> subsets;  // lexicographic, 0-based
  std::vector<Rational> coeffs;
};

namespace detail {

inline void next_subsets(std::size_t d, std::size_t k, std::size_t start,
                         std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < d; ++i) {
    cur.push_back(i);
    next_subsets(d, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t d,
                                                       std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  detail::next_subsets(d, k, 0, cur, out);
  return out;
}

// Plücker coordinates of v_1 ∧ ... ∧ v_k: the k×k minors with rows taken
// from each index subset, in lexicographic subset order.
template <class T>
GrassmannCoords grassmann(const std::vector<std::vector<T>>& vectors) {
  GrassmannCoords g;
  g.k = vectors.size();
  g.d = g.k ? vectors.front().size() : 0;
  if (g.k > g.d) throw Error(ErrorCode::kDomainError, "more vectors than dimension");
  g.subsets = k_subsets(g.d, g.k);
  for (const auto& s : g.subsets) {
    RatMatrix minor(g.k, g.k);
    for (std::size_t a = 0; a < g.k; ++a)
      for (std::size_t b = 0; b < g.k; ++b) minor(a, b) = Rational(vectors[b][s[a]]);
    g.coeffs.push_back(determinant(minor));
  }
  return g;
}

// |v_1 ∧ ... ∧ v_k|^2 = det of the Gram matrix.
template <class T>
Rational wedge_norm_squared(const std::vector<std::vector<T>>& vectors) {
  std::size_t k = vectors.size();
  RatMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Rational s = 0;
      for (std::size_t c = 0; c < vectors[i].size(); ++c)
        s += Rational(vectors[i][c]) * Rational(vectors[j][c]);
      g(i, j) = s;
    }
  return determinant(g);
}

}  // namespace dioph
