#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "dioph/geometry.hpp"

namespace dioph {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

namespace detail {

inline Int128 floor_div(Int128 a, Int128 b) {
  Int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Integer floor_div(const Integer& a, const Integer& b) {
  return dioph::floor_div(a, b);
}
template <class Int>
Int ceil_div(const Int& a, const Int& b) {
  return -floor_div(Int(-a), b);
}
inline Int128 abs_int(Int128 v) { return v < 0 ? -v : v; }
inline Integer abs_int(const Integer& v) { return abs(v); }

// Nonnegative residue a mod b for b > 0.
template <class Int>
Int mod(const Int& a, const Int& b) {
  return a - b * floor_div(a, b);
}

// Distance from a to the nearest multiple of b.
template <class Int>
Int dist_to_multiple(const Int& a, const Int& b) {
  Int r = mod(a, b);
  Int other = b - r;
  return r < other ? r : other;
}

// Integer q minimizing |a + b q|; ties go to the larger q.
template <class Int>
Int nearest_shift(const Int& a, const Int& b) {
  Int r = mod(a, b);
  Int q = -floor_div(a, b);
  if (2 * r > b) q -= 1;
  return q;
}

template <class Int>
Int convert(const Integer& v);
template <>
inline Int128 convert<Int128>(const Integer& v) {
  return to_int128(v);
}
template <>
inline Integer convert<Integer>(const Integer& v) {
  return v;
}
inline Integer to_big(Int128 v) { return to_integer(v); }
inline Integer to_big(const Integer& v) { return v; }

}  // namespace detail

// Integer search problem in scaled form: u ∈ Z^b with |u_k| <= U_k and
// w ∈ Z^a with |(A u)_i + D w_i| <= W_i.
struct ScaledProblem {
  IntMatrix A;
  Integer D = 1;
  IntVector U;
  IntVector W;

  // Bound on every intermediate magnitude of the walk.
  Integer magnitude() const {
    Integer best = D;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      Integer s = 0;
      for (std::size_t k = 0; k < A.cols(); ++k) s += abs(A(i, k)) * U[k];
      best = std::max(best, Integer(s + W[i] + D));
    }
    return best;
  }
  bool fits_int128() const { return bit_length(magnitude()) + 3 < 124; }

  Integer candidate_count() const {
    Integer c = 1;
    for (const Integer& u : U) c *= 2 * u + 1;
    return c;
  }
};

// Walks u in lexicographic order and, for each u, all admissible w in
// lexicographic order. The visitor returns false to stop.
template <class Int, class Visit>
bool scaled_walk(const ScaledProblem& pr, Visit&& visit) {
  std::size_t a = pr.A.rows(), b = pr.A.cols();
  std::vector<std::vector<Int>> A(a, std::vector<Int>(b));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < b; ++k) A[i][k] = detail::convert<Int>(pr.A(i, k));
  Int D = detail::convert<Int>(pr.D);
  std::vector<Int> U(b), W(a), u(b), w(a), s(a, Int(0)), lo(a), hi(a);
  for (std::size_t k = 0; k < b; ++k) {
    U[k] = detail::convert<Int>(pr.U[k]);
    u[k] = -U[k];
  }
  for (std::size_t i = 0; i < a; ++i) {
    W[i] = detail::convert<Int>(pr.W[i]);
    for (std::size_t k = 0; k < b; ++k) s[i] += A[i][k] * u[k];
  }
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < a && ok; ++i) {
      lo[i] = detail::ceil_div(Int(-W[i] - s[i]), D);
      hi[i] = detail::floor_div(Int(W[i] - s[i]), D);
      ok = lo[i] <= hi[i];
    }
    if (ok) {
      w = lo;
      while (true) {
        if (!visit(u, w)) return false;
        std::size_t i = a;
        while (i > 0 && w[i - 1] == hi[i - 1]) {
          w[i - 1] = lo[i - 1];
          --i;
        }
        if (i == 0) break;
        w[i - 1] += 1;
      }
    }
    std::size_t k = b;
    while (k > 0 && u[k - 1] == U[k - 1]) {
      for (std::size_t i = 0; i < a; ++i) s[i] -= A[i][k - 1] * (2 * U[k - 1]);
      u[k - 1] = -U[k - 1];
      --k;
    }
    if (k == 0) break;
    u[k - 1] += 1;
    for (std::size_t i = 0; i < a; ++i) s[i] += A[i][k - 1];
  }
  return true;
}

// Scaled form of a box with rational bounds h (n entries) and r (m entries).
inline ScaledProblem scaled_problem(const System& s, Side side, const RatVector& h,
                                    const RatVector& r) {
  ScaledSystem sc = scaled(s);
  ScaledProblem pr;
  pr.D = sc.D;
  if (side == Side::kPrimal) {
    pr.A = sc.P;
    for (const auto& q : r) pr.U.push_back(floor(q));
    for (const auto& q : h) pr.W.push_back(floor(Rational(q * sc.D)));
  } else {
    pr.A = sc.P.transpose();
    for (std::size_t i = 0; i < pr.A.rows(); ++i)
      for (std::size_t j = 0; j < pr.A.cols(); ++j) pr.A(i, j) = -pr.A(i, j);
    for (const auto& q : h) pr.U.push_back(floor(q));
    for (const auto& q : r) pr.W.push_back(floor(Rational(q * sc.D)));
  }
  for (const auto& u : pr.U)
    if (u < 0) throw Error(ErrorCode::kDomainError, "negative box bound");
  for (const auto& w : pr.W)
    if (w < 0) throw Error(ErrorCode::kDomainError, "negative box bound");
  return pr;
}

// Calls visit(IntPoint) for every nonzero integer point of the closed box with
// exact bounds. Primal points arrive in lexicographic order; dual points in
// lexicographic order of y. Returns false if the visitor stopped early.
template <class Visit>
bool visit_box_points(const System& s, Side side, const RatVector& h,
                      const RatVector& r, Visit&& visit,
                      std::uint64_t budget = kDefaultBudget) {
  ScaledProblem pr = scaled_problem(s, side, h, r);
  if (pr.candidate_count() > budget)
    throw Error(ErrorCode::kBudgetExceeded,
                "box has " + pr.candidate_count().str() + " candidates, budget " +
                    std::to_string(budget));
  std::uint64_t emitted = 0;
  auto emit = [&](const auto& u, const auto& w) {
    IntPoint p;
    p.m = s.m;
    p.z.resize(s.d());
    const auto& xs = side == Side::kPrimal ? u : w;
    const auto& ys = side == Side::kPrimal ? w : u;
    bool zero = true;
    for (int j = 0; j < s.m; ++j) {
      p.z[j] = detail::to_big(xs[j]);
      zero = zero && xs[j] == 0;
    }
    for (int i = 0; i < s.n; ++i) {
      p.z[s.m + i] = detail::to_big(ys[i]);
      zero = zero && ys[i] == 0;
    }
    if (zero) return true;
    if (++emitted > budget)
      throw Error(ErrorCode::kBudgetExceeded, "box has too many points");
    return static_cast<bool>(visit(p));
  };
  if (pr.fits_int128()) return scaled_walk<Int128>(pr, emit);
  return scaled_walk<Integer>(pr, emit);
}

inline std::vector<IntPoint> enumerate_nonzero(const System& s, Side side,
                                               const RatVector& h,
                                               const RatVector& r,
                                               std::uint64_t budget = kDefaultBudget) {
  std::vector<IntPoint> out;
  visit_box_points(
      s, side, h, r,
      [&](const IntPoint& p) {
        out.push_back(p);
        return true;
      },
      budget);
  if (side == Side::kDual) std::sort(out.begin(), out.end());
  return out;
}

// Nonzero integer points certainly inside the box (its conservative part),
// lexicographically ordered.
inline std::vector<IntPoint> enumerate_nonzero(const Box& box,
                                               std::uint64_t budget = kDefaultBudget) {
  return enumerate_nonzero(box.system, box.side, box.h_lo(), box.r_lo(), budget);
}

// First nonzero point of the conservative box satisfying pred, if any.
template <class Pred>
std::optional<IntPoint> find_point(const Box& box, Pred&& pred,
                                   std::uint64_t budget = kDefaultBudget) {
  std::optional<IntPoint> found;
  visit_box_points(
      box.system, box.side, box.h_lo(), box.r_lo(),
      [&](const IntPoint& p) {
        if (!pred(p)) return true;
        found = p;
        return false;
      },
      budget);
  return found;
}

inline std::optional<IntPoint> find_point(const Box& box,
                                          std::uint64_t budget = kDefaultBudget) {
  return find_point(box, [](const IntPoint&) { return true; }, budget);
}

}  // namespace dioph
