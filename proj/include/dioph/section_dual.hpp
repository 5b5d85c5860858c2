#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dioph/geometry.hpp"

namespace dioph {

inline Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Integer factorial(long n) {
  Integer r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// Normalized volume of the central diagonal section of the cube [-1,1]^d:
// Δ_d = (1/(d-1)!) Σ_{k <= d/2} (-1)^k C(d,k) (d/2 - k)^{d-1}.
inline Rational delta_d(int d) {
  if (d < 2) throw Error(ErrorCode::kDomainError, "delta_d needs d >= 2");
  Rational sum = 0;
  for (int k = 0; 2 * k <= d; ++k) {
    Rational term = Rational(binomial(d, k)) * pow_int(Rational(d - 2 * k, 2), d - 1);
    sum += k % 2 ? Rational(-term) : term;
  }
  return sum / Rational(factorial(d - 1));
}

// Δ_d^{-1/(d-1)}, the improved Mahler factor.
inline Enclosure mahler_factor(int d) {
  return pow(Enclosure(delta_d(d)), Rational(-1, d - 1));
}

// Density at 0 of Σ a_i U_i with U_i uniform on [-1, 1] (zero entries are
// dropped). Exact for rational a.
inline Rational slice_density_at_zero(const RatVector& a) {
  std::vector<Rational> c;
  for (const auto& v : a)
    if (v != 0) c.push_back(abs(v));
  if (c.empty()) throw Error(ErrorCode::kDomainError, "zero normal");
  std::size_t k = c.size();
  Rational prod = 1;
  for (const auto& v : c) prod *= 2 * v;
  if (k == 1) return 1 / prod;
  Rational sum = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Rational s = 0;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        s -= c[i];
        sign = -sign;
      } else {
        s += c[i];
      }
    }
    if (s <= 0) continue;
    Rational p = pow_int(s, static_cast<long>(k - 1));
    sum += sign > 0 ? p : Rational(-p);
  }
  return sum / (Rational(factorial(static_cast<long>(k - 1))) * prod);
}

// Squared (d-1)-volume of {x ∈ [-1,1]^d : <a, x> = 0}: 4^d |a|^2 f(0)^2.
inline Rational cube_section_volume_squared(const RatVector& a) {
  Rational f = slice_density_at_zero(a);
  Rational norm2 = dot(a, a);
  return pow_int(Rational(4), static_cast<long>(a.size())) * norm2 * f * f;
}

// v ∈ (A B∞)^∧  <=>  |v| <= 2^{1-d} vol_{v/|v|}(A B∞)
//               <=>  2 |det A| f_{Aᵀv}(0) >= 1.
inline bool section_dual_contains(const RatMatrix& a, const RatVector& v) {
  if (sup_norm(v) == 0) return true;
  Rational det = abs(determinant(a));
  if (det == 0) throw Error(ErrorCode::kDomainError, "degenerate parallelepiped");
  RatVector w = a.transpose() * v;
  return 2 * det * slice_density_at_zero(w) >= 1;
}

// G with M = {z : |G z|∞ <= 1}; rows scaled by the box bounds.
inline RatMatrix box_gauge(const System& s, Side side, const RatVector& h,
                           const RatVector& r) {
  int d = s.d(), m = s.m;
  RatMatrix g(d, d);
  if (side == Side::kPrimal) {
    for (int j = 0; j < m; ++j) g(j, j) = 1 / r[j];
    for (int i = 0; i < s.n; ++i) {
      for (int j = 0; j < m; ++j) g(m + i, j) = s.theta(i, j) / h[i];
      g(m + i, m + i) = 1 / h[i];
    }
  } else {
    for (int i = 0; i < s.n; ++i) g(m + i, m + i) = 1 / h[i];
    for (int j = 0; j < m; ++j) {
      g(j, j) = 1 / r[j];
      for (int i = 0; i < s.n; ++i) g(j, m + i) = -s.theta(i, j) / r[j];
    }
  }
  return g;
}

// Three-valued containment of v in the section-dual body of a box: certain
// membership is decided on the shrunk box, certain non-membership on the
// inflated box.
inline Truth section_dual_contains(const Box& box, const RatVector& v) {
  auto decide = [&](const RatVector& h, const RatVector& r) {
    return section_dual_contains(inverse(box_gauge(box.system, box.side, h, r)), v);
  };
  if (decide(box.h_lo(), box.r_lo())) return Truth::kTrue;
  if (box.is_exact()) return Truth::kFalse;
  if (!decide(box.h_hi(), box.r_hi())) return Truth::kFalse;
  return Truth::kUnknown;
}

struct CubeWedgeReport {
  int d = 0;
  bool pass = true;
  long checked = 0;
  std::optional<RatVector> counterexample;
};

// Checks that the vertices and sampled boundary points of scale·Δ_d·B∞^d and
// of {Σ|x_i| <= 2, |x_j| <= 1} lie in (B∞^d)^∧.
inline CubeWedgeReport verify_cube_wedge_bodies(int d, const Rational& scale = 1,
                                                int samples = 64,
                                                std::uint64_t seed = 1) {
  if (d < 2 || d > 16) throw Error(ErrorCode::kDomainError, "d must be in [2, 16]");
  CubeWedgeReport rep;
  rep.d = d;
  RatMatrix cube = RatMatrix::identity(d);
  auto check = [&](const RatVector& v) {
    ++rep.checked;
    if (rep.pass && !section_dual_contains(cube, v)) {
      rep.pass = false;
      rep.counterexample = v;
    }
  };
  Rational side = scale * delta_d(d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    RatVector v(d);
    for (int i = 0; i < d; ++i) v[i] = (mask >> i & 1) ? Rational(-side) : side;
    check(v);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int si = -1; si <= 1; si += 2)
        for (int sj = -1; sj <= 1; sj += 2) {
          RatVector v(d, Rational(0));
          v[i] = si;
          v[j] = sj;
          check(v);
        }
  std::mt19937_64 gen(seed);
  auto unit = [&] {
    return Rational(static_cast<long>(gen() % 2001) - 1000, 1000);
  };
  for (int k = 0; k < samples; ++k) {
    // A point on a facet of the scaled cube.
    RatVector v(d);
    for (auto& x : v) x = unit() * side;
    v[gen() % d] = (gen() % 2) ? side : Rational(-side);
    check(v);
    // A point on the boundary of the octahedral body: two coordinates carry
    // the mass, the rest stay inside.
    RatVector w(d, Rational(0));
    int i = static_cast<int>(gen() % d);
    int j = static_cast<int>((i + 1 + gen() % (d - 1)) % d);
    Rational t = abs(unit());
    w[i] = (gen() % 2) ? Rational(1) : Rational(-1);
    w[j] = (gen() % 2) ? t : Rational(-t);
    Rational rest = 1 - t;
    for (int c = 0; c < d && rest > 0; ++c) {
      if (c == i || c == j) continue;
      Rational part = std::min(rest, abs(unit()));
      w[c] = (gen() % 2) ? part : Rational(-part);
      rest -= part;
    }
    check(w);
  }
  return rep;
}

}  // namespace dioph
