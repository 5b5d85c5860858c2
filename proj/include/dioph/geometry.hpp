#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dioph/enclosure.hpp"
#include "dioph/matrix.hpp"

namespace dioph {

enum class Side { kPrimal, kDual };

inline const char* side_name(Side s) { return s == Side::kPrimal ? "primal" : "dual"; }

// The linear system Θx = y with Θ an n×m rational matrix, d = n + m.
struct System {
  int n = 0;
  int m = 0;
  RatMatrix theta;

  int d() const { return n + m; }

  static System from(RatMatrix theta) {
    if (theta.rows() == 0 || theta.cols() == 0)
      throw Error(ErrorCode::kUsage, "theta must be non-empty");
    System s;
    s.n = static_cast<int>(theta.rows());
    s.m = static_cast<int>(theta.cols());
    s.theta = std::move(theta);
    return s;
  }

  System transposed() const { return from(theta.transpose()); }
};

// Θ = P / D with D the least common denominator.
struct ScaledSystem {
  Integer D = 1;
  IntMatrix P;
};

inline ScaledSystem scaled(const System& s) {
  ScaledSystem out;
  for (std::size_t i = 0; i < s.theta.rows(); ++i)
    for (std::size_t j = 0; j < s.theta.cols(); ++j)
      out.D = lcm(out.D, denominator(s.theta(i, j)));
  out.P = IntMatrix(s.theta.rows(), s.theta.cols());
  for (std::size_t i = 0; i < s.theta.rows(); ++i)
    for (std::size_t j = 0; j < s.theta.cols(); ++j)
      out.P(i, j) = numerator(s.theta(i, j)) * (out.D / denominator(s.theta(i, j)));
  return out;
}

// T = [[E_m, 0], [-Θ, E_n]] and T' = [[E_m, ᵗΘ], [0, E_n]], so T·ᵗT' = E_d.
inline std::pair<RatMatrix, RatMatrix> build_T(const System& s) {
  std::size_t d = s.d(), m = s.m;
  RatMatrix t = RatMatrix::identity(d);
  RatMatrix tp = RatMatrix::identity(d);
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.m; ++j) {
      t(m + i, j) = -s.theta(i, j);
      tp(j, m + i) = s.theta(i, j);
    }
  return {t, tp};
}

// z = (x, y) with x the first m and y the last n coordinates.
struct IntPoint {
  IntVector z;
  int m = 0;

  IntPoint() = default;
  IntPoint(IntVector coords, int m_) : z(std::move(coords)), m(m_) {}

  int d() const { return static_cast<int>(z.size()); }
  int n() const { return d() - m; }
  IntVector x() const { return IntVector(z.begin(), z.begin() + m); }
  IntVector y() const { return IntVector(z.begin() + m, z.end()); }
  bool is_zero() const {
    return std::all_of(z.begin(), z.end(), [](const Integer& v) { return v == 0; });
  }
  IntPoint operator-() const {
    IntPoint out = *this;
    for (Integer& v : out.z) v = -v;
    return out;
  }
  friend bool operator==(const IntPoint& a, const IntPoint& b) {
    return a.m == b.m && a.z == b.z;
  }
  friend bool operator<(const IntPoint& a, const IntPoint& b) { return a.z < b.z; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (i) s += ", ";
      s += z[i].str();
    }
    return s + ")";
  }
};

inline Integer sup_norm(const IntVector& v) {
  Integer best = 0;
  for (const Integer& x : v) best = std::max(best, abs(x));
  return best;
}

inline Rational sup_norm(const RatVector& v) {
  Rational best = 0;
  for (const Rational& x : v) best = std::max(best, abs(x));
  return best;
}

// Θx + y, the primal residual.
inline RatVector primal_residual(const System& s, const IntPoint& p) {
  RatVector out(s.n);
  for (int i = 0; i < s.n; ++i) {
    Rational v = Rational(p.z[s.m + i]);
    for (int j = 0; j < s.m; ++j) v += s.theta(i, j) * Rational(p.z[j]);
    out[i] = v;
  }
  return out;
}

// x - ᵗΘy, the dual residual.
inline RatVector dual_residual(const System& s, const IntPoint& p) {
  RatVector out(s.m);
  for (int j = 0; j < s.m; ++j) {
    Rational v = Rational(p.z[j]);
    for (int i = 0; i < s.n; ++i) v -= s.theta(i, j) * Rational(p.z[s.m + i]);
    out[j] = v;
  }
  return out;
}

// M_{h,r} (primal): |x_j| <= r_j, |(Θx)_i + y_i| <= h_i.
// M̂_{h,r} (dual):  |y_i| <= h_i, |x_j - (ᵗΘy)_j| <= r_j.
// h has n entries and r has m entries; scalar boxes repeat one value.
struct Box {
  System system;
  Side side = Side::kPrimal;
  std::vector<Enclosure> h;
  std::vector<Enclosure> r;

  static Box make(const System& s, Side side, const Enclosure& h,
                  const Enclosure& r) {
    return make(s, side, std::vector<Enclosure>(s.n, h),
                std::vector<Enclosure>(s.m, r));
  }
  static Box make(const System& s, Side side, std::vector<Enclosure> h,
                  std::vector<Enclosure> r) {
    if (static_cast<int>(h.size()) != s.n || static_cast<int>(r.size()) != s.m)
      throw Error(ErrorCode::kUsage, "box bound count mismatch");
    for (const auto& e : h)
      if (!e.positive() && !(e.lo() == 0 && e.hi() > 0))
        throw Error(ErrorCode::kDomainError, "box bounds must be positive");
    for (const auto& e : r)
      if (!e.positive() && !(e.lo() == 0 && e.hi() > 0))
        throw Error(ErrorCode::kDomainError, "box bounds must be positive");
    return Box{s, side, std::move(h), std::move(r)};
  }

  bool is_exact() const {
    for (const auto& e : h)
      if (!e.is_exact()) return false;
    for (const auto& e : r)
      if (!e.is_exact()) return false;
    return true;
  }

  RatVector h_lo() const { return endpoints(h, true); }
  RatVector h_hi() const { return endpoints(h, false); }
  RatVector r_lo() const { return endpoints(r, true); }
  RatVector r_hi() const { return endpoints(r, false); }

  // The shrunk box: membership here is certain membership in the real box.
  Box conservative() const { return with(h_lo(), r_lo()); }
  // The inflated box: non-membership here is certain non-membership.
  Box inflated() const { return with(h_hi(), r_hi()); }

 private:
  static RatVector endpoints(const std::vector<Enclosure>& v, bool lower) {
    RatVector out;
    for (const auto& e : v) out.push_back(lower ? e.lo() : e.hi());
    return out;
  }
  Box with(const RatVector& hv, const RatVector& rv) const {
    Box b{system, side, {}, {}};
    for (const auto& q : hv) b.h.emplace_back(q);
    for (const auto& q : rv) b.r.emplace_back(q);
    return b;
  }
};

// Exact membership for rational bounds.
inline bool contains_exact(const System& s, Side side, const RatVector& h,
                           const RatVector& r, const IntPoint& p) {
  if (side == Side::kPrimal) {
    for (int j = 0; j < s.m; ++j)
      if (Rational(abs(p.z[j])) > r[j]) return false;
    RatVector res = primal_residual(s, p);
    for (int i = 0; i < s.n; ++i)
      if (abs(res[i]) > h[i]) return false;
    return true;
  }
  for (int i = 0; i < s.n; ++i)
    if (Rational(abs(p.z[s.m + i])) > h[i]) return false;
  RatVector res = dual_residual(s, p);
  for (int j = 0; j < s.m; ++j)
    if (abs(res[j]) > r[j]) return false;
  return true;
}

// Three-valued membership: kTrue if inside the conservative box, kFalse if
// outside the inflated box, kUnknown in between.
inline Truth box_contains(const Box& box, const IntPoint& p) {
  if (p.d() != box.system.d() || p.m != box.system.m)
    throw Error(ErrorCode::kUsage, "point dimension mismatch");
  if (contains_exact(box.system, box.side, box.h_lo(), box.r_lo(), p))
    return Truth::kTrue;
  if (box.is_exact()) return Truth::kFalse;
  if (!contains_exact(box.system, box.side, box.h_hi(), box.r_hi(), p))
    return Truth::kFalse;
  return Truth::kUnknown;
}

}  // namespace dioph
