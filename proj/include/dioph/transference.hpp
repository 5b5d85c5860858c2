#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dioph/certificate.hpp"
#include "dioph/enumerate.hpp"
#include "dioph/function_spec.hpp"

namespace dioph {

// 2d(d-1) · max(|x1||x2|, |y1||y2|, max(|x1|,|x2|) max(|y1|,|y2|))², an upper
// bound for |z1 ∧ z2|².
inline Rational cube_section_bound(const IntPoint& z1, const IntPoint& z2) {
  if (z1.d() != z2.d() || z1.m != z2.m) throw Error(ErrorCode::kUsage, "point shape mismatch");
  Integer x1 = sup_norm(z1.x()), x2 = sup_norm(z2.x());
  Integer y1 = sup_norm(z1.y()), y2 = sup_norm(z2.y());
  Integer best = std::max({Integer(x1 * x2), Integer(y1 * y2),
                           Integer(std::max(x1, x2) * std::max(y1, y2))});
  Rational bound = wedge_constant_squared(z1.d()) * Rational(best * best);
  if (wedge_norm_squared(std::vector<IntVector>{z1.z, z2.z}) > bound)
    throw Error(ErrorCode::kDomainError, "wedge bound violated");
  return bound;
}

namespace detail {

inline constexpr int kPrecisionAttempts = 4;

// Re-runs fn at growing precision while it reports a boundary miss.
template <class Fn>
auto with_precision_retry(Fn&& fn) {
  long bits = precision_bits();
  for (int attempt = 0;; ++attempt) {
    try {
      PrecisionScope scope(bits);
      return fn();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPrecisionExhausted || attempt + 1 >= kPrecisionAttempts)
        throw;
      bits *= 4;
    }
  }
}

// The representative of ±p whose first nonzero coordinate is positive.
inline IntPoint normalized(const IntPoint& p) {
  for (const auto& v : p.z) {
    if (v > 0) return p;
    if (v < 0) return -p;
  }
  return p;
}

// p / gcd(p); stays inside any symmetric convex box holding p.
inline IntPoint primitive(const IntPoint& p) {
  Integer g = 0;
  for (const auto& v : p.z) g = gcd(g, v);
  if (g <= 1) return p;
  IntPoint q = p;
  for (auto& v : q.z) v /= g;
  return q;
}

inline nlohmann::ordered_json rational_json(const Rational& q) { return to_string(q); }

inline void require_positive(const Rational& q, const char* what) {
  if (q <= 0) throw Error(ErrorCode::kDomainError, std::string(what) + " must be positive");
}

// Nonzero point of the conservative box orthogonal to every vector in `ortho`.
inline IntPoint search_target(const Box& box, const std::vector<IntPoint>& ortho,
                              std::uint64_t budget) {
  auto found = find_point(
      box,
      [&](const IntPoint& p) {
        for (const auto& v : ortho)
          if (!orthogonal(p, v)) return false;
        return true;
      },
      budget);
  if (!found)
    throw Error(ErrorCode::kPrecisionExhausted,
                "guaranteed point not found in the conservative target box");
  return normalized(primitive(*found));
}

inline Certificate start_certificate(CertificateKind kind, const System& s) {
  Certificate c;
  c.kind = kind;
  c.system = s;
  return c;
}

// Mahler-type search of M̂ with per-coordinate bounds.
inline Certificate mahler_core(CertificateKind kind, const System& s, const Rational& X,
                               const Rational& U, const IntPoint& witness, int k,
                               std::uint64_t budget) {
  require_positive(X, "X");
  require_positive(U, "U");
  int d = s.d(), n = s.n, m = s.m;
  if (witness.d() != d || witness.m != m) throw Error(ErrorCode::kUsage, "witness shape mismatch");
  if (witness.is_zero() ||
      !contains_exact(s, Side::kPrimal, RatVector(n, U), RatVector(m, X), witness))
    throw Error(ErrorCode::kHypothesisViolated, "witness is not a nonzero point of M_{U,X}");
  Rational ybase = pow_int(X, m) * pow_int(U, 1 - m);
  Rational vbase = pow_int(X, 1 - n) * pow_int(U, n);
  Certificate c = start_certificate(kind, s);
  c.inputs["X"] = rational_json(X);
  c.inputs["U"] = rational_json(U);
  c.witnesses = {witness};
  c.check("witness_in_primal_box", true);
  std::vector<Enclosure> hy, rx;
  if (kind == CertificateKind::kMahler) {
    Rational inv = 1 / delta_d(d);
    Enclosure Y = root(Enclosure(Rational(ybase * inv)), d - 1);
    Enclosure V = root(Enclosure(Rational(vbase * inv)), d - 1);
    hy.assign(n, Y);
    rx.assign(m, V);
    c.inputs["Y"] = enclosure_json(Y);
    c.inputs["V"] = enclosure_json(V);
    Enclosure D(delta_d(d));
    c.check("identity_X", (pow(Y, static_cast<long>(n)) * pow(V, static_cast<long>(m - 1)) * D)
                              .contains(X));
    c.check("identity_U", (pow(Y, static_cast<long>(n - 1)) * pow(V, static_cast<long>(m)) * D)
                              .contains(U));
    c.check("factor_at_most_d_minus_1", mahler_factor(d).hi() <= d - 1);
  } else {
    if (k < 1 || k > d) throw Error(ErrorCode::kUsage, "k must lie in 1..d");
    Enclosure Y0 = root(Enclosure(ybase), d - 1);
    Enclosure V0 = root(Enclosure(vbase), d - 1);
    for (int i = 0; i < n; ++i) hy.push_back(k == m + i + 1 ? Enclosure(d - 1) * Y0 : Y0);
    for (int j = 0; j < m; ++j) rx.push_back(k == j + 1 ? Enclosure(d - 1) * V0 : V0);
    c.inputs["k"] = k;
    c.inputs["Y0"] = enclosure_json(Y0);
    c.inputs["V0"] = enclosure_json(V0);
    bool inside = true;
    for (const auto& y : hy) inside = inside && y.hi() <= (Enclosure(d - 1) * Y0).hi();
    for (const auto& v : rx) inside = inside && v.hi() <= (Enclosure(d - 1) * V0).hi();
    c.check("inside_classical_box", inside);
  }
  c.target_box = Box::make(s, Side::kDual, hy, rx);
  c.output_point = search_target(c.target_box, {}, budget);
  c.check("output_in_target_box", box_contains(c.target_box, c.output_point) == Truth::kTrue);
  return c;
}

// Shared tail of every main-lemma style procedure: hypothesis already
// settled, find the orthogonal point and cross-check against Λ⊥.
inline void main_lemma_search(Certificate& c, const IntPoint& v1, const IntPoint& v2,
                              std::uint64_t budget) {
  c.witnesses = {v1, v2};
  c.output_point = search_target(c.target_box, {v1, v2}, budget);
  c.check("output_in_target_box", box_contains(c.target_box, c.output_point) == Truth::kTrue);
  c.check("output_orthogonal", orthogonal(c.output_point, v1) && orthogonal(c.output_point, v2));
  Lattice span = saturate(IntMatrix::from_columns(std::vector<IntVector>{v1.z, v2.z}));
  Lattice perp = orthogonal_lattice(span);
  c.check("in_orthogonal_lattice", perp.contains(c.output_point.z));
  c.check("covolumes_agree", perp.det_squared() == span.det_squared());
}

inline void require_pair(const System& s, const IntPoint& v1, const IntPoint& v2) {
  if (s.d() < 3) throw Error(ErrorCode::kOnlyDGe3, "the section argument needs d >= 3");
  for (const auto* v : {&v1, &v2})
    if (v->d() != s.d() || v->m != s.m) throw Error(ErrorCode::kUsage, "witness shape mismatch");
  if (collinear(v1, v2))
    throw Error(ErrorCode::kNonCollinearRequired, "v1 and v2 are collinear");
}

inline Certificate main_lemma_impl(CertificateKind kind, const System& s, const IntPoint& v1,
                                   const IntPoint& v2, const Enclosure& h, const Enclosure& r,
                                   const Rational& c2, std::uint64_t budget) {
  require_pair(s, v1, v2);
  if (!h.positive() || !r.positive()) throw Error(ErrorCode::kDomainError, "h, r must be positive");
  ProductBounds pb = product_bounds(s.n, s.m, h, r, c2);
  Truth hyp = products_within(s, v1, v2, pb.P2, pb.Qh2, pb.Qr2);
  if (hyp != Truth::kTrue)
    throw Error(ErrorCode::kHypothesisViolated,
                std::string("product bound does not hold (") + truth_name(hyp) + ")");
  Certificate c = start_certificate(kind, s);
  c.inputs["h"] = enclosure_json(h);
  c.inputs["r"] = enclosure_json(r);
  c.inputs["h1"] = rational_json(residual_norm(s, v1));
  c.inputs["r1"] = rational_json(Rational(sup_norm(v1.x())));
  c.inputs["h2"] = rational_json(residual_norm(s, v2));
  c.inputs["r2"] = rational_json(Rational(sup_norm(v2.x())));
  c.inputs["constant_squared"] = rational_json(c2);
  c.check("hypothesis", true);
  c.target_box = Box::make(s, Side::kDual, h, r);
  main_lemma_search(c, v1, v2, budget);
  return c;
}

}  // namespace detail

// Improved Mahler transfer: a point of M_{U,X} yields one of M̂_{Y,V} with
// Y = (Δ^{-1} X^m U^{1-m})^{1/(d-1)}, V = (Δ^{-1} X^{1-n} U^n)^{1/(d-1)}.
inline Certificate mahler_transfer(const System& s, const Rational& X, const Rational& U,
                                   const IntPoint& witness,
                                   std::uint64_t budget = kDefaultBudget) {
  return detail::with_precision_retry([&] {
    return detail::mahler_core(CertificateKind::kMahler, s, X, U, witness, 0, budget);
  });
}

// One coordinate k (1-based, x coordinates first) carries the factor d-1,
// the others carry 1.
inline Certificate mahler_transfer_asymmetric(const System& s, const Rational& X,
                                              const Rational& U, const IntPoint& witness,
                                              int k, std::uint64_t budget = kDefaultBudget) {
  return detail::with_precision_retry([&] {
    return detail::mahler_core(CertificateKind::kMahlerAsymmetric, s, X, U, witness, k, budget);
  });
}

// Nonzero point of M̂_{h,r} orthogonal to v1 and v2, given
// max(r² r1 r2, h² h1 h2, hr max(r_i) max(h_i)) <= h^n r^m / sqrt(2d(d-1)).
inline Certificate main_lemma_transfer(const System& s, const IntPoint& v1, const IntPoint& v2,
                                       const Enclosure& h, const Enclosure& r,
                                       std::uint64_t budget = kDefaultBudget) {
  return detail::main_lemma_impl(CertificateKind::kMainLemma, s, v1, v2, h, r,
                                 wedge_constant_squared(s.d()), budget);
}

// The d = 3 version with constant 2 in place of 2√3.
inline Certificate main_lemma_transfer_3d(const System& s, const IntPoint& v1,
                                          const IntPoint& v2, const Enclosure& h,
                                          const Enclosure& r,
                                          std::uint64_t budget = kDefaultBudget) {
  if (s.d() != 3) throw Error(ErrorCode::kOnly3D, "the sharpened lemma needs d = 3");
  return detail::main_lemma_impl(CertificateKind::kLemma3d, s, v1, v2, h, r, Rational(4),
                                 budget);
}

struct SemicoreWitnesses {
  IntPoint v1, v2;
};

// Direction 1: v1 ∈ M_{Φ,t}, v2 ∈ M_{Ψ,t}, taken as the two best residuals
// among pairwise non-collinear points of M_{Φ,t}. Direction -1: v1 ∈ M_{t,Φ},
// v2 ∈ M_{t,Ψ}, ranked by |x|∞ instead.
inline SemicoreWitnesses semicore_witnesses(const System& s, const Rational& t,
                                            const Rational& Phi, const Rational& Psi,
                                            int direction,
                                            std::uint64_t budget = kDefaultBudget) {
  RatVector h(s.n, direction == 1 ? Phi : t), r(s.m, direction == 1 ? t : Phi);
  std::vector<IntPoint> pts = enumerate_nonzero(s, Side::kPrimal, h, r, budget);
  auto key = [&](const IntPoint& p) {
    return direction == 1 ? detail::residual_norm(s, p) : Rational(sup_norm(p.x()));
  };
  std::optional<IntPoint> v2;
  Rational best;
  for (const auto& p : pts) {
    Rational k = key(p);
    if (!v2 || k < best) {
      v2 = p;
      best = k;
    }
  }
  if (!v2 || best > Psi)
    throw Error(ErrorCode::kNoWitnesses, "no point in the smaller box");
  std::optional<IntPoint> v1;
  for (const auto& p : pts) {
    if (detail::collinear(p, *v2)) continue;
    Rational k = key(p);
    if (!v1 || k < best) {
      v1 = p;
      best = k;
    }
  }
  if (!v1) throw Error(ErrorCode::kNoWitnesses, "no point non-collinear with the first");
  return {detail::normalized(*v1), detail::normalized(*v2)};
}

inline Certificate semicore(const System& s, const Rational& t, const Rational& Phi,
                            const Rational& Psi, int direction, const IntPoint& v1,
                            const IntPoint& v2, std::uint64_t budget = kDefaultBudget) {
  if (direction != 1 && direction != -1) throw Error(ErrorCode::kUsage, "direction must be 1 or -1");
  int d = s.d(), n = s.n, m = s.m;
  if (d < 3) throw Error(ErrorCode::kOnlyDGe3, "semicore needs d >= 3");
  detail::require_positive(t, "t");
  detail::require_positive(Psi, "Psi");
  if (Phi < Psi) throw Error(ErrorCode::kDomainError, "Phi must be at least Psi");
  detail::require_pair(s, v1, v2);
  // Membership of the witnesses in their boxes.
  RatVector tn(n, t), tm(m, t);
  bool in1 = direction == 1 ? contains_exact(s, Side::kPrimal, RatVector(n, Phi), tm, v1)
                            : contains_exact(s, Side::kPrimal, tn, RatVector(m, Phi), v1);
  bool in2 = direction == 1 ? contains_exact(s, Side::kPrimal, RatVector(n, Psi), tm, v2)
                            : contains_exact(s, Side::kPrimal, tn, RatVector(m, Psi), v2);
  if (!in1 || !in2) throw Error(ErrorCode::kHypothesisViolated, "witness outside its box");
  // Exact products: P = tΦ, and {ΦΨ, t²Φ/Ψ} for the (h, r) or (r, h) pair.
  Rational P = t * Phi, A = Phi * Psi, B = t * t * Phi / Psi;
  Enclosure P2(Rational(P * P)), A2(Rational(A * A)), B2(Rational(B * B));
  Truth hyp = direction == 1 ? detail::products_within(s, v1, v2, P2, A2, B2)
                             : detail::products_within(s, v1, v2, P2, B2, A2);
  if (hyp != Truth::kTrue) throw Error(ErrorCode::kHypothesisViolated, "product bound fails");
  return detail::with_precision_retry([&] {
    Rational c2 = wedge_constant_squared(d);
    // h^{2(d-2)} and r^{2(d-2)} are rational.
    Rational hb, rb;
    if (direction == 1) {
      hb = pow_int(t, m) * Phi * pow_int(Psi, 1 - m);
      rb = pow_int(t, 2 - n) * Phi * pow_int(Psi, n - 1);
    } else {
      hb = pow_int(t, 2 - m) * Phi * pow_int(Psi, m - 1);
      rb = pow_int(t, n) * Phi * pow_int(Psi, 1 - n);
    }
    Enclosure h = root(Enclosure(Rational(c2 * hb * hb)), 2 * (d - 2));
    Enclosure r = root(Enclosure(Rational(c2 * rb * rb)), 2 * (d - 2));
    Certificate c = detail::start_certificate(
        direction == 1 ? CertificateKind::kSemicore1 : CertificateKind::kSemicore2, s);
    c.inputs["t"] = detail::rational_json(t);
    c.inputs["Phi"] = detail::rational_json(Phi);
    c.inputs["Psi"] = detail::rational_json(Psi);
    c.inputs["direction"] = direction;
    c.inputs["h"] = detail::enclosure_json(h);
    c.inputs["r"] = detail::enclosure_json(r);
    c.check("witnesses_in_boxes", true);
    c.check("hypothesis", true);
    Enclosure cc = wedge_constant(d);
    Enclosure first = direction == 1
                          ? pow(h, static_cast<long>(n - 2)) * pow(r, static_cast<long>(m))
                          : pow(h, static_cast<long>(n)) * pow(r, static_cast<long>(m - 2));
    Enclosure second = pow(h, static_cast<long>(n - 1)) * pow(r, static_cast<long>(m - 1));
    c.check("identity_products", first.overlaps(cc * Enclosure(A)));
    c.check("identity_mixed", second.overlaps(cc * Enclosure(P)));
    c.target_box = Box::make(s, Side::kDual, h, r);
    detail::main_lemma_search(c, v1, v2, budget);
    return c;
  });
}

inline Certificate semicore(const System& s, const Rational& t, const Rational& Phi,
                            const Rational& Psi, int direction,
                            std::uint64_t budget = kDefaultBudget) {
  if (s.d() < 3) throw Error(ErrorCode::kOnlyDGe3, "semicore needs d >= 3");
  if (direction != 1 && direction != -1) throw Error(ErrorCode::kUsage, "direction must be 1 or -1");
  SemicoreWitnesses w = semicore_witnesses(s, t, Phi, Psi, direction, budget);
  return semicore(s, t, Phi, Psi, direction, w.v1, w.v2, budget);
}

// Minimal μ with a nonzero point of M_{μh, μr}, over the finite set of ratios
// max(|x|∞ / r, |Θx + y|∞ / h); ties go to the lexicographically first point.
struct Dilation {
  Rational mu;
  IntPoint point;
  bool residual_side = false;  // μ attained by the residual
};

namespace detail {

// Upper bound for (base)^(1/k), base > 0 rational.
inline Rational root_upper(const Rational& base, int k) {
  return root(Enclosure(base), static_cast<unsigned long>(k)).hi();
}

// Among nonzero points of M_{h,r} passing `keep`, the one minimizing score.
template <class Keep, class Score>
std::optional<IntPoint> argmin_in_box(const System& s, const Rational& h, const Rational& r,
                                      Keep&& keep, Score&& score, std::uint64_t budget) {
  std::optional<IntPoint> best;
  Rational best_score;
  visit_box_points(
      s, Side::kPrimal, RatVector(s.n, h), RatVector(s.m, r),
      [&](const IntPoint& p) {
        if (!keep(p)) return true;
        Rational v = score(p);
        if (!best || v < best_score) {
          best = p;
          best_score = v;
        }
        return true;
      },
      budget);
  return best;
}

}  // namespace detail

inline Dilation minimal_dilation(const System& s, const Rational& h, const Rational& r,
                                 std::uint64_t budget = kDefaultBudget) {
  detail::require_positive(h, "h");
  detail::require_positive(r, "r");
  int d = s.d();
  // Minkowski: (2μr)^m (2μh)^n >= 2^d guarantees a point.
  Rational bound = std::max(Rational(1), detail::root_upper(
                                             1 / (pow_int(r, s.m) * pow_int(h, s.n)), d));
  auto score = [&](const IntPoint& p) {
    return std::max(Rational(sup_norm(p.x())) / r, detail::residual_norm(s, p) / h);
  };
  auto best = detail::argmin_in_box(
      s, bound * h, bound * r, [](const IntPoint&) { return true; }, score, budget);
  if (!best) throw Error(ErrorCode::kDomainError, "no point inside the Minkowski box");
  Dilation out;
  out.point = *best;
  out.mu = score(*best);
  out.residual_side = Rational(sup_norm(best->x())) / r <= detail::residual_norm(s, *best) / h;
  return out;
}

// The companion point for the proof's ε-limit: with the defining side held
// strictly below μ, minimize the other side.
inline std::pair<Rational, IntPoint> companion_dilation(const System& s, const Rational& h,
                                                        const Rational& r,
                                                        const Dilation& first,
                                                        std::uint64_t budget = kDefaultBudget) {
  int n = s.n, m = s.m;
  const Rational& mu = first.mu;
  Rational slack(1001, 1000);
  if (first.residual_side) {
    Rational bound = std::max(
        mu, detail::root_upper(1 / (pow_int(r, m) * pow_int(Rational(mu * h), n)), m) * slack);
    for (int attempt = 0; attempt < 8; ++attempt, bound *= 2) {
      auto best = detail::argmin_in_box(
          s, mu * h, bound * r,
          [&](const IntPoint& p) { return detail::residual_norm(s, p) < mu * h; },
          [&](const IntPoint& p) { return Rational(sup_norm(p.x())) / r; }, budget);
      if (best) return {Rational(sup_norm(best->x())) / r, *best};
    }
  } else {
    Rational bound = std::max(
        mu, detail::root_upper(1 / (pow_int(Rational(mu * r), m) * pow_int(h, n)), n) * slack);
    for (int attempt = 0; attempt < 8; ++attempt, bound *= 2) {
      auto best = detail::argmin_in_box(
          s, bound * h, mu * r,
          [&](const IntPoint& p) { return Rational(sup_norm(p.x())) < mu * r; },
          [&](const IntPoint& p) { return detail::residual_norm(s, p) / h; }, budget);
      if (best) return {detail::residual_norm(s, *best) / h, *best};
    }
  }
  throw Error(ErrorCode::kNoWitnesses, "companion point not found");
}

namespace detail {

inline Truth truth_and(Truth a, Truth b) {
  if (a == Truth::kFalse || b == Truth::kFalse) return Truth::kFalse;
  if (a == Truth::kTrue && b == Truth::kTrue) return Truth::kTrue;
  return Truth::kUnknown;
}

}  // namespace detail

// Parameters of the uniform-exponent core at h: r = φ(h),
// h* = Δ r^m h^{n-1}, r* = Δ r^{m-1} h^n, the interval [r*, max(r*, ψ⁻(h*))]
// and the two growth conditions evaluated on it.
struct AlphasSetup {
  Enclosure r, h_star, r_star;
  Rational interval_lo, interval_hi;
  Truth cond_i = Truth::kUnknown, cond_ii = Truth::kUnknown;
};

inline AlphasSetup alphas_setup(int n, int m, const FunctionSpec& phi, const FunctionSpec& psi,
                                const Rational& h) {
  int d = n + m;
  AlphasSetup st;
  Enclosure H(h);
  st.r = phi(H);
  if (!st.r.positive()) throw Error(ErrorCode::kDomainError, "phi(h) must be positive");
  Enclosure D(delta_d(d));
  st.h_star = D * pow(st.r, static_cast<long>(m)) * pow(H, static_cast<long>(n - 1));
  st.r_star = D * pow(st.r, static_cast<long>(m - 1)) * pow(H, static_cast<long>(n));
  Enclosure cc = wedge_constant(d);
  std::optional<Enclosure> inv;
  try {
    inv = psi.inverse(st.h_star);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDomainError) throw;
  }
  st.interval_lo = st.r_star.lo();
  st.interval_hi = st.r_star.hi();
  if (inv) st.interval_hi = std::max(st.interval_hi, inv->hi());
  st.cond_i = detail::truth_and(tf_nonincreasing(psi, st.interval_lo, st.interval_hi),
                                less_equal(psi(st.r_star), Enclosure(1) / (cc * D * H)));
  st.cond_ii = Truth::kFalse;
  if (inv)
    st.cond_ii = detail::truth_and(tf_nondecreasing(psi, st.interval_lo, st.interval_hi),
                                   less_equal(*inv, Enclosure(1) / (cc * D * st.r)));
  return st;
}

// Uniform-exponent core: from the uniform ψ-approximation data of Θ, a
// nonzero point of M̂_{h, φ(h)}.
inline Certificate alphas_core(const System& s, const FunctionSpec& phi,
                               const FunctionSpec& psi, const Rational& h,
                               std::uint64_t budget = kDefaultBudget) {
  int d = s.d(), n = s.n, m = s.m;
  if (d < 3) throw Error(ErrorCode::kOnlyDGe3, "alphas_core needs d >= 3");
  detail::require_positive(h, "h");
  return detail::with_precision_retry([&] {
    AlphasSetup st = alphas_setup(n, m, phi, psi, h);
    if (st.cond_i == Truth::kFalse && st.cond_ii == Truth::kFalse)
      throw Error(ErrorCode::kHypothesisViolated,
                  "neither growth condition holds on the interval");
    Enclosure H(h);
    const Enclosure& r = st.r;

    Certificate c = detail::start_certificate(CertificateKind::kAlphasCore, s);
    c.inputs["phi"] = phi.to_json();
    c.inputs["psi"] = psi.to_json();
    c.inputs["h"] = detail::rational_json(h);
    c.inputs["r"] = detail::enclosure_json(r);
    c.inputs["h_star"] = detail::enclosure_json(st.h_star);
    c.inputs["r_star"] = detail::enclosure_json(st.r_star);
    c.inputs["interval"] = {to_string(st.interval_lo), to_string(st.interval_hi)};
    c.inputs["condition_i"] = truth_name(st.cond_i);
    c.inputs["condition_ii"] = truth_name(st.cond_ii);
    c.check("growth_condition", true);
    c.target_box = Box::make(s, Side::kDual, H, r);

    Rational hq = st.h_star.lo(), rq = st.r_star.lo();
    auto direct = find_point(Box::make(s, Side::kPrimal, Enclosure(hq), Enclosure(rq)), budget);
    if (direct) {
      c.inputs["route"] = "mahler";
      c.witnesses = {detail::normalized(*direct)};
      c.output_point = detail::search_target(c.target_box, {}, budget);
      c.check("output_in_target_box",
              box_contains(c.target_box, c.output_point) == Truth::kTrue);
      return c;
    }

    Dilation first = minimal_dilation(s, hq, rq, budget);
    auto [mu2, other] = companion_dilation(s, hq, rq, first, budget);
    IntPoint v1 = first.residual_side ? first.point : other;
    IntPoint v2 = first.residual_side ? other : first.point;
    Rational lambda1 = detail::residual_norm(s, v1);
    Rational lambda2 = Rational(sup_norm(v2.x()));
    c.inputs["route"] = "main_lemma";
    c.inputs["mu"] = detail::rational_json(first.mu);
    c.inputs["mu_prime"] = detail::rational_json(mu2);
    c.inputs["first_is_v1"] = first.residual_side;
    c.inputs["lambda1"] = detail::rational_json(lambda1);
    c.inputs["lambda2"] = detail::rational_json(lambda2);
    c.check("mu_above_one", first.mu > 1);

    // λ1 λ2 <= r^{m-1} h^{n-1} / c, on squares.
    Enclosure rhs = pow(r, static_cast<long>(m - 1)) * pow(H, static_cast<long>(n - 1));
    Truth lam = less_equal(
        Enclosure(Rational(lambda1 * lambda1 * lambda2 * lambda2 * wedge_constant_squared(d))),
        rhs * rhs);
    if (lam != Truth::kTrue)
      throw Error(ErrorCode::kHypothesisViolated,
                  std::string("lambda product bound fails (") + truth_name(lam) + ")");
    c.check("lambda_product_bound", true);
    detail::require_pair(s, v1, v2);
    detail::ProductBounds pb =
        detail::product_bounds(n, m, H, r, wedge_constant_squared(d));
    Truth hyp = detail::products_within(s, v1, v2, pb.P2, pb.Qh2, pb.Qr2);
    if (hyp != Truth::kTrue)
      throw Error(ErrorCode::kHypothesisViolated, "product bound fails for v1, v2");
    c.check("hypothesis", true);
    detail::main_lemma_search(c, detail::normalized(v1), detail::normalized(v2), budget);
    return c;
  });
}

}  // namespace dioph
