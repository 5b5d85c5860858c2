#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dioph/enclosure.hpp"
#include "dioph/exponents.hpp"

namespace dioph {

enum class Family {
  kJarnikEquality,
  kJarnikIneq,
  kApfelbeck,
  kKhintchine,
  kDyson,
  kBugeaudLaurent,
  kMyInequalities,
  kLoranoyadenie1,
  kLoranoyadenie2,
  kLoranoyadenie3,
  kDominions,
};

inline const std::vector<std::pair<Family, const char*>>& family_names() {
  static const std::vector<std::pair<Family, const char*>> names = {
      {Family::kJarnikEquality, "jarnik_equality"},
      {Family::kJarnikIneq, "jarnik_ineq"},
      {Family::kApfelbeck, "apfelbeck"},
      {Family::kKhintchine, "khintchine"},
      {Family::kDyson, "dyson"},
      {Family::kBugeaudLaurent, "bugeaud_laurent"},
      {Family::kMyInequalities, "my_inequalities"},
      {Family::kLoranoyadenie1, "loranoyadenie_1"},
      {Family::kLoranoyadenie2, "loranoyadenie_2"},
      {Family::kLoranoyadenie3, "loranoyadenie_3"},
      {Family::kDominions, "dominions"},
  };
  return names;
}

inline const char* family_name(Family f) {
  for (const auto& [k, v] : family_names())
    if (k == f) return v;
  return "?";
}

inline std::optional<Family> parse_family(const std::string& s) {
  for (const auto& [k, v] : family_names())
    if (s == v) return k;
  return std::nullopt;
}

// α(Θ), β(Θ), α(ᵗΘ), β(ᵗΘ).
struct Exponents {
  Rational alpha = 0;
  Rational beta = 0;
  Rational alpha_t = 0;
  Rational beta_t = 0;

  static Exponents from_fits(const ExponentPair& p) {
    return {Rational(p.primal.alpha_fit), Rational(p.primal.beta_fit),
            Rational(p.dual.alpha_fit), Rational(p.dual.beta_fit)};
  }
};

constexpr double kInequalityTolerance = 0.1;

struct InequalityReport {
  Family family = Family::kDyson;
  int n = 0, m = 0;
  // For two-sided statements lhs/rhs are the sides of the tighter comparison.
  Rational lhs = 0, rhs = 0;
  Rational slack = 0;
  double tolerance = kInequalityTolerance;
  bool pass = false;
  std::string note;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family_name(family);
    j["n"] = n;
    j["m"] = m;
    j["lhs"] = to_decimal(Enclosure(lhs), 12);
    j["rhs"] = to_decimal(Enclosure(rhs), 12);
    j["slack"] = to_decimal(Enclosure(slack), 12);
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

// Extended value: nullopt stands for +∞ (a positive quantity over 0).
using XRational = std::optional<Rational>;

namespace detail {

inline XRational ratio(const Rational& num, const Rational& den) {
  if (den == 0) {
    if (num == 0) throw Error(ErrorCode::kDomainError, "0/0 in inequality");
    if (num < 0) return Rational(0);
    return std::nullopt;
  }
  return Rational(num / den);
}

inline Rational cap(const XRational& v) {
  return v ? *v : Rational(static_cast<long>(kMaxExponent));
}

inline void require_not_both_one(int n, int m) {
  if (n == 1 && m == 1) throw Error(ErrorCode::kDomainError, "n and m both equal to 1");
}

// One comparison lhs >= rhs (or lhs <= rhs when `upper`).
struct Side2 {
  Rational lhs, rhs;
  bool upper = false;
  Rational slack() const { return upper ? Rational(rhs - lhs) : Rational(lhs - rhs); }
};

inline InequalityReport finish(Family f, int n, int m, const std::vector<Side2>& parts,
                               double tol, std::string note = {}) {
  InequalityReport r;
  r.family = f;
  r.n = n;
  r.m = m;
  r.tolerance = tol;
  r.note = std::move(note);
  if (parts.empty()) throw Error(ErrorCode::kDomainError, "no applicable inequality");
  const Side2* worst = &parts[0];
  for (const auto& p : parts)
    if (p.slack() < worst->slack()) worst = &p;
  r.lhs = worst->lhs;
  r.rhs = worst->rhs;
  r.slack = worst->slack();
  r.pass = r.slack >= -Rational(tol);
  return r;
}

}  // namespace detail

// Right-hand sides of the three lower bounds for β(ᵗΘ).
inline XRational loranoyadenie_rhs(int which, int n, int m, const Rational& alpha,
                                   const Rational& beta) {
  detail::require_not_both_one(n, m);
  if (alpha <= 0 || beta <= 0) throw Error(ErrorCode::kDomainError, "exponents must be positive");
  switch (which) {
    case 1:
      return detail::ratio(n * beta + n - 1, (m - 1) * beta + m);
    case 2:
      return detail::ratio((n - 1) * (1 + beta) - (1 - alpha), (m - 1) * (1 + beta) + (1 - alpha));
    case 3: {
      Rational bi = 1 / beta, ai = 1 / alpha;
      return detail::ratio((n - 1) * (1 + bi) - (ai - 1), (m - 1) * (1 + bi) + (ai - 1));
    }
  }
  throw Error(ErrorCode::kUsage, "loranoyadenie index must be 1, 2 or 3");
}

// Lower bound for α(ᵗΘ) in terms of α(Θ).
inline XRational my_inequalities_rhs(int n, int m, const Rational& alpha) {
  detail::require_not_both_one(n, m);
  if (alpha <= 1) return detail::ratio(Rational(n - 1), m - alpha);
  return detail::ratio(n - 1 / alpha, Rational(m - 1));
}

// The three reformulated parts for n <= m, m != 1; part 2 needs α(ᵗΘ) <= 1
// and part 3 needs α(ᵗΘ) >= 1.
inline InequalityReport my_inequalities_part(int part, int n, int m, const Exponents& e,
                                             double tol = kInequalityTolerance) {
  if (!(1 <= n && n <= m && m != 1))
    throw Error(ErrorCode::kDomainError, "reformulated parts need 1 <= n <= m, m != 1");
  std::vector<detail::Side2> parts;
  switch (part) {
    case 1:
      parts.push_back({e.alpha_t, detail::cap(detail::ratio(n - 1 / e.alpha, Rational(m - 1)))});
      break;
    case 2:
      if (e.alpha_t > 1) throw Error(ErrorCode::kDomainError, "part 2 requires alpha_t <= 1");
      parts.push_back({1 / e.alpha, Rational((n - e.alpha_t) / (m - 1)), true});
      break;
    case 3:
      if (e.alpha_t < 1) throw Error(ErrorCode::kDomainError, "part 3 requires alpha_t >= 1");
      if (n == 1) {
        if (e.alpha_t != 1) throw Error(ErrorCode::kDomainError, "n = 1 forces alpha_t <= 1");
        parts.push_back({e.alpha, Rational(static_cast<long>(kMaxExponent))});
      } else {
        parts.push_back({e.alpha, Rational((m - 1 / e.alpha_t) / (n - 1))});
      }
      break;
    default:
      throw Error(ErrorCode::kUsage, "part must be 1, 2 or 3");
  }
  return detail::finish(Family::kMyInequalities, n, m, parts, tol,
                        "part " + std::to_string(part));
}

struct Dominion {
  std::string case_label;  // "i" .. "iv"
  int winner = 0;          // strongest of the three lower bounds
};

// Which of the three lower bounds for β(ᵗΘ) is strongest (ties resolved as in
// the case analysis).
inline Dominion dominions(int n, int m, const Rational& alpha, const Rational& beta) {
  detail::require_not_both_one(n, m);
  int d = n + m;
  if (alpha < Rational(m, n) || beta < alpha)
    throw Error(ErrorCode::kDomainError, "dominions needs beta >= alpha >= m/n");
  if (m == 1) {
    if (alpha > 1) throw Error(ErrorCode::kDomainError, "m = 1 forces alpha <= 1");
    return {"i", 2};
  }
  if (alpha <= 1) {
    bool two = beta <= ((d - 1) * alpha - m) / (m - 1);
    return {"ii", two ? 2 : 1};
  }
  if (alpha < Rational(d - 1, n)) {
    bool three = beta <= (n - 1) * alpha / (d - 1 - n * alpha);
    return {"iii", three ? 3 : 1};
  }
  return {"iv", 3};
}

// Brute-force strongest bound: the index whose right-hand side is largest
// (+∞ counts as largest).
inline std::vector<int> strongest_by_evaluation(int n, int m, const Rational& alpha,
                                                const Rational& beta) {
  XRational v[3];
  for (int k = 0; k < 3; ++k) v[k] = loranoyadenie_rhs(k + 1, n, m, alpha, beta);
  auto greater_eq = [](const XRational& a, const XRational& b) {
    if (!a) return true;
    if (!b) return false;
    return *a >= *b;
  };
  std::vector<int> best;
  for (int k = 0; k < 3; ++k) {
    bool top = true;
    for (int j = 0; j < 3; ++j) top = top && greater_eq(v[k], v[j]);
    if (top) best.push_back(k + 1);
  }
  return best;
}

inline InequalityReport check_inequality(Family f, int n, int m, const Exponents& e,
                                         double tol = kInequalityTolerance) {
  using detail::cap;
  using detail::ratio;
  using detail::Side2;
  if (n < 1 || m < 1) throw Error(ErrorCode::kDomainError, "n, m must be positive");
  const Rational &a = e.alpha, &b = e.beta, &at = e.alpha_t, &bt = e.beta_t;
  if (a <= 0 || b <= 0 || at <= 0 || bt <= 0)
    throw Error(ErrorCode::kDomainError, "exponents must be positive");
  std::vector<Side2> parts;
  switch (f) {
    case Family::kJarnikEquality: {
      if (n != 1 || m != 2) throw Error(ErrorCode::kDomainError, "jarnik_equality needs n=1, m=2");
      Rational lhs = 1 / a + at;
      // Equality: both directions.
      parts.push_back({lhs, 1});
      parts.push_back({lhs, 1, true});
      break;
    }
    case Family::kJarnikIneq: {
      if (n != 1) throw Error(ErrorCode::kDomainError, "jarnik_ineq needs n=1");
      parts.push_back({at, cap(ratio(a, (m - 1) * a + m))});
      parts.push_back({at, Rational((a - m + 1) / m), true});
      if (m > 1 && a > m * (2 * m - 3))
        parts.push_back({at, Rational((1 - 1 / (a - 2 * m + 4)) / (m - 1))});
      // Reading the hypothesis-side exponent in the last part as α(ᵗΘ).
      if (at > Rational(m - 1, m)) parts.push_back({a, m - 2 + cap(ratio(Rational(1), 1 - at))});
      break;
    }
    case Family::kApfelbeck: {
      parts.push_back({at, cap(ratio(n * a + n - 1, (m - 1) * a + m))});
      int d = n + m;
      if (m > 1 && a > Rational(2 * (d - 1) * (d - 3) + m, n)) {
        Rational u = n * a - m;
        XRational inner = ratio(n * u - 2 * n * (d - 3), (m - 1) * u + m - (m - 2) * (d - 3));
        parts.push_back({at, Rational((n + cap(inner)) / m)});
      }
      break;
    }
    case Family::kKhintchine:
      if (n != 1) throw Error(ErrorCode::kDomainError, "khintchine needs n=1");
      parts.push_back({bt, cap(ratio(b, (m - 1) * b + m))});
      parts.push_back({bt, Rational((b - m + 1) / m), true});
      break;
    case Family::kDyson:
      parts.push_back({bt, cap(ratio(n * b + n - 1, (m - 1) * b + m))});
      break;
    case Family::kBugeaudLaurent:
      if (n != 1 || m == 1) throw Error(ErrorCode::kDomainError, "bugeaud_laurent needs n=1, m>1");
      parts.push_back({bt, cap(ratio((a - 1) * b, ((m - 2) * a + 1) * b + (m - 1) * a))});
      parts.push_back({bt, Rational(((1 - at) * b - m + 2 - at) / (m - 1)), true});
      break;
    case Family::kMyInequalities:
      parts.push_back({at, cap(my_inequalities_rhs(n, m, a))});
      break;
    case Family::kLoranoyadenie1:
    case Family::kLoranoyadenie2:
    case Family::kLoranoyadenie3: {
      int which = f == Family::kLoranoyadenie1 ? 1 : f == Family::kLoranoyadenie2 ? 2 : 3;
      parts.push_back({bt, cap(loranoyadenie_rhs(which, n, m, a, b))});
      break;
    }
    case Family::kDominions: {
      // The classifier's choice against the largest of the three bounds.
      Dominion dm = dominions(n, m, a, b);
      Rational chosen = cap(loranoyadenie_rhs(dm.winner, n, m, a, b));
      Rational top = chosen;
      for (int k = 1; k <= 3; ++k) top = std::max(top, cap(loranoyadenie_rhs(k, n, m, a, b)));
      return detail::finish(f, n, m, {{chosen, top}}, 0,
                            "case " + dm.case_label + ", bound " + std::to_string(dm.winner));
    }
  }
  return detail::finish(f, n, m, parts, tol);
}

}  // namespace dioph
