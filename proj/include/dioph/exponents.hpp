#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "dioph/best_approx.hpp"
#include "dioph/enclosure.hpp"

namespace dioph {

// Exponents beyond this are reported as capped.
constexpr double kMaxExponent = 50.0;

struct ExponentEstimate {
  Side side = Side::kPrimal;
  Integer t_max;
  // Finite-range evidence: ψ(t) <= t^{-alpha_lower} on [t_max/10, t_max], and
  // some record has ψ <= t^{-beta_lower}.
  Rational alpha_lower = 0;
  Rational beta_lower = 0;
  double alpha_fit = 0;
  double beta_fit = 0;
  // Slopes of the log-log fits and the number of points entering each window.
  double alpha_slope = 0;
  double beta_slope = 0;
  std::size_t alpha_points = 0;
  std::size_t beta_points = 0;
  bool capped = false;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["side"] = side == Side::kPrimal ? "primal" : "dual";
    j["t_max"] = t_max.str();
    j["alpha_lower"] = to_string(alpha_lower);
    j["beta_lower"] = to_string(beta_lower);
    j["alpha_fit"] = alpha_fit;
    j["beta_fit"] = beta_fit;
    j["alpha_slope"] = alpha_slope;
    j["beta_slope"] = beta_slope;
    j["alpha_points"] = alpha_points;
    j["beta_points"] = beta_points;
    j["capped"] = capped;
    return j;
  }
};

namespace detail {

struct LogPoint {
  double lt;   // ln t
  double lp;   // -ln ψ
};

inline double neg_log(const Rational& psi) { return -log(Enclosure(psi)).mid_double(); }

// Least-squares line lp = slope * lt + icept.
inline std::pair<double, double> fit_line(const std::vector<LogPoint>& pts) {
  double n = pts.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    sx += p.lt;
    sy += p.lp;
    sxx += p.lt * p.lt;
    sxy += p.lt * p.lp;
  }
  double den = n * sxx - sx * sx;
  if (pts.size() < 2 || den <= 1e-12 * n * sxx) {
    double slope = 0;
    for (const auto& p : pts) slope += p.lp / p.lt;
    return {pts.empty() ? 0 : slope / n, 0};
  }
  double slope = (n * sxy - sx * sy) / den;
  return {slope, (sy - slope * sx) / n};
}

// Rational just below an enclosure's lower end, at 2^-32 resolution.
inline Rational floor_dyadic(const Rational& q) {
  Integer den = Integer(1) << 32;
  return Rational(floor(Rational(q * Rational(den))), den);
}

inline Rational ratio_lower(const Rational& psi, const Integer& t) {
  Enclosure v = log(Enclosure(Rational(1) / psi)) / log(Enclosure(Rational(t)));
  return floor_dyadic(v.lo());
}

}  // namespace detail

// Exponent estimates from the best-approximation table of one side.
//
// alpha_fit is the minimum of -ln ψ(t) / ln t over the last decade, sampled
// just before each drop of ψ and at t_max. beta_fit is the least-squares slope
// of -ln ψ_k against ln t_k over the records with t_k >= t_max^{1/4}, and never
// below alpha_fit. The plain ratio at the records carries a bias of
// ln(1 / (t_k ψ_k)) / ln t_k that the slope cancels.
inline ExponentEstimate estimate_from_table(const BestApproxTable& table) {
  ExponentEstimate e;
  e.side = table.side;
  e.t_max = table.t_max;
  const auto& rec = table.records;
  if (rec.empty()) throw Error(ErrorCode::kDomainError, "empty table");

  if (table.reached_zero()) {
    e.capped = true;
    e.alpha_fit = e.beta_fit = e.alpha_slope = e.beta_slope = kMaxExponent;
    e.alpha_lower = e.beta_lower = Rational(static_cast<long>(kMaxExponent));
    return e;
  }

  double lt_max = std::log(table.t_max.convert_to<double>());
  double fit_from = lt_max / 4, alpha_from = lt_max - std::log(10.0);

  std::vector<detail::LogPoint> records, jumps;
  for (std::size_t k = 0; k < rec.size(); ++k) {
    if (rec[k].t >= 2) {
      double lt = std::log(rec[k].t.convert_to<double>());
      if (lt >= fit_from) records.push_back({lt, detail::neg_log(rec[k].psi)});
    }
    if (k + 1 < rec.size()) {
      double lt = std::log(rec[k + 1].t.convert_to<double>());
      if (lt >= fit_from) jumps.push_back({lt, detail::neg_log(rec[k].psi)});
    }
  }
  detail::LogPoint terminal{lt_max, detail::neg_log(rec.back().psi)};
  jumps.push_back(terminal);
  if (records.empty()) records.push_back(terminal);

  e.beta_slope = detail::fit_line(records).first;
  e.alpha_slope = detail::fit_line(jumps).first;
  e.beta_points = records.size();

  double alpha = 1e300;
  for (const auto& p : jumps)
    if (p.lt >= alpha_from) {
      alpha = std::min(alpha, p.lp / p.lt);
      ++e.alpha_points;
    }
  e.alpha_fit = alpha;
  e.beta_fit = std::max(e.beta_slope, alpha);
  if (e.beta_fit > kMaxExponent) {
    e.capped = true;
    e.beta_fit = kMaxExponent;
    e.alpha_fit = std::min(e.alpha_fit, kMaxExponent);
  }

  // Exact finite-range bounds.
  Integer window_lo = table.t_max / 10;
  Rational alo = detail::ratio_lower(rec.back().psi, table.t_max);
  for (std::size_t k = 0; k + 1 < rec.size(); ++k) {
    const Integer& next = rec[k + 1].t;
    if (next < window_lo || next < 2) continue;
    alo = std::min(alo, detail::ratio_lower(rec[k].psi, next));
  }
  e.alpha_lower = std::max(Rational(0), alo);
  Rational blo = 0;
  for (const auto& r : rec)
    if (r.t >= 2) blo = std::max(blo, detail::ratio_lower(r.psi, r.t));
  e.beta_lower = blo;
  return e;
}

inline ExponentEstimate estimate_exponents(const System& s, Side side, const Integer& t_max,
                                           std::uint64_t budget = kDefaultBudget * 100) {
  return estimate_from_table(best_approx_table(s, side, t_max, budget));
}

// Table length that keeps about `work` residue evaluations for the shape of `side`.
inline Integer auto_t_max(const System& s, Side side, std::uint64_t work = 20000000) {
  int a = side == Side::kPrimal ? s.n : s.m;
  int b = side == Side::kPrimal ? s.m : s.n;
  if (a == 1 && b == 2) return 100000;
  if (b == 1) return 1000000;
  long t = 100000;
  auto cost = [&](long tt) {
    double c = a;
    for (int k = 0; k < b; ++k) c *= 2.0 * tt + 1;
    return c;
  };
  while (t > 2 && cost(t) > static_cast<double>(work)) t = t * 2 / 3;
  return t;
}

// α, β for Θ and for ᵗΘ.
struct ExponentPair {
  ExponentEstimate primal;
  ExponentEstimate dual;
};

inline ExponentPair estimate_both(const System& s, const Integer& t_primal,
                                  const Integer& t_dual) {
  return {estimate_exponents(s, Side::kPrimal, t_primal),
          estimate_exponents(s, Side::kDual, t_dual)};
}

}  // namespace dioph
