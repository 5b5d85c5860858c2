#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dioph/function_spec.hpp"

namespace dioph {

// n = 1, m = 2. Branch (i): t ψ(t) decreasing, Θ uniformly ψ-approximable,
// bound for ᵗΘ. Branch (ii): t ψ(t) increasing, ᵗΘ uniformly ψ-approximable,
// bound for Θ.
enum class JarnikBranch { kDecreasing, kIncreasing };

// (3 / (4t)) ψ⁻(2 / (3t)).
inline Enclosure phi_3d_decreasing(const FunctionSpec& psi, const Rational& t) {
  Enclosure T(t);
  return Enclosure(Rational(3, 4)) / T * psi.inverse(Enclosure(Rational(2, 3)) / T);
}

// (12 (1 + ε + δ) / t) ψ⁻(1 / t).
inline Enclosure phi_jarnik_decreasing(const FunctionSpec& psi, const Rational& t,
                                       const Rational& eps, const Rational& delta) {
  Enclosure T(t);
  return Enclosure(Rational(12 * (1 + eps + delta))) / T * psi.inverse(Enclosure(1) / T);
}

// 2 / (3 f⁻(t / 2)) with f(t) = t ψ(t).
inline Enclosure phi_3d_increasing(const FunctionSpec& psi, const Rational& t) {
  Enclosure inv = psi.times_t().inverse_increasing(Enclosure(Rational(t / 2)));
  return Enclosure(Rational(2, 3)) / inv;
}

// 4 (1 + ε + δ) / f⁻(t / 2).
inline Enclosure phi_jarnik_increasing(const FunctionSpec& psi, const Rational& t,
                                       const Rational& eps, const Rational& delta) {
  Enclosure inv = psi.times_t().inverse_increasing(Enclosure(Rational(t / 2)));
  return Enclosure(Rational(4 * (1 + eps + delta))) / inv;
}

struct ComparisonRow {
  std::string psi;
  JarnikBranch branch = JarnikBranch::kDecreasing;
  Rational t;
  Enclosure ours, jarnik;
  Truth at_most = Truth::kUnknown;  // ours <= jarnik

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["psi"] = psi;
    j["branch"] = branch == JarnikBranch::kDecreasing ? "i" : "ii";
    j["t"] = to_string(t);
    j["ours"] = to_decimal(ours, 12);
    j["jarnik"] = to_decimal(jarnik, 12);
    j["ratio"] = to_decimal(jarnik / ours, 6);
    j["at_most"] = truth_name(at_most);
    return j;
  }
};

struct JarnikPreset {
  FunctionSpec psi;
  JarnikBranch branch;
};

// ψ with t ψ(t) monotone and the decay each branch asks for eventually.
inline std::vector<JarnikPreset> jarnik_presets() {
  std::vector<JarnikPreset> out;
  out.push_back({power_function(Enclosure(Rational(1, 1000)), 2, "t^-2/1000"),
                 JarnikBranch::kDecreasing});
  out.push_back({power_function(1, 3, "t^-3"), JarnikBranch::kDecreasing});
  out.push_back({power_function(1, Rational(5, 2), "t^-5/2"), JarnikBranch::kDecreasing});
  FunctionSpec lp = log_psi(2);
  lp.name = "t^-2/ln t";
  out.push_back({lp, JarnikBranch::kDecreasing});
  out.push_back({exp_function(), JarnikBranch::kDecreasing});
  out.push_back({power_function(Enclosure(Rational(1, 1000)), Rational(1, 2), "t^-1/2/1000"),
                 JarnikBranch::kIncreasing});
  out.push_back({power_function(1, Rational(3, 5), "t^-3/5"), JarnikBranch::kIncreasing});
  out.push_back({power_function(1, Rational(2, 3), "t^-2/3"), JarnikBranch::kIncreasing});
  FunctionSpec lq = log_psi(Rational(1, 2));
  lq.name = "t^-1/2/ln t";
  out.push_back({lq, JarnikBranch::kIncreasing});
  return out;
}

inline std::vector<Rational> comparison_grid() {
  return {100, 1000, 10000, 100000, 1000000};
}

inline ComparisonRow compare_at(const JarnikPreset& p, const Rational& t, const Rational& eps,
                                const Rational& delta) {
  ComparisonRow row;
  row.psi = p.psi.name;
  row.branch = p.branch;
  row.t = t;
  if (p.branch == JarnikBranch::kDecreasing) {
    row.ours = phi_3d_decreasing(p.psi, t);
    row.jarnik = phi_jarnik_decreasing(p.psi, t, eps, delta);
  } else {
    row.ours = phi_3d_increasing(p.psi, t);
    row.jarnik = phi_jarnik_increasing(p.psi, t, eps, delta);
  }
  row.at_most = less_equal(row.ours, row.jarnik);
  return row;
}

inline std::vector<ComparisonRow> compare_3d_jarnik(const Rational& eps = Rational(1, 1000),
                                                    const Rational& delta = Rational(1, 1000)) {
  std::vector<ComparisonRow> rows;
  for (const auto& p : jarnik_presets())
    for (const auto& t : comparison_grid()) rows.push_back(compare_at(p, t, eps, delta));
  return rows;
}

}  // namespace dioph
