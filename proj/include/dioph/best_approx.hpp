#pragma once

#include <cstdint>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dioph/enumerate.hpp"

namespace dioph {

struct ApproxRecord {
  Integer t;       // |x|∞ (primal) or |y|∞ (dual) of the witness
  Rational psi;    // minimal residual over 0 < |u|∞ <= t
  IntPoint witness;
};

// ψ(t) = min over 0 < |x|∞ <= t of |Θx + y|∞ (primal), or the transposed
// quantity (dual); records mark the strict decreases.
struct BestApproxTable {
  System system;
  Side side = Side::kPrimal;
  Integer t_max;
  std::vector<ApproxRecord> records;

  // Record in force at t; requires t >= records.front().t.
  const ApproxRecord& record_at(const Integer& t) const {
    std::size_t lo = 0, hi = records.size();
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (records[mid].t <= t) lo = mid;
      else hi = mid;
    }
    return records[lo];
  }
  Rational psi(const Integer& t) const { return record_at(t).psi; }
  bool reached_zero() const { return !records.empty() && records.back().psi == 0; }
};

namespace detail {

// Search problem for the table: u is x (primal) or y (dual), residuals are
// (A u)_i modulo D.
inline ScaledProblem table_problem(const System& s, Side side) {
  RatVector h(s.n, Rational(0)), r(s.m, Rational(0));
  return scaled_problem(s, side, h, r);
}

template <class Int>
struct ShellSearch {
  std::vector<std::vector<Int>> A;
  Int D;
  std::size_t a = 0, b = 0;

  explicit ShellSearch(const ScaledProblem& pr) : a(pr.A.rows()), b(pr.A.cols()) {
    A.assign(a, std::vector<Int>(b));
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t k = 0; k < b; ++k) A[i][k] = convert<Int>(pr.A(i, k));
    D = convert<Int>(pr.D);
  }

  Int error(const std::vector<Int>& u) const {
    Int worst = 0;
    for (std::size_t i = 0; i < a; ++i) {
      Int s = 0;
      for (std::size_t k = 0; k < b; ++k) s += A[i][k] * u[k];
      Int e = dist_to_multiple(s, D);
      if (e > worst) worst = e;
    }
    return worst;
  }

  // Minimal error on the shell |u|∞ = s, up to the symmetry u -> -u.
  void shell(Int s, Int& best, std::vector<Int>& arg) const {
    std::vector<Int> u(b);
    for (std::size_t k = 0; k < b; ++k) {
      // First coordinate of absolute value s is u_k = s.
      for (std::size_t j = 0; j < b; ++j) u[j] = j < k ? Int(-(s - 1)) : -s;
      u[k] = s;
      while (true) {
        Int e = error(u);
        if (e < best) {
          best = e;
          arg = u;
        }
        std::size_t j = b;
        bool advanced = false;
        while (j > 0) {
          --j;
          if (j == k) continue;
          Int bound = j < k ? Int(s - 1) : s;
          if (u[j] < bound) {
            u[j] += 1;
            advanced = true;
            break;
          }
          u[j] = -bound;
        }
        if (!advanced) break;
      }
    }
  }
};

template <class Int>
IntPoint table_witness(const System& sys, Side side, const ShellSearch<Int>& ss,
                       const std::vector<Int>& u) {
  IntPoint p;
  p.m = sys.m;
  p.z.resize(sys.d());
  std::vector<Int> w(ss.a);
  for (std::size_t i = 0; i < ss.a; ++i) {
    Int s = 0;
    for (std::size_t k = 0; k < ss.b; ++k) s += ss.A[i][k] * u[k];
    w[i] = nearest_shift(s, ss.D);
  }
  const auto& xs = side == Side::kPrimal ? u : w;
  const auto& ys = side == Side::kPrimal ? w : u;
  for (int j = 0; j < sys.m; ++j) p.z[j] = to_big(xs[j]);
  for (int i = 0; i < sys.n; ++i) p.z[sys.m + i] = to_big(ys[i]);
  return p;
}

template <class Int>
void push_record(BestApproxTable& table, const ShellSearch<Int>& ss, Int s,
                 Int err, const std::vector<Int>& u) {
  table.records.push_back(
      {to_big(s), Rational(to_big(err), to_big(ss.D)),
       table_witness(table.system, table.side, ss, u)});
}

template <class Int>
void generic_table(BestApproxTable& table, const ScaledProblem& pr, Int t_max) {
  ShellSearch<Int> ss(pr);
  Int best = ss.D;  // larger than any residual
  std::vector<Int> arg;
  for (Int s = 1; s <= t_max; ++s) {
    Int shell_best = best;
    std::vector<Int> shell_arg;
    ss.shell(s, shell_best, shell_arg);
    if (shell_best < best) {
      best = shell_best;
      push_record(table, ss, s, best, shell_arg);
      if (best == 0) return;
    }
  }
}

// One linear form p1 u1 + p2 u2 (a = 1, b = 2): each shell is a nearest
// residue query against the residues of the other coordinate seen so far.
template <class Int>
void linear_form_table(BestApproxTable& table, const ScaledProblem& pr, Int t_max) {
  ShellSearch<Int> ss(pr);
  Int D = ss.D;
  Int p1 = mod(ss.A[0][0], D), p2 = mod(ss.A[0][1], D);
  std::map<Int, Int> res1, res2;  // residue -> coefficient attaining it
  res1.emplace(Int(0), Int(0));
  res2.emplace(Int(0), Int(0));
  auto nearest = [&](const std::map<Int, Int>& set, Int target, Int& dist,
                     Int& coeff) {
    auto it = set.lower_bound(target);
    auto consider = [&](typename std::map<Int, Int>::const_iterator c) {
      Int diff = c->first - target;
      if (diff < 0) diff = -diff;
      Int dd = diff < D - diff ? diff : D - diff;
      if (dd < dist || (dd == dist && abs_int(c->second) < abs_int(coeff))) {
        dist = dd;
        coeff = c->second;
      }
    };
    consider(it == set.end() ? set.begin() : it);
    consider(it == set.begin() ? std::prev(set.end()) : std::prev(it));
  };
  auto insert = [&](std::map<Int, Int>& set, Int p, Int s) {
    set.emplace(mod(Int(p * s), D), s);
    set.emplace(mod(Int(-p * s), D), -s);
  };
  Int best = D;
  for (Int s = 1; s <= t_max; ++s) {
    insert(res1, p1, Int(s - 1));
    insert(res2, p2, s);
    // u1 = s, |u2| <= s: residues p1 s + p2 u2.
    Int d1 = D, c1 = 0;
    nearest(res2, mod(Int(-p1 * s), D), d1, c1);
    // u2 = s, |u1| <= s - 1.
    Int d2 = D, c2 = 0;
    nearest(res1, mod(Int(-p2 * s), D), d2, c2);
    Int shell_best = d1;
    std::vector<Int> u{s, c1};
    if (d2 < d1) {
      shell_best = d2;
      u = {c2, s};
    }
    if (shell_best < best) {
      best = shell_best;
      push_record(table, ss, s, best, u);
      if (best == 0) return;
    }
  }
}

}  // namespace detail

// Shells examined by the brute-force table: about (2 t_max)^b error
// evaluations, checked against the budget.
inline BestApproxTable best_approx_table(const System& s, Side side,
                                         const Integer& t_max,
                                         std::uint64_t budget = kDefaultBudget * 100) {
  if (t_max < 1) throw Error(ErrorCode::kUsage, "t_max must be positive");
  BestApproxTable table{s, side, t_max, {}};
  ScaledProblem pr = detail::table_problem(s, side);
  std::size_t a = pr.A.rows(), b = pr.A.cols();
  bool linear = a == 1 && b == 2;
  Integer work = linear ? Integer(t_max * 64) : pow_int(Integer(2 * t_max + 1), b) * a;
  if (work > budget)
    throw Error(ErrorCode::kBudgetExceeded,
                "table needs about " + work.str() + " evaluations");
  // Magnitudes: |A u| <= max|A| * b * t_max, and D * t_max for residue products.
  Integer maxa = pr.D;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < b; ++k) maxa = std::max(maxa, abs(pr.A(i, k)));
  bool small = bit_length(Integer(maxa * t_max * (b + 1))) < 120;
  if (small) {
    Int128 t = to_int128(t_max);
    if (linear) detail::linear_form_table<Int128>(table, pr, t);
    else detail::generic_table<Int128>(table, pr, t);
  } else {
    if (linear) detail::linear_form_table<Integer>(table, pr, t_max);
    else detail::generic_table<Integer>(table, pr, t_max);
  }
  return table;
}

inline std::string table_csv(const BestApproxTable& t) {
  std::ostringstream os;
  os << "t,psi_num,psi_den";
  for (int k = 0; k < t.system.d(); ++k) os << ",z" << (k + 1);
  os << '\n';
  for (const auto& r : t.records) {
    os << r.t.str() << ',' << numerator(r.psi).str() << ','
       << denominator(r.psi).str();
    for (const auto& c : r.witness.z) os << ',' << c.str();
    os << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json table_json(const BestApproxTable& t) {
  nlohmann::ordered_json j;
  j["side"] = side_name(t.side);
  j["n"] = t.system.n;
  j["m"] = t.system.m;
  j["t_max"] = t.t_max.str();
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : t.records) {
    nlohmann::ordered_json row;
    row["t"] = r.t.str();
    row["psi"] = to_string(r.psi);
    row["psi_decimal"] = to_decimal(Enclosure(r.psi), 12);
    row["witness"] = nlohmann::ordered_json::array();
    for (const auto& c : r.witness.z) row["witness"].push_back(c.str());
    j["records"].push_back(row);
  }
  return j;
}

}  // namespace dioph
