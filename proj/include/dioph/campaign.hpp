#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dioph/comparison.hpp"
#include "dioph/exponents.hpp"
#include "dioph/inequalities.hpp"
#include "dioph/presets.hpp"
#include "dioph/transference.hpp"

namespace dioph {

struct CampaignConfig {
  std::string family;
  std::vector<std::pair<int, int>> dims = {{1, 2}};
  long trials = 10;
  std::uint64_t seed = 1;
  long t_max = 0;        // 0: per-shape default
  int den_bits = 48;     // random systems for exponent families
  long den_bound = 30;   // random systems for transfer families
  bool presets = true;
  double tolerance = kInequalityTolerance;
  std::string csv;
  std::string json;
  int jobs = 1;

  // Shapes "NxM", or "dK" for every shape with n + m = K.
  static std::vector<std::pair<int, int>> parse_dims(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (item[0] == 'd') {
        int d = std::stoi(item.substr(1));
        if (d < 2) throw Error(ErrorCode::kUsage, "dimension must be >= 2: " + item);
        for (int n = 1; n < d; ++n) out.push_back({n, d - n});
        continue;
      }
      auto x = item.find('x');
      if (x == std::string::npos) throw Error(ErrorCode::kUsage, "bad shape: " + item);
      int n = std::stoi(item.substr(0, x)), m = std::stoi(item.substr(x + 1));
      if (n < 1 || m < 1) throw Error(ErrorCode::kUsage, "bad shape: " + item);
      out.push_back({n, m});
    }
    if (out.empty()) throw Error(ErrorCode::kUsage, "empty dims");
    return out;
  }

  void set(const std::string& key, const std::string& value) {
    try {
      if (key == "family") family = value;
      else if (key == "dims") dims = parse_dims(value);
      else if (key == "trials") trials = std::stol(value);
      else if (key == "seed") seed = std::stoull(value);
      else if (key == "t_max") t_max = std::stol(value);
      else if (key == "den_bits") den_bits = std::stoi(value);
      else if (key == "den_bound") den_bound = std::stol(value);
      else if (key == "presets") presets = value == "true" || value == "1" || value == "yes";
      else if (key == "tolerance") tolerance = std::stod(value);
      else if (key == "csv") csv = value;
      else if (key == "json") json = value;
      else if (key == "jobs") jobs = std::stoi(value);
      else throw Error(ErrorCode::kUsage, "unknown config key: " + key);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kUsage, "bad value for " + key + ": " + value);
    }
    if (trials < 0 || den_bits < 8 || den_bound < 1 || jobs < 1 || t_max < 0)
      throw Error(ErrorCode::kUsage, "config values must be positive");
  }

  // Flat key = value lines; '#' starts a comment.
  static CampaignConfig parse(const std::string& text) {
    CampaignConfig c;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      auto eq = line.find('=');
      auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r\"");
        auto e = s.find_last_not_of(" \t\r\"");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos) throw Error(ErrorCode::kUsage, "expected key = value: " + line);
      c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family;
    std::string d;
    for (auto [n, m] : dims) d += (d.empty() ? "" : ",") + std::to_string(n) + "x" + std::to_string(m);
    j["dims"] = d;
    j["trials"] = trials;
    j["seed"] = seed;
    j["t_max"] = t_max;
    j["den_bits"] = den_bits;
    j["den_bound"] = den_bound;
    j["presets"] = presets;
    j["tolerance"] = tolerance;
    return j;
  }
};

struct CampaignReport {
  std::string family;
  nlohmann::ordered_json config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  long passed = 0, failed = 0, skipped = 0;

  long evaluated() const { return passed + failed; }
  bool ok() const { return failed == 0; }

  std::string to_csv() const {
    auto field = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << field(columns[i]);
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << field(r[i]);
      os << "\n";
    }
    return os.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family;
    j["config"] = config;
    j["summary"] = {{"rows", rows.size()}, {"passed", passed}, {"failed", failed},
                    {"skipped", skipped}};
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json o;
      for (std::size_t i = 0; i < columns.size() && i < r.size(); ++i) o[columns[i]] = r[i];
      arr.push_back(o);
    }
    j["rows"] = arr;
    return j;
  }

  std::string summary() const {
    std::ostringstream os;
    os << family << ": " << rows.size() << " rows, " << passed << " passed, " << failed
       << " failed, " << skipped << " skipped";
    return os.str();
  }
};

namespace detail {

// Outcome of one trial: a row and its status.
struct TrialRow {
  std::vector<std::string> cells;
  enum { kPass, kFail, kSkip } status = kSkip;
};

inline std::string dec(const Rational& q, int digits = 8) {
  return to_decimal(Enclosure(q), digits);
}
inline std::string dec(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

// Runs trial(i) for every index on `jobs` threads; results keep index order.
inline std::vector<TrialRow> run_indexed(long count, int jobs,
                                         const std::function<TrialRow(long)>& trial) {
  std::vector<TrialRow> out(count);
  std::vector<std::string> errors(count);
  auto worker = [&](int w) {
    for (long i = w; i < count; i += jobs) {
      try {
        out[i] = trial(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (long i = 0; i < count; ++i)
    if (!errors[i].empty()) throw Error(ErrorCode::kDomainError, "trial " + std::to_string(i) + ": " + errors[i]);
  return out;
}

inline void tally(CampaignReport& rep, TrialRow&& r) {
  rep.rows.push_back(std::move(r.cells));
  if (r.status == TrialRow::kPass) ++rep.passed;
  else if (r.status == TrialRow::kFail) ++rep.failed;
  else ++rep.skipped;
}

inline bool family_accepts(Family f, int n, int m) {
  switch (f) {
    case Family::kJarnikEquality: return n == 1 && m == 2;
    case Family::kJarnikIneq:
    case Family::kKhintchine: return n == 1;
    case Family::kBugeaudLaurent: return n == 1 && m > 1;
    case Family::kDyson: return true;
    default: return !(n == 1 && m == 1);
  }
}

struct SystemSource {
  std::string name;
  System system;
};

inline std::vector<SystemSource> exponent_sources(const CampaignConfig& c,
                                                  const std::vector<Family>& fams) {
  std::vector<SystemSource> out;
  auto wanted = [&](int n, int m) {
    return std::any_of(fams.begin(), fams.end(), [&](Family f) { return family_accepts(f, n, m); });
  };
  if (c.presets)
    for (auto& p : all_presets())
      if (wanted(p.system.n, p.system.m)) out.push_back({p.name, p.system});
  for (long i = 0; i < c.trials; ++i) {
    auto [n, m] = c.dims[i % c.dims.size()];
    Rng rng(trial_seed(c.seed, i));
    out.push_back({"random_" + std::to_string(i), random_dyadic_system(rng, n, m, c.den_bits)});
  }
  return out;
}

inline Integer table_length(const CampaignConfig& c, const System& s, Side side) {
  Integer t = auto_t_max(s, side);
  if (c.t_max > 0) t = std::min(t, Integer(c.t_max));
  return t;
}

// Every source is estimated once; each family then gets its own row.
inline CampaignReport exponent_campaign(const CampaignConfig& c, const std::vector<Family>& fams) {
  CampaignReport rep;
  rep.columns = {"source", "family", "n", "m", "t_primal", "t_dual", "alpha", "beta", "alpha_t",
                 "beta_t", "lhs", "rhs", "slack", "pass"};
  auto sources = exponent_sources(c, fams);
  std::vector<std::vector<TrialRow>> per_source(sources.size());
  run_indexed(static_cast<long>(sources.size()), c.jobs, [&](long i) {
    const auto& src = sources[i];
    const System& s = src.system;
    Integer tp = table_length(c, s, Side::kPrimal), td = table_length(c, s, Side::kDual);
    ExponentPair ep = estimate_both(s, tp, td);
    Exponents e = Exponents::from_fits(ep);
    for (Family f : fams) {
      TrialRow row;
      row.cells = {src.name, family_name(f), std::to_string(s.n), std::to_string(s.m), tp.str(),
                   td.str()};
      for (double v : {ep.primal.alpha_fit, ep.primal.beta_fit, ep.dual.alpha_fit,
                       ep.dual.beta_fit})
        row.cells.push_back(dec(v));
      try {
        if (!family_accepts(f, s.n, s.m))
          throw Error(ErrorCode::kDomainError, "shape outside the family");
        InequalityReport r = check_inequality(f, s.n, s.m, e, c.tolerance);
        row.cells.push_back(dec(r.lhs));
        row.cells.push_back(dec(r.rhs));
        row.cells.push_back(dec(r.slack));
        row.cells.push_back(r.pass ? "true" : "false");
        row.status = r.pass ? TrialRow::kPass : TrialRow::kFail;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::kDomainError) throw;
        row.cells.insert(row.cells.end(), {"", "", "", "n/a"});
      }
      per_source[i].push_back(std::move(row));
    }
    return TrialRow{};
  });
  for (auto& rows : per_source)
    for (auto& r : rows) tally(rep, std::move(r));
  return rep;
}

// Admissible (n, m, α, β) with β >= α >= m/n, and α <= 1 when m = 1.
inline Exponents random_admissible(Rng& rng, int n, int m) {
  Rational lo(m, n);
  Rational hi = m == 1 ? Rational(1) : Rational(lo + 2 * (n + m));
  Rational alpha = lo + (hi - lo) * Rational(rng.uniform(0, 1000), 1000);
  Rational beta = alpha + Rational(rng.uniform(0, 4000), 1000) * (rng.uniform(0, 9) == 0 ? 10 : 1);
  return {alpha, beta, 0, 0};
}

inline CampaignReport dominions_campaign(const CampaignConfig& c) {
  CampaignReport rep;
  rep.columns = {"n", "m", "alpha", "beta", "case", "winner", "strongest", "pass"};
  auto rows = run_indexed(c.trials, c.jobs, [&](long i) {
    Rng rng(trial_seed(c.seed, i));
    auto [n, m] = c.dims[i % c.dims.size()];
    TrialRow row;
    if (n == 1 && m == 1) {
      row.cells = {"1", "1", "", "", "", "", "", "n/a"};
      return row;
    }
    Exponents e = random_admissible(rng, n, m);
    Dominion dm = dominions(n, m, e.alpha, e.beta);
    auto best = strongest_by_evaluation(n, m, e.alpha, e.beta);
    bool agree = std::find(best.begin(), best.end(), dm.winner) != best.end();
    std::string bs;
    for (int b : best) bs += (bs.empty() ? "" : "|") + std::to_string(b);
    row.cells = {std::to_string(n), std::to_string(m), to_string(e.alpha), to_string(e.beta),
                 dm.case_label, std::to_string(dm.winner), bs, agree ? "true" : "false"};
    row.status = agree ? TrialRow::kPass : TrialRow::kFail;
    return row;
  });
  for (auto& r : rows) tally(rep, std::move(r));
  return rep;
}

// 1 / floor(X^{m/n}), at least X^{-m/n}: the Minkowski volume bound for M_{U,X}.
inline Rational minkowski_level(int n, int m, const Integer& X) {
  Integer target = pow_int(X, m);
  Integer q = 1;
  while (pow_int(Integer(q * 2), n) <= target) q *= 2;
  Integer step = q / 2;
  while (step > 0) {
    if (pow_int(Integer(q + step), n) <= target) q += step;
    step /= 2;
  }
  return Rational(1) / Rational(q);
}

// Largest X with the Mahler target box small enough to search.
inline long mahler_x_limit(int n, int m) {
  int d = n + m;
  long X = 1;
  for (long next = 2; next < 1000; ++next) {
    // Y^{d-1} ~ X^m U^{1-m} with U ~ X^{-m/n}; y-candidates (2Y+1)^n.
    double Y = std::pow(std::pow(double(next), m) * std::pow(double(next), double(m) * (m - 1) / n),
                        1.0 / (d - 1));
    if (std::pow(2 * Y + 1, n) > 2e5 || std::pow(2.0 * next + 1, m) > 2e6) break;
    X = next;
  }
  return X;
}

inline CampaignReport mahler_campaign(const CampaignConfig& c, bool asymmetric) {
  CampaignReport rep;
  rep.columns = {"trial", "n", "m", "X", "U", "k", "witness", "output", "verified"};
  auto rows = run_indexed(c.trials, c.jobs, [&](long i) {
    Rng rng(trial_seed(c.seed, i));
    auto [n, m] = c.dims[i % c.dims.size()];
    System s = random_rational_system(rng, n, m, c.den_bound);
    Integer X = rng.uniform(1, mahler_x_limit(n, m));
    Rational U = minkowski_level(n, m, X);
    auto pts = enumerate_nonzero(s, Side::kPrimal, RatVector(n, U), RatVector(m, Rational(X)));
    TrialRow row;
    if (pts.empty()) throw Error(ErrorCode::kDomainError, "Minkowski box without points");
    const IntPoint& w = pts[rng.uniform(0, static_cast<long>(pts.size()) - 1)];
    std::vector<int> ks = asymmetric ? std::vector<int>() : std::vector<int>{0};
    if (asymmetric)
      for (int k = 1; k <= n + m; ++k) ks.push_back(k);
    bool all = true;
    std::string outs, kss;
    for (int k : ks) {
      Certificate cert = k == 0 ? mahler_transfer(s, X, U, w) : mahler_transfer_asymmetric(s, X, U, w, k);
      nlohmann::ordered_json j = to_json(cert);
      bool ok = verify_certificate(nlohmann::ordered_json::parse(j.dump())).ok;
      all = all && ok;
      outs += (outs.empty() ? "" : " ") + cert.output_point.str();
      kss += (kss.empty() ? "" : " ") + std::to_string(k);
    }
    row.cells = {std::to_string(i), std::to_string(n), std::to_string(m), X.str(), to_string(U),
                 kss, w.str(), outs, all ? "true" : "false"};
    row.status = all ? TrialRow::kPass : TrialRow::kFail;
    return row;
  });
  for (auto& r : rows) tally(rep, std::move(r));
  return rep;
}

// (x, y) with y the nearest integer vector to -Θx.
inline IntPoint rounded_point(const System& s, const std::vector<long>& x) {
  IntPoint p;
  p.m = s.m;
  for (long v : x) p.z.push_back(v);
  for (int i = 0; i < s.n; ++i) {
    Rational t = 0;
    for (int j = 0; j < s.m; ++j) t += s.theta(i, j) * x[j];
    p.z.push_back(-floor(Rational(t + Rational(1, 2))));
  }
  return p;
}

struct LemmaInstance {
  System system;
  IntPoint v1, v2;
  Rational h, r;
};

// max(r² r1 r2, h² h1 h2, hr max r_i max h_i)² · c2 <= (h^n r^m)².
inline bool products_fit(const System& s, const IntPoint& v1, const IntPoint& v2,
                         const Rational& h, const Rational& r, const Rational& c2) {
  Rational r1(sup_norm(v1.x())), r2(sup_norm(v2.x()));
  Rational h1 = residual_norm(s, v1), h2 = residual_norm(s, v2);
  Rational lhs = std::max({r * r * r1 * r2, h * h * h1 * h2,
                           h * r * std::max(r1, r2) * std::max(h1, h2)});
  Rational rhs = pow_int(h, s.n) * pow_int(r, s.m);
  return lhs * lhs * c2 <= rhs * rhs;
}

// Random instance of the product hypothesis with constant² c2; with `gap`,
// also requires the instance to fail at the general constant.
inline std::optional<LemmaInstance> random_lemma_instance(Rng& rng, int n, int m, long den,
                                                          const Rational& c2, bool gap) {
  System s = random_rational_system(rng, n, m, den);
  auto draw_x = [&] {
    std::vector<long> x(m);
    for (auto& v : x) v = rng.uniform(-4, 4);
    return x;
  };
  IntPoint v1 = rounded_point(s, draw_x()), v2 = rounded_point(s, draw_x());
  if (wedge_norm_squared(std::vector<IntVector>{v1.z, v2.z}) == 0) return std::nullopt;
  Rational general = wedge_constant_squared(n + m);
  for (int attempt = 0; attempt < 60; ++attempt) {
    Rational h = Rational(rng.uniform(8, 16), 8) * pow_int(Rational(2), rng.uniform(0, 8));
    Rational r = Rational(rng.uniform(8, 16), 8) * pow_int(Rational(2), rng.uniform(-5, 8));
    if (pow_int(Rational(2 * h + 1), n) * pow_int(Rational(2 * r + 1), m) > 1000000) continue;
    if (!products_fit(s, v1, v2, h, r, c2)) continue;
    if (gap && products_fit(s, v1, v2, h, r, general)) continue;
    return LemmaInstance{s, v1, v2, h, r};
  }
  return std::nullopt;
}

inline CampaignReport lemma_campaign(const CampaignConfig& c, bool three_d) {
  CampaignReport rep;
  rep.columns = {"trial", "n", "m", "v1", "v2", "h", "r", "output", "verified", "general_rejects"};
  auto rows = run_indexed(c.trials, c.jobs, [&](long i) {
    Rng rng(trial_seed(c.seed, i));
    auto [n, m] = c.dims[i % c.dims.size()];
    if (three_d && n + m != 3) throw Error(ErrorCode::kUsage, "lemma3d campaigns need d = 3");
    if (n + m < 3) throw Error(ErrorCode::kUsage, "lemma campaigns need d >= 3");
    Rational c2 = three_d ? Rational(4) : wedge_constant_squared(n + m);
    std::optional<LemmaInstance> inst;
    while (!inst) inst = random_lemma_instance(rng, n, m, c.den_bound, c2, three_d);
    const LemmaInstance& L = *inst;
    Certificate cert = three_d ? main_lemma_transfer_3d(L.system, L.v1, L.v2, L.h, L.r)
                               : main_lemma_transfer(L.system, L.v1, L.v2, L.h, L.r);
    bool ok = verify_certificate(nlohmann::ordered_json::parse(to_json(cert).dump())).ok;
    std::string rejects = "";
    if (three_d) {
      try {
        main_lemma_transfer(L.system, L.v1, L.v2, L.h, L.r);
        rejects = "false";
        ok = false;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kHypothesisViolated) throw;
        rejects = "true";
      }
    }
    TrialRow row;
    row.cells = {std::to_string(i), std::to_string(n), std::to_string(m), L.v1.str(), L.v2.str(),
                 to_string(L.h), to_string(L.r), cert.output_point.str(), ok ? "true" : "false",
                 rejects};
    row.status = ok ? TrialRow::kPass : TrialRow::kFail;
    return row;
  });
  for (auto& r : rows) tally(rep, std::move(r));
  return rep;
}

inline CampaignReport comparison_campaign(const CampaignConfig&) {
  CampaignReport rep;
  rep.columns = {"psi", "branch", "t", "ours", "jarnik", "ratio", "at_most"};
  for (const auto& row : compare_3d_jarnik()) {
    auto j = row.to_json();
    rep.rows.push_back({j["psi"], j["branch"], j["t"], j["ours"], j["jarnik"], j["ratio"],
                        j["at_most"]});
    (row.at_most == Truth::kTrue ? rep.passed : rep.failed)++;
  }
  return rep;
}

}  // namespace detail

// The transference inequalities checked together by the "inequalities" family.
inline std::vector<Family> inequality_families() {
  return {Family::kKhintchine,        Family::kDyson,           Family::kLoranoyadenie1,
          Family::kLoranoyadenie2,    Family::kLoranoyadenie3,  Family::kMyInequalities};
}

inline std::vector<std::string> campaign_families() {
  std::vector<std::string> out{"inequalities"};
  for (const auto& [f, name] : family_names()) out.push_back(name);
  for (const char* extra : {"mahler", "mahler_asymmetric", "main_lemma", "lemma3d",
                            "theorem_3D_vs_jarnik"})
    out.push_back(extra);
  return out;
}

inline CampaignReport run_campaign(const CampaignConfig& c) {
  CampaignReport rep;
  if (c.family == "mahler") rep = detail::mahler_campaign(c, false);
  else if (c.family == "mahler_asymmetric") rep = detail::mahler_campaign(c, true);
  else if (c.family == "main_lemma") rep = detail::lemma_campaign(c, false);
  else if (c.family == "lemma3d") rep = detail::lemma_campaign(c, true);
  else if (c.family == "theorem_3D_vs_jarnik") rep = detail::comparison_campaign(c);
  else if (c.family == "dominions") rep = detail::dominions_campaign(c);
  else if (c.family == "inequalities") rep = detail::exponent_campaign(c, inequality_families());
  else if (auto f = parse_family(c.family)) rep = detail::exponent_campaign(c, {*f});
  else throw Error(ErrorCode::kUsage, "unknown campaign family: " + c.family);
  rep.family = c.family;
  rep.config = c.to_json();
  return rep;
}

inline void write_report(const CampaignReport& rep, const CampaignConfig& c) {
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kUsage, "cannot write " + path);
    f << text;
  };
  if (!c.csv.empty()) write(c.csv, rep.to_csv());
  if (!c.json.empty()) write(c.json, rep.to_json().dump(2) + "\n");
}

}  // namespace dioph
