#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dioph/campaign.hpp"
#include "dioph/certificate.hpp"
#include "dioph/exponents.hpp"
#include "dioph/section_dual.hpp"
#include "dioph/transference.hpp"

using namespace dioph;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitBudget = 3;

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::kUsage:
    case ErrorCode::kParse: return kExitUsage;
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kPrecisionExhausted:
    case ErrorCode::kOverflow: return kExitBudget;
    default: return kExitHypothesis;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

Rational rat(const std::string& s) { return parse_rational(s); }

// Where Θ comes from: inline rows, a preset, or a seeded random draw.
struct ThetaSource {
  int n = 0, m = 0;
  std::string theta, preset;
  std::int64_t seed = -1;
  long den_bound = 0;
  int den_bits = 0;

  void add_options(CLI::App* app) {
    app->add_option("--n", n, "rows of theta");
    app->add_option("--m", m, "columns of theta");
    app->add_option("--theta", theta, "rows separated by ';', entries by ','");
    app->add_option("--preset", preset, "named preset");
    app->add_option("--seed", seed, "random theta from this seed");
    app->add_option("--den-bound", den_bound, "random rational entries p/q, q <= bound");
    app->add_option("--den-bits", den_bits, "random dyadic entries k/2^bits");
  }

  System build() const {
    System s;
    if (!preset.empty()) {
      s = find_preset(preset).system;
    } else if (!theta.empty()) {
      auto rows = split(theta, ';');
      std::size_t cols = split(rows[0], ',').size();
      RatMatrix t(rows.size(), cols);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        auto cells = split(rows[i], ',');
        if (cells.size() != cols) throw Error(ErrorCode::kUsage, "ragged theta rows");
        for (std::size_t j = 0; j < cols; ++j) t(i, j) = rat(cells[j]);
      }
      s = System::from(t);
    } else if (seed >= 0) {
      if (n < 1 || m < 1) throw Error(ErrorCode::kUsage, "random theta needs --n and --m");
      Rng rng(static_cast<std::uint64_t>(seed));
      if (den_bits > 0) s = random_dyadic_system(rng, n, m, den_bits);
      else s = random_rational_system(rng, n, m, den_bound > 0 ? den_bound : 30);
    } else {
      throw Error(ErrorCode::kUsage, "give --theta, --preset or --seed");
    }
    if ((n && n != s.n) || (m && m != s.m))
      throw Error(ErrorCode::kUsage, "theta is " + std::to_string(s.n) + "x" +
                                         std::to_string(s.m) + ", not " + std::to_string(n) +
                                         "x" + std::to_string(m));
    return s;
  }
};

IntPoint parse_point(const std::string& text, const System& s) {
  auto cells = split(text, ',');
  if (static_cast<int>(cells.size()) != s.d())
    throw Error(ErrorCode::kUsage, "point needs " + std::to_string(s.d()) + " coordinates");
  IntVector z;
  for (const auto& c : cells) {
    Rational q = rat(c);
    if (denominator(q) != 1) throw Error(ErrorCode::kUsage, "point coordinates must be integers");
    z.push_back(numerator(q));
  }
  return IntPoint(z, s.m);
}

FunctionSpec parse_power(const std::string& text, const std::string& name) {
  auto parts = split(text, ':');
  if (parts.size() != 2) throw Error(ErrorCode::kUsage, name + " expects K:a for K t^-a");
  return power_function(Enclosure(rat(parts[0])), rat(parts[1]), name);
}

struct Output {
  std::string format = "json";
  std::string path;

  void add_options(CLI::App* app, const std::string& default_format) {
    format = default_format;
    app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--output,-o", path, "write here instead of stdout");
  }

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kUsage, "cannot write " + path);
    f << text;
  }
};

std::string csv_of(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  CampaignReport r;
  r.columns = header;
  r.rows = rows;
  return r.to_csv();
}

int run_delta(int dmax, const Output& out) {
  if (dmax < 2) throw Error(ErrorCode::kUsage, "--dmax must be at least 2");
  std::vector<std::vector<std::string>> rows;
  Json arr = Json::array();
  for (int d = 2; d <= dmax; ++d) {
    Rational D = delta_d(d);
    Rational inv2 = 1 / (D * D);
    bool lower = Rational(d, 2) <= inv2, upper = inv2 <= d;
    std::string mf = to_decimal(mahler_factor(d), 12);
    rows.push_back({std::to_string(d), to_string(D), to_decimal(Enclosure(D), 15),
                    lower ? "true" : "false", upper ? "true" : "false", mf});
    arr.push_back({{"d", d}, {"delta", to_string(D)}, {"decimal", rows.back()[2]},
                   {"lower_bound_ok", lower}, {"upper_bound_ok", upper}, {"mahler_factor", mf}});
  }
  if (out.format == "csv")
    out.emit(csv_of({"d", "delta", "decimal", "lower_bound_ok", "upper_bound_ok", "mahler_factor"},
                    rows));
  else
    out.emit(arr.dump(2) + "\n");
  return kExitOk;
}

Side parse_side(const std::string& s) {
  if (s == "primal") return Side::kPrimal;
  if (s == "dual") return Side::kDual;
  throw Error(ErrorCode::kUsage, "side must be primal or dual");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transference of Diophantine approximation: exact tables, certificates and campaigns"};
  app.require_subcommand(1);
  long precision = 0;
  std::uint64_t budget = kDefaultBudget;
  app.add_option("--precision-bits", precision, "working precision (default from DIOPH_PRECISION_BITS or 256)");
  app.add_option("--budget", budget, "maximum box candidates per search");

  // delta
  auto* delta = app.add_subcommand("delta", "table of central cube-section volumes");
  int dmax = 8;
  Output delta_out;
  delta->add_option("--dmax", dmax, "largest dimension")->required();
  delta_out.add_options(delta, "csv");

  // best-approx
  auto* best = app.add_subcommand("best-approx", "best-approximation table");
  ThetaSource best_src;
  long best_t = 1000;
  std::string best_side = "primal";
  Output best_out;
  best_src.add_options(best);
  best->add_option("--t-max", best_t, "largest |x| (primal) or |y| (dual)");
  best->add_option("--side", best_side, "primal or dual");
  best_out.add_options(best, "csv");

  // estimate
  auto* est = app.add_subcommand("estimate", "exponent estimates from the tables");
  ThetaSource est_src;
  long est_t = 0;
  std::string est_side = "both";
  Output est_out;
  est_src.add_options(est);
  est->add_option("--t-max", est_t, "table length, 0 for the per-shape default");
  est->add_option("--side", est_side, "primal, dual or both");
  est_out.add_options(est, "json");

  // transfer
  auto* tr = app.add_subcommand("transfer", "run a transference procedure and emit its certificate");
  std::string kind;
  tr->set_help_flag("--help", "Print this help message and exit");
  ThetaSource tr_src;
  std::string X, U, h, r, t, Phi, Psi, witness, v1s, v2s, psi_power, phi_power;
  int k = 1, direction = 1;
  Output tr_out;
  tr->add_option("kind", kind, "mahler|asymmetric|lemma|lemma3d|semicore|alphas-core")
      ->required()
      ->check(CLI::IsMember({"mahler", "asymmetric", "lemma", "lemma3d", "semicore", "alphas-core"}));
  tr_src.add_options(tr);
  tr->add_option("--X", X, "mahler: bound on |x|");
  tr->add_option("--U", U, "mahler: bound on the residual");
  tr->add_option("--witness", witness, "mahler: point of M_{U,X} (x then y); searched if absent");
  tr->add_option("--k", k, "asymmetric: coordinate carrying the factor d-1");
  tr->add_option("--v1", v1s, "lemma/semicore: first point");
  tr->add_option("--v2", v2s, "lemma/semicore: second point");
  tr->add_option("--h", h, "lemma/alphas-core: h");
  tr->add_option("--r", r, "lemma: r");
  tr->add_option("--t", t, "semicore: t");
  tr->add_option("--Phi", Phi, "semicore: Phi");
  tr->add_option("--Psi", Psi, "semicore: Psi");
  tr->add_option("--direction", direction, "semicore: 1 or -1");
  tr->add_option("--psi", psi_power, "alphas-core: K:a for psi = K t^-a (default 1:m/n)");
  tr->add_option("--phi", phi_power, "alphas-core: K:a for phi (default matched to psi)");
  tr_out.add_options(tr, "json");

  // verify-certificate
  auto* ver = app.add_subcommand("verify-certificate", "re-check a certificate from its JSON");
  std::string cert_path;
  ver->add_option("file", cert_path, "certificate JSON")->required();

  // campaign
  auto* camp = app.add_subcommand("campaign", "seeded campaign over a family");
  CampaignConfig cc;
  std::string config_path, family, dims, presets;
  long trials = -1, t_max = -1, den_bound = -1;
  int den_bits = -1, jobs = 0;
  std::int64_t seed = -1;
  double tolerance = -1;
  Output camp_out;
  camp->add_option("--config", config_path, "key = value file");
  camp->add_option("--family", family, "inequality family, dominions, mahler, mahler_asymmetric, "
                                       "main_lemma, lemma3d, theorem_3D_vs_jarnik or inequalities");
  camp->add_option("--dims", dims, "shapes NxM or dK, comma separated");
  camp->add_option("--trials", trials, "random trials");
  camp->add_option("--seed", seed, "master seed");
  camp->add_option("--t-max", t_max, "table length cap, 0 for per-shape defaults");
  camp->add_option("--den-bits", den_bits, "dyadic bits of random systems");
  camp->add_option("--den-bound", den_bound, "denominator bound of random rational systems");
  camp->add_option("--presets", presets, "include presets (true/false)");
  camp->add_option("--tolerance", tolerance, "inequality tolerance");
  camp->add_option("--jobs", jobs, "worker threads");
  camp->add_option("--csv", cc.csv, "CSV report path");
  camp->add_option("--json", cc.json, "JSON report path");
  camp_out.add_options(camp, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    std::optional<PrecisionScope> scope;
    if (precision > 0) scope.emplace(precision);

    if (*delta) return run_delta(dmax, delta_out);

    if (*best) {
      System s = best_src.build();
      BestApproxTable tab = best_approx_table(s, parse_side(best_side), best_t);
      best_out.emit(best_out.format == "csv" ? table_csv(tab) : table_json(tab).dump(2) + "\n");
      return kExitOk;
    }

    if (*est) {
      System s = est_src.build();
      Json j;
      j["n"] = s.n;
      j["m"] = s.m;
      std::vector<Side> sides;
      if (est_side == "both") sides = {Side::kPrimal, Side::kDual};
      else sides = {parse_side(est_side)};
      std::vector<std::vector<std::string>> rows;
      for (Side sd : sides) {
        Integer T = est_t > 0 ? Integer(est_t) : auto_t_max(s, sd);
        ExponentEstimate e = estimate_exponents(s, sd, T);
        j[side_name(sd)] = e.to_json();
        rows.push_back({side_name(sd), T.str(), to_string(e.alpha_lower), to_string(e.beta_lower),
                        detail::dec(e.alpha_fit), detail::dec(e.beta_fit),
                        e.capped ? "true" : "false"});
      }
      if (est_out.format == "csv")
        est_out.emit(csv_of({"side", "t_max", "alpha_lower", "beta_lower", "alpha_fit",
                             "beta_fit", "capped"},
                            rows));
      else
        est_out.emit(j.dump(2) + "\n");
      return kExitOk;
    }

    if (*tr) {
      System s = tr_src.build();
      auto need = [](const std::string& v, const char* name) {
        if (v.empty()) throw Error(ErrorCode::kUsage, std::string("missing --") + name);
        return rat(v);
      };
      Certificate c;
      if (kind == "mahler" || kind == "asymmetric") {
        Rational x = need(X, "X"), u = need(U, "U");
        IntPoint w;
        if (!witness.empty()) {
          w = parse_point(witness, s);
        } else {
          auto found = find_point(Box::make(s, Side::kPrimal, Enclosure(u), Enclosure(x)), budget);
          if (!found) throw Error(ErrorCode::kNoWitnesses, "M_{U,X} has no nonzero point");
          w = *found;
        }
        c = kind == "mahler" ? mahler_transfer(s, x, u, w, budget)
                             : mahler_transfer_asymmetric(s, x, u, w, k, budget);
      } else if (kind == "lemma" || kind == "lemma3d") {
        if (v1s.empty() || v2s.empty()) throw Error(ErrorCode::kUsage, "missing --v1/--v2");
        IntPoint a = parse_point(v1s, s), b = parse_point(v2s, s);
        Rational hh = need(h, "h"), rr = need(r, "r");
        c = kind == "lemma" ? main_lemma_transfer(s, a, b, hh, rr, budget)
                            : main_lemma_transfer_3d(s, a, b, hh, rr, budget);
      } else if (kind == "semicore") {
        Rational tt = need(t, "t"), ph = need(Phi, "Phi"), ps = need(Psi, "Psi");
        if (v1s.empty() != v2s.empty()) throw Error(ErrorCode::kUsage, "give both --v1 and --v2");
        c = v1s.empty() ? semicore(s, tt, ph, ps, direction, budget)
                        : semicore(s, tt, ph, ps, direction, parse_point(v1s, s),
                                   parse_point(v2s, s), budget);
      } else {
        Rational hh = need(h, "h");
        FunctionSpec psi = psi_power.empty()
                               ? power_function(Enclosure(1), Rational(s.m, s.n), "psi")
                               : parse_power(psi_power, "psi");
        FunctionSpec phi = phi_power.empty() ? gamma_phi(s.n, s.m, psi.a) : parse_power(phi_power, "phi");
        c = alphas_core(s, phi, psi, hh, budget);
      }
      Json j = to_json(c);
      tr_out.emit(j.dump(2) + "\n");
      return c.all_checks() ? kExitOk : kExitHypothesis;
    }

    if (*ver) {
      std::ifstream f(cert_path);
      if (!f) throw Error(ErrorCode::kUsage, "cannot read " + cert_path);
      Json j;
      try {
        j = Json::parse(f);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kParse, e.what());
      }
      VerifyReport rep = verify_certificate(j);
      Json out;
      out["ok"] = rep.ok;
      out["checks"] = Json::object();
      for (const auto& ch : rep.checks) out["checks"][ch.name] = ch.value;
      std::cout << out.dump(2) << "\n";
      return rep.ok ? kExitOk : kExitHypothesis;
    }

    if (*camp) {
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw Error(ErrorCode::kUsage, "cannot read " + config_path);
        std::stringstream ss;
        ss << f.rdbuf();
        std::string csv = cc.csv, json = cc.json;
        cc = CampaignConfig::parse(ss.str());
        if (!csv.empty()) cc.csv = csv;
        if (!json.empty()) cc.json = json;
      }
      if (!family.empty()) cc.family = family;
      if (!dims.empty()) cc.set("dims", dims);
      if (trials >= 0) cc.trials = trials;
      if (seed >= 0) cc.seed = static_cast<std::uint64_t>(seed);
      if (t_max >= 0) cc.t_max = t_max;
      if (den_bits > 0) cc.set("den_bits", std::to_string(den_bits));
      if (den_bound > 0) cc.den_bound = den_bound;
      if (!presets.empty()) cc.set("presets", presets);
      if (tolerance >= 0) cc.tolerance = tolerance;
      if (jobs > 0) cc.jobs = jobs;
      if (cc.family.empty()) throw Error(ErrorCode::kUsage, "campaign needs a family");
      CampaignReport rep = run_campaign(cc);
      write_report(rep, cc);
      if (cc.csv.empty() && cc.json.empty())
        camp_out.emit(camp_out.format == "csv" ? rep.to_csv() : rep.to_json().dump(2) + "\n");
      std::cerr << rep.summary() << "\n";
      return rep.ok() ? kExitOk : kExitHypothesis;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (exit_code(e.code()) == kExitUsage) std::cerr << "\n" << app.help();
    return exit_code(e.code());
  }
  return kExitUsage;
}
