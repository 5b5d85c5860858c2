#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dioph/lattice.hpp"
#include "dioph/section_dual.hpp"

namespace dioph {

enum class CertificateKind {
  kMahler,
  kMahlerAsymmetric,
  kMainLemma,
  kSemicore1,
  kSemicore2,
  kAlphasCore,
  kLemma3d,
};

inline const char* kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::kMahler: return "mahler";
    case CertificateKind::kMahlerAsymmetric: return "mahler_asymmetric";
    case CertificateKind::kMainLemma: return "main_lemma";
    case CertificateKind::kSemicore1: return "semicore1";
    case CertificateKind::kSemicore2: return "semicore2";
    case CertificateKind::kAlphasCore: return "alphas_core";
    case CertificateKind::kLemma3d: return "lemma3d";
  }
  return "unknown";
}

inline CertificateKind parse_kind(const std::string& s) {
  for (auto k : {CertificateKind::kMahler, CertificateKind::kMahlerAsymmetric,
                 CertificateKind::kMainLemma, CertificateKind::kSemicore1,
                 CertificateKind::kSemicore2, CertificateKind::kAlphasCore,
                 CertificateKind::kLemma3d})
    if (s == kind_name(k)) return k;
  throw Error(ErrorCode::kParse, "unknown certificate kind: " + s);
}

struct Check {
  std::string name;
  bool value = false;
};

struct Certificate {
  CertificateKind kind = CertificateKind::kMahler;
  System system;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::vector<IntPoint> witnesses;
  Box target_box;
  IntPoint output_point;
  std::vector<Check> checks;

  void check(std::string name, bool value) { checks.push_back({std::move(name), value}); }
  bool all_checks() const {
    for (const auto& c : checks)
      if (!c.value) return false;
    return true;
  }
};

namespace detail {

inline nlohmann::ordered_json enclosure_json(const Enclosure& e) {
  nlohmann::ordered_json j;
  j["lo"] = to_string(e.lo());
  j["hi"] = to_string(e.hi());
  j["decimal"] = to_decimal(e, 12);
  return j;
}

inline Enclosure enclosure_from_json(const nlohmann::ordered_json& j) {
  if (j.is_string()) return Enclosure(parse_rational(j.get<std::string>()));
  return Enclosure(parse_rational(j.at("lo").get<std::string>()),
                   parse_rational(j.at("hi").get<std::string>()));
}

inline nlohmann::ordered_json point_json(const IntPoint& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& v : p.z) j.push_back(v.str());
  return j;
}

inline IntPoint point_from_json(const nlohmann::ordered_json& j, int m) {
  IntPoint p;
  p.m = m;
  for (const auto& v : j) p.z.push_back(Integer(v.get<std::string>()));
  return p;
}

}  // namespace detail

inline nlohmann::ordered_json system_json(const System& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["m"] = s.m;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < s.n; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int k = 0; k < s.m; ++k) row.push_back(to_string(s.theta(i, k)));
    rows.push_back(row);
  }
  j["theta"] = rows;
  return j;
}

inline System system_from_json(const nlohmann::ordered_json& j) {
  int n = j.at("n").get<int>(), m = j.at("m").get<int>();
  RatMatrix theta(n, m);
  const auto& rows = j.at("theta");
  if (static_cast<int>(rows.size()) != n) throw Error(ErrorCode::kParse, "theta row count");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != m) throw Error(ErrorCode::kParse, "theta column count");
    for (int k = 0; k < m; ++k) theta(i, k) = parse_rational(rows[i][k].get<std::string>());
  }
  return System::from(theta);
}

// Field order is fixed: kind, system, inputs, witnesses, target_box,
// output_point, checks.
inline nlohmann::ordered_json to_json(const Certificate& c) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(c.kind);
  j["system"] = system_json(c.system);
  j["inputs"] = c.inputs;
  nlohmann::ordered_json w = nlohmann::ordered_json::array();
  for (const auto& p : c.witnesses) w.push_back(detail::point_json(p));
  j["witnesses"] = w;
  nlohmann::ordered_json box;
  box["side"] = side_name(c.target_box.side);
  box["h"] = nlohmann::ordered_json::array();
  for (const auto& e : c.target_box.h) box["h"].push_back(detail::enclosure_json(e));
  box["r"] = nlohmann::ordered_json::array();
  for (const auto& e : c.target_box.r) box["r"].push_back(detail::enclosure_json(e));
  j["target_box"] = box;
  j["output_point"] = detail::point_json(c.output_point);
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& ch : c.checks) {
    nlohmann::ordered_json item;
    item["name"] = ch.name;
    item["value"] = ch.value;
    checks.push_back(item);
  }
  j["checks"] = checks;
  return j;
}

inline Certificate certificate_from_json(const nlohmann::ordered_json& j) {
  try {
    Certificate c;
    c.kind = parse_kind(j.at("kind").get<std::string>());
    c.system = system_from_json(j.at("system"));
    c.inputs = nlohmann::ordered_json(j.at("inputs"));
    for (const auto& w : j.at("witnesses"))
      c.witnesses.push_back(detail::point_from_json(w, c.system.m));
    const auto& box = j.at("target_box");
    std::string side = box.at("side").get<std::string>();
    if (side != "primal" && side != "dual") throw Error(ErrorCode::kParse, "bad side " + side);
    std::vector<Enclosure> h, r;
    for (const auto& e : box.at("h")) h.push_back(detail::enclosure_from_json(e));
    for (const auto& e : box.at("r")) r.push_back(detail::enclosure_from_json(e));
    c.target_box = Box::make(c.system, side == "primal" ? Side::kPrimal : Side::kDual,
                             std::move(h), std::move(r));
    c.output_point = detail::point_from_json(j.at("output_point"), c.system.m);
    for (const auto& ch : j.at("checks"))
      c.checks.push_back({ch.at("name").get<std::string>(), ch.at("value").get<bool>()});
    return c;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed certificate: ") + e.what());
  }
}

struct VerifyReport {
  bool ok = true;
  std::vector<Check> checks;

  void add(std::string name, bool value) {
    checks.push_back({std::move(name), value});
    ok = ok && value;
  }
};

namespace detail {

inline Rational input_rational(const Certificate& c, const char* key) {
  if (!c.inputs.contains(key))
    throw Error(ErrorCode::kParse, std::string("certificate input missing: ") + key);
  return parse_rational(c.inputs.at(key).get<std::string>());
}

inline Enclosure input_enclosure(const Certificate& c, const char* key) {
  if (!c.inputs.contains(key))
    throw Error(ErrorCode::kParse, std::string("certificate input missing: ") + key);
  return enclosure_from_json(c.inputs.at(key));
}

inline Rational residual_norm(const System& s, const IntPoint& p) {
  return sup_norm(primal_residual(s, p));
}

// Squared main-lemma products for the actual coordinates of v1, v2, checked
// against P = h^{n-1} r^{m-1} / c, Qh = h^{n-2} r^m / c, Qr = h^n r^{m-2} / c
// (all squared).
inline Truth products_within(const System& s, const IntPoint& v1, const IntPoint& v2,
                             const Enclosure& P2, const Enclosure& Qh2,
                             const Enclosure& Qr2) {
  Rational r1 = Rational(sup_norm(v1.x())), r2 = Rational(sup_norm(v2.x()));
  Rational h1 = residual_norm(s, v1), h2 = residual_norm(s, v2);
  Rational mixed = std::max(r1, r2) * std::max(h1, h2);
  Truth a = less_equal(Enclosure(Rational(mixed * mixed)), P2);
  Truth b = less_equal(Enclosure(Rational(h1 * h1 * h2 * h2)), Qh2);
  Truth c = less_equal(Enclosure(Rational(r1 * r1 * r2 * r2)), Qr2);
  if (a == Truth::kFalse || b == Truth::kFalse || c == Truth::kFalse) return Truth::kFalse;
  if (a == Truth::kTrue && b == Truth::kTrue && c == Truth::kTrue) return Truth::kTrue;
  return Truth::kUnknown;
}

// The squared right-hand sides for box parameters h, r and constant² c2.
struct ProductBounds {
  Enclosure P2, Qh2, Qr2;
};

inline ProductBounds product_bounds(int n, int m, const Enclosure& h, const Enclosure& r,
                                    const Rational& c2) {
  Enclosure hn1 = pow(h, static_cast<long>(n - 1)), rm1 = pow(r, static_cast<long>(m - 1));
  Enclosure P = hn1 * rm1;
  Enclosure Qh = pow(h, static_cast<long>(n - 2)) * pow(r, static_cast<long>(m));
  Enclosure Qr = pow(h, static_cast<long>(n)) * pow(r, static_cast<long>(m - 2));
  Enclosure C(c2);
  return {P * P / C, Qh * Qh / C, Qr * Qr / C};
}

inline bool collinear(const IntPoint& a, const IntPoint& b) {
  return wedge_norm_squared(std::vector<IntVector>{a.z, b.z}) == 0;
}

inline bool orthogonal(const IntPoint& a, const IntPoint& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.z.size(); ++i) s += a.z[i] * b.z[i];
  return s == 0;
}

}  // namespace detail

// Independent re-verification from the serialized data alone.
inline VerifyReport verify_certificate(const Certificate& c) {
  VerifyReport rep;
  const System& s = c.system;
  int d = s.d(), n = s.n, m = s.m;
  const IntPoint& p = c.output_point;
  rep.add("dimension", p.d() == d && p.m == m);
  if (!rep.ok) return rep;
  rep.add("output_nonzero", !p.is_zero());
  rep.add("output_in_target_box", box_contains(c.target_box, p) == Truth::kTrue);
  rep.add("target_is_dual", c.target_box.side == Side::kDual);
  for (const auto& w : c.witnesses) rep.add("witness_dimension", w.d() == d && w.m == m);
  if (!rep.ok) return rep;

  switch (c.kind) {
    case CertificateKind::kMahler:
    case CertificateKind::kMahlerAsymmetric: {
      Rational X = detail::input_rational(c, "X"), U = detail::input_rational(c, "U");
      rep.add("witness_count", c.witnesses.size() == 1);
      if (!rep.ok) break;
      const IntPoint& w = c.witnesses[0];
      rep.add("witness_nonzero", !w.is_zero());
      rep.add("witness_in_primal_box",
              contains_exact(s, Side::kPrimal, RatVector(n, U), RatVector(m, X), w));
      // Target bounds raised to d-1 must not exceed the guaranteed values.
      Rational ybase = pow_int(X, m) * pow_int(U, 1 - m);
      Rational vbase = pow_int(X, 1 - n) * pow_int(U, n);
      std::vector<Rational> ly(n, Rational(1)), lx(m, Rational(1));
      if (c.kind == CertificateKind::kMahler) {
        Rational inv = 1 / delta_d(d);
        ybase *= inv;
        vbase *= inv;
      } else {
        long k = c.inputs.at("k").get<long>();
        rep.add("k_in_range", k >= 1 && k <= d);
        if (!rep.ok) break;
        if (k <= m) lx[k - 1] = d - 1;
        else ly[k - 1 - m] = d - 1;
      }
      bool within = true;
      for (int i = 0; i < n; ++i)
        within = within && pow_int(c.target_box.h[i].lo(), d - 1) <=
                               pow_int(ly[i], d - 1) * ybase;
      for (int j = 0; j < m; ++j)
        within = within && pow_int(c.target_box.r[j].lo(), d - 1) <=
                               pow_int(lx[j], d - 1) * vbase;
      rep.add("target_within_guarantee", within);
      break;
    }
    case CertificateKind::kMainLemma:
    case CertificateKind::kLemma3d:
    case CertificateKind::kSemicore1:
    case CertificateKind::kSemicore2:
    case CertificateKind::kAlphasCore: {
      bool mahler_route = c.kind == CertificateKind::kAlphasCore &&
                          c.inputs.value("route", std::string()) == "mahler";
      if (mahler_route) {
        rep.add("witness_count", c.witnesses.size() == 1);
        if (!rep.ok) break;
        Enclosure hs = detail::input_enclosure(c, "h_star");
        Enclosure rs = detail::input_enclosure(c, "r_star");
        rep.add("witness_in_primal_box",
                !c.witnesses[0].is_zero() &&
                    contains_exact(s, Side::kPrimal, RatVector(n, hs.lo()),
                                   RatVector(m, rs.lo()), c.witnesses[0]));
        break;
      }
      rep.add("witness_count", c.witnesses.size() == 2);
      if (!rep.ok) break;
      const IntPoint& v1 = c.witnesses[0];
      const IntPoint& v2 = c.witnesses[1];
      rep.add("witnesses_non_collinear", !detail::collinear(v1, v2));
      rep.add("output_orthogonal", detail::orthogonal(p, v1) && detail::orthogonal(p, v2));
      if (c.kind == CertificateKind::kSemicore1 || c.kind == CertificateKind::kSemicore2) {
        Rational t = detail::input_rational(c, "t");
        Rational Phi = detail::input_rational(c, "Phi"), Psi = detail::input_rational(c, "Psi");
        Enclosure P2(Rational(t * t * Phi * Phi)), A2(Rational(Phi * Phi * Psi * Psi)),
            B2(Rational(t * t * Phi / Psi * t * t * Phi / Psi));
        bool dir1 = c.kind == CertificateKind::kSemicore1;
        rep.add("hypothesis", detail::products_within(s, v1, v2, P2, dir1 ? A2 : B2,
                                                      dir1 ? B2 : A2) == Truth::kTrue);
      } else {
        if (c.target_box.h.empty() || c.target_box.r.empty()) break;
        Rational c2 = c.kind == CertificateKind::kLemma3d ? Rational(4)
                                                          : wedge_constant_squared(d);
        auto pb = detail::product_bounds(n, m, c.target_box.h[0], c.target_box.r[0], c2);
        rep.add("hypothesis",
                detail::products_within(s, v1, v2, pb.P2, pb.Qh2, pb.Qr2) == Truth::kTrue);
      }
      break;
    }
  }
  return rep;
}

inline VerifyReport verify_certificate(const nlohmann::ordered_json& j) {
  return verify_certificate(certificate_from_json(j));
}

}  // namespace dioph
