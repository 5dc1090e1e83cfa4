#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hesslab/atlas.hpp"
#include "hesslab/gauss2.hpp"

namespace hesslab {

using Json = nlohmann::ordered_json;

// machine-size integers as numbers, larger ones as decimal strings
inline Json to_json(const Integer& a) {
  if (a.fits_slong_p()) return Json(a.get_si());
  return Json(a.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer a;
    if (a.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer string", 0);
    return a;
  }
  throw ParseError("expected an integer", 0);
}

inline Json to_json(const Rational& q) { return Json(q.get_str()); }

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v.coords()) a.push_back(to_json(x));
  return a;
}

inline IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array", 0);
  IntVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = integer_from_json(j[i]);
  return v;
}

inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) rows.push_back(to_json(m.row(i)));
  return Json{{"n", m.dim()}, {"rows", rows}};
}

inline IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows")) throw ParseError("matrix JSON needs a \"rows\" array", 0);
  const Json& rows = j.at("rows");
  const std::size_t n = rows.size();
  if (j.contains("n") && j.at("n").get<std::size_t>() != n) throw ParseError("\"n\" disagrees with the row count", 0);
  if (n < 2 || n > 4) throw ParseError("matrix dimension must be 2, 3 or 4", 0);
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("row " + std::to_string(i + 1) + " has wrong length", 0);
    for (std::size_t k = 0; k < n; ++k) m(i, k) = integer_from_json(rows[i][k]);
  }
  return m;
}

/// Text form "0 1; 1 0" or the JSON object form.
inline IntMatrix parse_matrix_any(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b != std::string::npos && s[b] == '{') {
    Json j;
    try {
      j = Json::parse(s);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    return matrix_from_json(j);
  }
  return parse_matrix(s);
}

inline Json to_json(const IntPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const FamilyPoint& fp) {
  Json params = Json::array();
  for (const auto& x : fp.params) params.push_back(to_json(x));
  return Json{{"type", fp.type.to_string()}, {"anchor", to_json(fp.anchor)}, {"params", params}};
}

inline FamilyPoint family_point_from_json(const Json& j) {
  FamilyPoint fp;
  fp.type = parse_hess_type(j.at("type").get<std::string>());
  fp.anchor = vector_from_json(j.at("anchor"));
  for (const auto& x : j.at("params")) fp.params.push_back(integer_from_json(x));
  return fp;
}

inline Json to_json(const ReducedVerdict& v) {
  Json j{{"status", to_string(v.status)}, {"certificate", to_string(v.certificate)}};
  if (v.certificate == CertificateKind::BoundChecked) j["bound"] = to_json(v.bound);
  j["complexity"] = to_json(v.complexity);
  if (v.status != VerdictStatus::Inconclusive) j["min_value"] = to_json(v.min_value);
  if (v.witness) {
    j["witness"] = to_json(*v.witness);
    j["witness_value"] = to_json(v.witness_value);
  }
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

inline ReducedVerdict verdict_from_json(const Json& j) {
  ReducedVerdict v;
  const std::string st = j.at("status").get<std::string>();
  v.status = st == "Reduced" ? VerdictStatus::Reduced : st == "Nonreduced" ? VerdictStatus::Nonreduced
                                                                           : VerdictStatus::Inconclusive;
  const std::string ck = j.at("certificate").get<std::string>();
  v.certificate = ck == "SailCertified" ? CertificateKind::SailCertified
                  : ck == "BoundChecked" ? CertificateKind::BoundChecked
                                         : CertificateKind::None;
  if (j.contains("bound")) v.bound = integer_from_json(j.at("bound"));
  v.complexity = integer_from_json(j.at("complexity"));
  if (j.contains("min_value")) v.min_value = integer_from_json(j.at("min_value"));
  if (j.contains("witness")) {
    v.witness = vector_from_json(j.at("witness"));
    v.witness_value = integer_from_json(j.at("witness_value"));
  }
  if (j.contains("reason")) v.reason = j.at("reason").get<std::string>();
  return v;
}

inline Json to_json(const GridCell& c) {
  Json params = Json::array();
  for (const auto& x : c.params) params.push_back(to_json(x));
  Json j{{"params", params}, {"class", to_string(c.cls)}};
  if (c.kind != Spectrum4Kind::None) j["kind"] = to_string(c.kind);
  j["discriminant"] = to_json(c.discriminant);
  if (c.verdict) j["verdict"] = to_json(*c.verdict);
  if (c.fallback) j["fallback"] = true;
  return j;
}

inline GridCell grid_cell_from_json(const Json& j) {
  GridCell c;
  for (const auto& x : j.at("params")) c.params.push_back(integer_from_json(x));
  static const std::vector<std::pair<std::string, CellClass>> classes{
      {"ReduciblePoly", CellClass::ReduciblePoly}, {"RS", CellClass::RS},
      {"NRS_Reduced", CellClass::NRS_Reduced},     {"NRS_Nonreduced", CellClass::NRS_Nonreduced},
      {"NRS_Unknown", CellClass::NRS_Unknown},     {"Spectrum4", CellClass::Spectrum4}};
  const std::string cls = j.at("class").get<std::string>();
  bool found = false;
  for (const auto& [name, value] : classes)
    if (name == cls) {
      c.cls = value;
      found = true;
    }
  if (!found) throw ParseError("unknown cell class '" + cls + "'", 0);
  if (j.contains("kind")) {
    const std::string k = j.at("kind").get<std::string>();
    c.kind = k == "FourReal" ? Spectrum4Kind::FourReal : k == "TwoRealTwoComplex" ? Spectrum4Kind::TwoRealTwoComplex
                                                                                  : Spectrum4Kind::FourComplex;
  }
  c.discriminant = integer_from_json(j.at("discriminant"));
  if (j.contains("verdict")) c.verdict = verdict_from_json(j.at("verdict"));
  c.fallback = j.value("fallback", false);
  return c;
}

inline Json to_json(const std::vector<GridCell>& cells) {
  Json a = Json::array();
  for (const auto& c : cells) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const GridSummary& s) {
  return Json{{"ReduciblePoly", s.reducible},   {"RS", s.rs},
              {"NRS_Reduced", s.reduced},       {"NRS_Nonreduced", s.nonreduced},
              {"NRS_Unknown", s.unknown},       {"FourReal", s.four_real},
              {"TwoRealTwoComplex", s.two_two}, {"FourComplex", s.four_complex}};
}

/// Decimal string of q rounded toward -inf (up = false) or +inf (up = true) at `digits` places.
inline std::string decimal(const Rational& q, unsigned digits, bool up) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Integer num = q.get_num() * scale, t;
  if (up) mpz_cdiv_q(t.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  else mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  const bool neg = t < 0;
  std::string s = Integer(abs(t)).get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits) s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

inline Json interval_json(const Rational& lo, const Rational& hi, unsigned digits) {
  return Json::array({decimal(lo, digits, false), decimal(hi, digits, true)});
}

/// Outward-rounded enclosure of sqrt over a nonnegative rational interval.
inline Json sqrt_interval_json(const Rational& lo, const Rational& hi, unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 2 * digits);
  auto root = [&](const Rational& q, bool up) {
    Rational c = q < 0 ? Rational(0) : q;
    Integer num = c.get_num() * scale, t, r;
    if (up) mpz_cdiv_q(t.get_mpz_t(), num.get_mpz_t(), c.get_den().get_mpz_t());
    else mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    if (up && r * r < t) r += 1;
    Integer s10;
    mpz_ui_pow_ui(s10.get_mpz_t(), 10, digits);
    return decimal(Rational(r) / s10, digits, up);
  };
  return Json::array({root(lo, false), root(hi, true)});
}

/// Sail dump: every vertex with its preimage, x and y = sqrt(y_sq) enclosures.
inline Json sail_to_json(const SailData& s, unsigned digits = 12) {
  const RealField& f = *s.eigen->field;
  f.refine_to(4 * digits + 16);
  Json verts = Json::array();
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    const PiPoint& p = s.vertices[i];
    RatInterval x = f.enclosure(p.x), y = f.enclosure(p.y_sq);
    bool fund = std::find(s.fundamental.begin(), s.fundamental.end(), i) != s.fundamental.end();
    verts.push_back(Json{{"preimage", to_json(p.preimage)},
                         {"x", interval_json(x.lo, x.hi, digits)},
                         {"y", sqrt_interval_json(y.lo, y.hi, digits)},
                         {"md", to_json(p.md)},
                         {"is_fundamental", fund}});
  }
  return Json{{"operator", to_json(s.op)}, {"side", s.side}, {"generator", to_json(s.generator)},
              {"anchor", to_json(s.anchor)}, {"vertices", verts}};
}

inline Json to_json(const Period& p) {
  Json a = Json::array();
  for (const auto& x : p) a.push_back(to_json(x));
  return a;
}

}  // namespace hesslab
