#pragma once

#include "polyharm/deformation_solver.hpp"
#include "polyharm/nakauchi.hpp"
#include "polyharm/pde_residual.hpp"

#include <json.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace polyharm {

using Json = nlohmann::ordered_json;

inline Json to_json(const ConstraintPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(c.get_str());
  return Json{{"text", p.to_string()}, {"coefficients", coeffs}};
}

inline Json to_json(const QuadExt& q) {
  return Json{{"exact", q.to_string()}, {"value", q.to_double()}};
}

inline Json to_json(const DeformationParameter& p) {
  return Json{{"exact", p.t.to_string()},
              {"value", p.t.to_double()},
              {"angle_kind", to_string(p.angle_kind)},
              {"admissible", p.admissible()}};
}

inline Json to_json(const AdmissibilityRecord& r) {
  Json roots = Json::array();
  for (const auto& p : r.roots) roots.push_back(to_json(p));
  Json j{{"ell", r.ell},
         {"m", r.m},
         {"equation_solvable", r.equation_solvable},
         {"which_branch", to_string(r.which_branch)},
         {"map_exists", r.map_exists},
         {"roots", roots}};
  if (r.degenerate) j["degenerate"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json to_json(const ResidualReport& r) {
  Json offenders = Json::array();
  for (const auto& o : r.offenders) {
    Json e{{"component", o.component}};
    if (!o.residual.empty()) e["residual"] = o.residual;
    if (!r.symbolic) {
      e["magnitude"] = o.magnitude;
      e["point"] = o.point;
    }
    offenders.push_back(e);
  }
  Json j{{"equation", r.equation},
         {"pass", r.pass},
         {"mode", r.symbolic ? "symbolic" : "numeric"},
         {"components_checked", r.components_checked},
         {"failing_components", r.failing_components},
         {"offenders", offenders}};
  if (r.residual_poly) j["residual_poly"] = to_json(*r.residual_poly);
  if (!r.symbolic) {
    j["tolerance"] = r.tolerance.value_or(0.0);
    j["points_checked"] = r.points_checked;
    j["max_magnitude"] = r.max_error;
    j["min_magnitude"] = r.min_magnitude;
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

inline Json to_json(const TermTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    Json j{{"name", e.name},
           {"expression", e.expression},
           {"degree_in_q", e.degree_in_q},
           {"sign_in_p3", e.sign_in_p3},
           {"printed", to_json(e.printed)},
           {"matches", e.matches}};
    j["computed"] = e.computed ? to_json(*e.computed) : Json(nullptr);
    entries.push_back(j);
  }
  return Json{{"ell", t.ell}, {"m", t.m}, {"all_match", t.all_match()}, {"entries", entries}};
}

inline Json to_json(const TensorMap& t) {
  Json comps = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json idx = Json::array();
    for (int k : t.multi_index(i)) idx.push_back(k + 1);
    comps.push_back(Json{{"index", idx}, {"field", t.components[i].to_string()}});
  }
  return Json{{"ell", t.ell}, {"m", t.m}, {"scale_sq", t.scale_sq.get_str()}, {"size", t.size()}, {"components", comps}};
}

/// Parses "a", "b*sqrt(D)", "a+b*sqrt(D)" or "a-b*sqrt(D)" with rational a, b.
inline QuadExt parse_quad_ext(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto sq = s.find("*sqrt(");
  if (sq == std::string::npos) return QuadExt(parse_rational(s));
  if (s.back() != ')') throw std::invalid_argument("malformed surd: " + std::string(text));
  const Integer d(s.substr(sq + 6, s.size() - sq - 7));
  std::string head = s.substr(0, sq);
  // split head into rational part and surd coefficient at the last sign that is not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;)
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/') {
      split = i;
      break;
    }
  Rational a(0), b;
  if (split == std::string::npos) {
    b = parse_rational(head);
  } else {
    a = parse_rational(head.substr(0, split));
    std::string coef = head.substr(split);
    if (coef[0] == '+') coef.erase(0, 1);
    b = parse_rational(coef);
  }
  return QuadExt(a, b, d);
}

}  // namespace polyharm
