#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "bopp/parse.hpp"
#include "bopp/realization.hpp"

namespace bopp {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json tensor_entries_json(const SymTensor& t, NameStyle style) {
  Json arr = Json::array();
  for (const auto& [key, value] : t.entries()) {
    Json e;
    e["lead"] = key.first;
    e["tail"] = key.second;
    e["poly"] = value.str(style);
    arr.push_back(std::move(e));
  }
  return arr;
}

inline Json trivector_json(const Trivector& t, NameStyle style) {
  Json arr = Json::array();
  for (const auto& [key, value] : t.entries()) {
    Json e;
    e["lead"] = key;
    e["poly"] = value.str(style);
    arr.push_back(std::move(e));
  }
  return arr;
}

inline Json pair_table_json(const std::map<std::pair<int, int>, Poly>& table, NameStyle style) {
  Json arr = Json::array();
  for (const auto& [key, value] : table) {
    Json e;
    e["lead"] = Json::array({key.first, key.second});
    e["poly"] = value.str(style);
    arr.push_back(std::move(e));
  }
  return arr;
}

}  // namespace detail

/// Deterministic JSON report for one realization. Shift tensors are
/// functions of the Darboux coordinates and render with y/pi names; the
/// corrections, jacobiator and extended brackets live on the original
/// (doubled) space and render with x/xt names.
inline Json report_json(const std::string& source, const Realization& real,
                        const ExtendedBrackets& eb, const VerifyReport* vr = nullptr) {
  Json j;
  Json input;
  input["source"] = source;
  input["params"] = real.source.varset()->params();
  input["bivector"] = render_bivector_file(real.source);
  j["input"] = std::move(input);
  j["dim"] = real.source.dim();
  j["order"] = real.order;

  Json gamma = Json::array();
  for (int m = 1; m <= static_cast<int>(real.gamma.size()); ++m) {
    Json g;
    g["order"] = m;
    g["entries"] = detail::tensor_entries_json(real.gamma_at(m), NameStyle::Darboux);
    gamma.push_back(std::move(g));
  }
  j["gamma"] = std::move(gamma);

  Json thetas = Json::array();
  for (int m = 1; m <= static_cast<int>(real.theta_corrections.size()); ++m) {
    Json t;
    t["order"] = m;
    t["entries"] = detail::tensor_entries_json(real.theta_at(m), NameStyle::Doubled);
    thetas.push_back(std::move(t));
  }
  j["theta_corrections"] = std::move(thetas);

  j["jacobiator"] = detail::trivector_json(real.jacobiator, NameStyle::Doubled);

  Json eb_json;
  eb_json["xx"] = detail::pair_table_json(eb.xx, NameStyle::Doubled);
  eb_json["x_xt"] = detail::pair_table_json(eb.x_xt, NameStyle::Doubled);
  eb_json["xt_xt"] = Json::array();
  j["extended_brackets"] = std::move(eb_json);

  Json diag;
  Json orders = Json::array();
  for (const auto& od : real.diagnostics.orders) {
    Json o;
    o["gamma_order"] = od.gamma_order;
    o["gamma_sign"] = od.gamma_sign;
    o["gamma_entries"] = od.gamma_entries;
    o["gamma_monomials"] = od.gamma_monomials;
    o["theta_order"] = od.theta_order;
    o["theta_sign"] = od.theta_sign;
    o["theta_entries"] = od.theta_entries;
    o["theta_monomials"] = od.theta_monomials;
    o["cyclicity_defect"] = od.cyclicity_zero ? "zero" : "nonzero";
    o["four_term_defect"] = od.theta_order >= 2 ? (od.four_term_zero ? "zero" : "nonzero")
                                                : "not applicable";
    o["bopp_monomials"] = od.x_monomials;
    orders.push_back(std::move(o));
  }
  diag["orders"] = std::move(orders);
  diag["final_order_contract"] =
      real.diagnostics.final_contract_verified ? "verified" : "unverified";
  j["diagnostics"] = std::move(diag);

  if (vr) {
    Json checks = Json::array();
    for (const auto& c : vr->checks) {
      Json e;
      e["name"] = c.name;
      e["status"] = c.pass ? "pass" : "fail";
      e["detail"] = c.detail;
      checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    j["verified"] = vr->verified;
  }
  return j;
}

inline void text_tensor_block(std::string& out, const SymTensor& t, NameStyle style) {
  if (t.is_zero()) {
    out += "    (zero)\n";
    return;
  }
  for (const auto& [key, value] : t.entries()) {
    out += "    " + detail::tuple_str(key.first);
    if (!key.second.empty()) out += detail::tuple_str(key.second);
    out += " = " + value.str(style) + "\n";
  }
}

/// Human-readable twin of the JSON report; same content, same order.
inline std::string report_text(const std::string& source, const Realization& real,
                               const ExtendedBrackets& eb, const VerifyReport* vr = nullptr) {
  std::string out;
  out += "input: " + source + "\n";
  out += "dim: " + std::to_string(real.source.dim()) + "\n";
  out += "order: " + std::to_string(real.order) + "\n";
  out += "bivector:\n";
  {
    std::string biv = render_bivector_file(real.source);
    std::size_t start = 0;
    while (start < biv.size()) {
      std::size_t end = biv.find('\n', start);
      out += "    " + biv.substr(start, end - start) + "\n";
      start = end + 1;
    }
  }

  for (int m = 1; m <= static_cast<int>(real.gamma.size()); ++m) {
    out += "gamma order " + std::to_string(m) + ":\n";
    text_tensor_block(out, real.gamma_at(m), NameStyle::Darboux);
  }
  for (int m = 1; m <= static_cast<int>(real.theta_corrections.size()); ++m) {
    out += "theta correction order " + std::to_string(m) + ":\n";
    text_tensor_block(out, real.theta_at(m), NameStyle::Doubled);
  }

  out += "jacobiator:\n";
  if (real.jacobiator.is_zero()) {
    out += "    (zero)\n";
  } else {
    for (const auto& [key, value] : real.jacobiator.entries())
      out += "    " + detail::tuple_str(key) + " = " + value.str(NameStyle::Doubled) + "\n";
  }

  out += "extended brackets {x,x}:\n";
  if (eb.xx.empty()) out += "    (zero)\n";
  for (const auto& [key, value] : eb.xx)
    out += "    {x" + std::to_string(key.first) + ",x" + std::to_string(key.second) +
           "} = " + value.str(NameStyle::Doubled) + "\n";
  out += "extended brackets {x,xt}:\n";
  for (const auto& [key, value] : eb.x_xt)
    out += "    {x" + std::to_string(key.first) + ",xt" + std::to_string(key.second) +
           "} = " + value.str(NameStyle::Doubled) + "\n";
  out += "extended brackets {xt,xt}: identically zero\n";

  out += "diagnostics:\n";
  for (const auto& od : real.diagnostics.orders) {
    out += "    order " + std::to_string(od.gamma_order) + ": gamma sign " +
           std::to_string(od.gamma_sign);
    if (od.theta_order > 0) out += ", theta sign " + std::to_string(od.theta_sign);
    out += ", cyclicity " + std::string(od.cyclicity_zero ? "zero" : "nonzero");
    if (od.theta_order >= 2)
      out += ", four-term " + std::string(od.four_term_zero ? "zero" : "nonzero");
    out += ", gamma entries " + std::to_string(od.gamma_entries);
    out += ", bopp monomials " + std::to_string(od.x_monomials);
    out += "\n";
  }
  out += "final order contract: ";
  out += real.diagnostics.final_contract_verified ? "verified\n" : "unverified\n";

  if (vr) {
    out += "checks:\n";
    for (const auto& c : vr->checks)
      out += "    " + std::string(c.pass ? "pass" : "FAIL") + "  " + c.name +
             (c.detail.empty() ? "" : "  (" + c.detail + ")") + "\n";
    out += vr->verified ? "verified: true\n" : "verified: false\n";
  }
  return out;
}

}  // namespace bopp
