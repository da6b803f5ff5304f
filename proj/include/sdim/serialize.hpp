#pragma once

// JSON views of the result types. Fractions are {"num": "...", "den": "..."}
// with decimal strings so consumers never need 64-bit integers.

#include <sdim/covering.hpp>
#include <sdim/engine.hpp>
#include <sdim/groebner.hpp>
#include <sdim/monomial_sigma.hpp>
#include <sdim/sequence_lab.hpp>

#include <json.hpp>

namespace sdim {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& r) { return {{"num", r.num_str()}, {"den", r.den_str()}}; }

inline json to_json(const KrullDim& d) {
  if (d.is_empty()) return "empty";
  return d.value();
}

inline json to_json(const std::vector<Cell>& cells) {
  json a = json::array();
  for (const auto& [s, j] : cells) a.push_back({s, j});
  return a;
}

inline json to_json(const SigmaFamily& fam) {
  json members = json::array();
  for (const auto& m : fam.members()) members.push_back(to_json(m.cells()));
  return {{"n", fam.n()}, {"members", members}};
}

inline json to_json(const PeriodicComplement& c) {
  return {{"period", c.period}, {"offsets", c.offsets}, {"density", to_json(c.density())}};
}

inline json to_json(const LinearTail& t) { return {{"d", t.d}, {"e", t.e}, {"onset", t.onset}}; }

inline json to_json(const DimensionReport& r) {
  json out;
  out["method"] = to_string(r.method);
  out["num_vars"] = r.num_vars;
  json cert;
  cert["kind"] = to_string(r.certified_kind);
  cert["value"] = r.certified_value ? to_json(*r.certified_value) : json(nullptr);
  out["certified"] = cert;
  json seq = json::array();
  for (const auto& e : r.sequence) seq.push_back({{"i", e.i}, {"d", to_json(e.d)}, {"exact", e.exact}});
  out["sequence"] = seq;
  if (r.family) {
    json fam = to_json(*r.family);
    if (r.family_depth >= 0) fam["depth"] = r.family_depth;
    if (r.family_value) fam["value"] = to_json(*r.family_value);
    out["family"] = fam;
  }
  if (r.cross_check) out["cross_check"] = to_json(*r.cross_check);
  if (r.linear_tail) out["linear_tail"] = to_json(*r.linear_tail);
  return out;
}

inline json to_json(const std::vector<DifferencePolynomial>& polys) {
  json a = json::array();
  for (const auto& p : polys) a.push_back(p.str());
  return a;
}

inline json to_json(const GroebnerBasis& g) {
  json vars = json::array(), lead = json::array();
  for (const auto& v : g.variables()) vars.push_back(to_string(v));
  for (const auto& m : g.leading) lead.push_back(m.str());
  return {{"variables", vars}, {"generators", to_json(g.generators)}, {"leading", lead}, {"unit", g.is_unit()}};
}

}  // namespace sdim
