#ifndef BBC_JSON_IO_HPP
#define BBC_JSON_IO_HPP

#include "bbc/coloring.hpp"
#include "bbc/error.hpp"
#include "bbc/exact.hpp"
#include "bbc/fib_bounds.hpp"
#include "bbc/rby.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace bbc {

using Json = nlohmann::ordered_json;

inline Json to_json(const BackboneColoring& c) {
  return Json{{"lambda", c.lambda}, {"colors", c.colors}, {"max_color", c.max_color}};
}

inline BackboneColoring coloring_from_json(const Json& j) {
  try {
    BackboneColoring c;
    c.lambda = j.at("lambda").get<std::int64_t>();
    c.colors = j.at("colors").get<std::vector<Color>>();
    c.max_color = j.contains("max_color")
                      ? j.at("max_color").get<Color>()
                      : (c.colors.empty() ? 0 : *std::max_element(c.colors.begin(), c.colors.end()));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("coloring JSON: ") + e.what());
  }
}

inline Json to_json(const RbyDecomposition& d) {
  return Json{{"R", d.red}, {"B", d.blue}, {"Y", d.yellow}, {"k", d.k}, {"l", d.l}};
}

inline RbyDecomposition decomposition_from_json(const Json& j) {
  try {
    RbyDecomposition d;
    d.red = j.at("R").get<std::vector<Vertex>>();
    d.blue = j.at("B").get<std::vector<Vertex>>();
    d.yellow = j.at("Y").get<std::vector<Vertex>>();
    d.k = j.at("k").get<std::int64_t>();
    d.l = j.at("l").get<std::int64_t>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("decomposition JSON: ") + e.what());
  }
}

inline Json to_json(const ColoringReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"kind", to_string(x.kind)}, {"vertices", x.witness}, {"detail", x.detail}});
  }
  return Json{{"ok", r.ok()}, {"violations", v}};
}

inline Json to_json(const RbyReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"kind", to_string(x.kind)}, {"vertices", x.witness}, {"detail", x.detail}});
  }
  return Json{{"ok", r.ok()}, {"violations", v}};
}

inline Json to_json(const ExactResult& r) {
  return Json{{"value", r.value}, {"witness", r.witness.colors}};
}

inline Json to_json(const RepresentationResult& r) {
  Json j{{"outcome", to_string(r.outcome)}, {"found", r.found()}};
  j["target"] = r.target ? Json(r.target->str()) : Json(nullptr);
  if (r.witness) {
    Json terms = Json::array();
    for (const auto& t : r.witness->terms) terms.push_back({{"position", t.position}, {"sign", t.sign}});
    j["witness"] = {{"y", r.witness->y}, {"terms", terms}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline Json to_json(const ImpossibilityReport& r) {
  Json j{{"n", r.n},
         {"lambda", r.lambda},
         {"l", r.l},
         {"k_range", {r.range.lo, r.range.hi}},
         {"decomposable_k", r.decomposable},
         {"premise_holds", r.premise_holds}};
  j["fits_within_bound"] = r.fits_within_bound ? Json(*r.fits_within_bound) : Json(nullptr);
  j["exact_value"] = r.exact_value ? Json(*r.exact_value) : Json(nullptr);
  j["verdict"] = to_string(r.verdict);
  j["consistent"] = r.consistent();
  return j;
}

inline Json to_json(const CertificateReport& r) {
  Json gates = Json::array();
  for (const auto& g : r.gates) gates.push_back({{"name", g.name}, {"holds", g.holds}, {"detail", g.detail}});
  Json searches = Json::array();
  for (const auto& s : r.searches) searches.push_back({{"k", s.k.str()}, {"result", to_json(s.result)}});
  Json j{{"order", r.order},
         {"n", r.n.str()},
         {"lambda", r.lambda.str()},
         {"in_regime", r.in_regime},
         {"l", r.l},
         {"k_fib_index", r.k_fib_index},
         {"k_max", r.k_max.str()},
         {"gates", gates},
         {"searches", searches}};
  j["small_scale"] = r.small_scale ? to_json(*r.small_scale) : Json(nullptr);
  j["notes"] = r.notes;
  j["claimed_bound"] = r.claimed_bound;
  j["all_hold"] = r.all_hold();
  return j;
}

}  // namespace bbc

#endif  // BBC_JSON_IO_HPP
