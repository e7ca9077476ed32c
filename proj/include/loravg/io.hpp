#pragma once

// JSON encodings of spaces, functions and step functions.
//
//   space:    {"kind": "matrix"|"cloud"|"lattice"|"graph",
//              "dist": [[...]], "coords": [[...]], "metric": "euclidean"|"l1"|"linf",
//              "L": int, "n": int, "edges": [[u, v, length], ...], "weights": [...]}
//             weights default to 1.0 when omitted.
//   function: {"values": [...]}
//   step:     {"breakpoints": [...], "levels": [...]}

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "loravg/error.hpp"
#include "loravg/function.hpp"
#include "loravg/space.hpp"
#include "loravg/step_function.hpp"

namespace loravg {

using json = nlohmann::json;

namespace detail {

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.contains(key)) throw domain_error(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw domain_error(std::string("field \"") + key + "\" has the wrong type: " + e.what());
  }
}

inline std::vector<double> weights_or_empty(const json& j) {
  if (!j.contains("weights") || j.at("weights").is_null()) return {};
  return get_field<std::vector<double>>(j, "weights");
}

} // namespace detail

inline CloudMetric parse_cloud_metric(const std::string& name) {
  if (name == "euclidean") return CloudMetric::euclidean;
  if (name == "l1") return CloudMetric::l1;
  if (name == "linf") return CloudMetric::linf;
  throw domain_error("unknown metric \"" + name + "\" (expected euclidean, l1 or linf)");
}

inline MetricMeasureSpace space_from_json(const json& j, const BuildOptions& opts = {}) {
  if (!j.is_object()) throw domain_error("space description must be a JSON object");
  const auto kind = detail::get_field<std::string>(j, "kind");
  auto weights = detail::weights_or_empty(j);
  if (kind == "matrix") {
    const auto rows = detail::get_field<std::vector<std::vector<double>>>(j, "dist");
    if (weights.empty()) weights.assign(rows.size(), 1.0);
    return MetricMeasureSpace::from_rows(rows, std::move(weights), opts);
  }
  if (kind == "cloud") {
    const auto coords = detail::get_field<std::vector<std::vector<double>>>(j, "coords");
    const auto metric = j.contains("metric") ? detail::get_field<std::string>(j, "metric") : std::string("euclidean");
    return MetricMeasureSpace::from_cloud(coords, parse_cloud_metric(metric), std::move(weights));
  }
  if (kind == "lattice") {
    const auto L = detail::get_field<long long>(j, "L");
    if (L < 0) throw domain_error("lattice size L must be nonnegative");
    return MetricMeasureSpace::lattice(static_cast<std::size_t>(L), std::move(weights));
  }
  if (kind == "graph") {
    const auto n = detail::get_field<long long>(j, "n");
    if (n <= 0) throw domain_error("graph needs n >= 1 atoms");
    std::vector<WeightedEdge> edges;
    for (const auto& e : detail::get_field<std::vector<std::vector<double>>>(j, "edges")) {
      if (e.size() != 3) throw domain_error("graph edges are [u, v, length] triples");
      if (e[0] < 0 || e[1] < 0) throw domain_error("edge endpoints must be nonnegative");
      edges.push_back({static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1]), e[2]});
    }
    return MetricMeasureSpace::from_graph(static_cast<std::size_t>(n), edges, std::move(weights));
  }
  throw domain_error("unknown space kind \"" + kind + "\"");
}

/// Canonical form: the explicit matrix and weights.
inline json space_to_json(const MetricMeasureSpace& space) {
  const std::size_t n = space.size();
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < n; ++k) row.push_back(space.distance(i, k));
    rows.push_back(std::move(row));
  }
  return {{"kind", "matrix"},
          {"dist", std::move(rows)},
          {"weights", std::vector<double>(space.weights().begin(), space.weights().end())}};
}

inline FunctionOnSpace function_from_json(const json& j) {
  if (!j.is_object()) throw domain_error("function must be a JSON object with \"values\"");
  return FunctionOnSpace(detail::get_field<std::vector<double>>(j, "values"));
}

inline json function_to_json(const FunctionOnSpace& f) { return {{"values", f.values}}; }

inline json step_to_json(const StepFunction& s) {
  return {{"breakpoints", std::vector<double>(s.breakpoints().begin(), s.breakpoints().end())},
          {"levels", std::vector<double>(s.levels().begin(), s.levels().end())}};
}

inline StepFunction step_from_json(const json& j) {
  return StepFunction(detail::get_field<std::vector<double>>(j, "breakpoints"),
                      detail::get_field<std::vector<double>>(j, "levels"));
}

} // namespace loravg
