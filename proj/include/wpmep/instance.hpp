#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wpmep/errors.hpp"
#include "wpmep/poset.hpp"
#include "wpmep/space.hpp"

namespace wpmep {

/// A weighted poset metric space as read from an instance file:
///
///   {"q": 2,
///    "poset": {"elements": ["a", "b", "c"], "covers": [["a", "b"]]},
///    "omega": {"a": "1", "b": "3/2"},
///    "dims": {"c": 2}}
///
/// omega and dims are optional and default to 1 per element.
struct Instance {
  int q = 2;
  Poset poset = Poset::antichain(0);
  WeightFunction omega;
  std::vector<int> dims;

  MetricSpace metric() const { return MetricSpace(poset, omega, AlphabetSpec(FieldSpec(q), dims)); }
  AlphabetSpec space() const { return AlphabetSpec(FieldSpec(q), dims); }
};

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

[[noreturn]] inline void invalid(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) invalid(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) invalid(path, "missing field \"" + key + "\"");
  return *it;
}

inline std::string label_string(const nlohmann::json& v, const std::string& path) {
  if (!v.is_string()) invalid(path, "expected a label string");
  return v.get<std::string>();
}

}  // namespace detail

/// Parses an instance document. `source` names the input in error messages.
inline Instance parse_instance(const std::string& text, const std::string& source = "<instance>") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string what = e.what();
    if (auto pos = what.find(": ", what.find("parse error")); pos != std::string::npos)
      what = "parse error: " + what.substr(pos + 2);
    throw ValidationError(source + ":" + detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + what);
  }
  if (!doc.is_object()) detail::invalid("$", "expected an object");

  Instance inst;
  const auto& q = detail::require(doc, "q", "$");
  if (!q.is_number_integer()) detail::invalid("$.q", "expected an integer");
  inst.q = q.get<int>();
  try {
    FieldSpec check(inst.q);
  } catch (const std::invalid_argument& e) {
    detail::invalid("$.q", e.what());
  }

  const auto& poset = detail::require(doc, "poset", "$");
  const auto& elements = detail::require(poset, "elements", "$.poset");
  if (!elements.is_array() || elements.empty()) detail::invalid("$.poset.elements", "expected a nonempty array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < elements.size(); ++i)
    labels.push_back(detail::label_string(elements[i], "$.poset.elements[" + std::to_string(i) + "]"));
  std::vector<std::pair<std::string, std::string>> covers;
  if (auto it = poset.find("covers"); it != poset.end()) {
    if (!it->is_array()) detail::invalid("$.poset.covers", "expected an array of [lower, upper] pairs");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string path = "$.poset.covers[" + std::to_string(i) + "]";
      const auto& pair = (*it)[i];
      if (!pair.is_array() || pair.size() != 2) detail::invalid(path, "expected [lower, upper]");
      auto lo = detail::label_string(pair[0], path + "[0]");
      auto hi = detail::label_string(pair[1], path + "[1]");
      for (const auto& [label, sub] : {std::pair{lo, "[0]"}, std::pair{hi, "[1]"}})
        if (std::find(labels.begin(), labels.end(), label) == labels.end())
          detail::invalid(path + sub, "unknown element \"" + label + "\"");
      covers.emplace_back(lo, hi);
    }
  }
  try {
    inst.poset = Poset::from_covers(labels, covers);
  } catch (const ValidationError& e) {
    detail::invalid("$.poset", e.what());
  } catch (const DomainError& e) {
    detail::invalid("$.poset", e.what());
  }

  const int n = inst.poset.size();
  std::vector<Rational> omega(n, Rational(1));
  if (auto it = doc.find("omega"); it != doc.end()) {
    if (!it->is_object()) detail::invalid("$.omega", "expected an object mapping labels to \"n/d\" strings");
    for (const auto& [label, value] : it->items()) {
      std::string path = "$.omega." + label;
      int idx = -1;
      try {
        idx = inst.poset.index_of(label);
      } catch (const DomainError&) {
        detail::invalid(path, "unknown element \"" + label + "\"");
      }
      if (!value.is_string()) detail::invalid(path, "weights are strings such as \"3/2\"");
      try {
        omega[idx] = parse_rational(value.get<std::string>());
      } catch (const ValidationError& e) {
        detail::invalid(path, e.what());
      }
      if (omega[idx] <= Rational(0)) detail::invalid(path, "weight must be positive");
    }
  }
  inst.omega = WeightFunction(omega);

  inst.dims.assign(n, 1);
  if (auto it = doc.find("dims"); it != doc.end()) {
    if (!it->is_object()) detail::invalid("$.dims", "expected an object mapping labels to positive integers");
    for (const auto& [label, value] : it->items()) {
      std::string path = "$.dims." + label;
      int idx = -1;
      try {
        idx = inst.poset.index_of(label);
      } catch (const DomainError&) {
        detail::invalid(path, "unknown element \"" + label + "\"");
      }
      if (!value.is_number_integer() || value.get<long long>() < 1 || value.get<long long>() > 16)
        detail::invalid(path, "dimension must be an integer in [1, 16]");
      inst.dims[idx] = value.get<int>();
    }
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "q" && key != "poset" && key != "omega" && key != "dims" && key != "name" && key != "comment")
      detail::invalid("$." + key, "unknown field");
  }
  return inst;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), path);
}

/// Canonical JSON form of an instance; its serialization is what gets digested.
inline nlohmann::ordered_json to_json(const Instance& inst) {
  nlohmann::ordered_json out;
  out["q"] = inst.q;
  out["poset"]["elements"] = inst.poset.labels();
  auto covers = nlohmann::ordered_json::array();
  for (auto [lo, hi] : inst.poset.covers()) covers.push_back({inst.poset.label(lo), inst.poset.label(hi)});
  out["poset"]["covers"] = covers;
  nlohmann::ordered_json omega = nlohmann::ordered_json::object(), dims = nlohmann::ordered_json::object();
  for (int i = 0; i < inst.poset.size(); ++i) {
    omega[inst.poset.label(i)] = to_string(inst.omega[i]);
    dims[inst.poset.label(i)] = inst.dims[i];
  }
  out["omega"] = omega;
  out["dims"] = dims;
  return out;
}

}  // namespace wpmep
