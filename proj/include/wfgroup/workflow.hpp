#pragma once

// Workflow document model: tool instances and the typed connections between
// them, plus the JSON reader/writer for the on-disk format.

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wfgroup/error.hpp"

namespace wfgroup {

enum class DataType { Bool, Int, Float, Vector, Dir, String, SmallTable, Matrix, File };
enum class InputConstraint { None, NotRequired, RequiredIfConnected, Required };
enum class InputHandling { Consumed, Constant };

namespace detail {

template <typename E, std::size_t N>
struct EnumNames {
  std::array<std::pair<E, std::string_view>, N> entries;

  std::string_view name(E value) const {
    for (const auto& [e, n] : entries) {
      if (e == value) return n;
    }
    return {};
  }

  std::optional<E> parse(std::string_view token) const {
    for (const auto& [e, n] : entries) {
      if (n == token) return e;
    }
    return std::nullopt;
  }
};

inline constexpr EnumNames<DataType, 9> kDataTypeNames{{{
    {DataType::Bool, "bool"},
    {DataType::Int, "int"},
    {DataType::Float, "float"},
    {DataType::Vector, "vector"},
    {DataType::Dir, "dir"},
    {DataType::String, "string"},
    {DataType::SmallTable, "smalltable"},
    {DataType::Matrix, "matrix"},
    {DataType::File, "file"},
}}};

inline constexpr EnumNames<InputConstraint, 4> kConstraintNames{{{
    {InputConstraint::None, "none"},
    {InputConstraint::NotRequired, "notRequired"},
    {InputConstraint::RequiredIfConnected, "requiredIfConnected"},
    {InputConstraint::Required, "required"},
}}};

inline constexpr EnumNames<InputHandling, 2> kHandlingNames{{{
    {InputHandling::Consumed, "consumed"},
    {InputHandling::Constant, "constant"},
}}};

}  // namespace detail

inline constexpr std::array<DataType, 9> kAllDataTypes{
    DataType::Bool,   DataType::Int,        DataType::Float,  DataType::Vector, DataType::Dir,
    DataType::String, DataType::SmallTable, DataType::Matrix, DataType::File};
inline constexpr std::array<InputConstraint, 4> kAllConstraints{
    InputConstraint::None, InputConstraint::NotRequired, InputConstraint::RequiredIfConnected,
    InputConstraint::Required};
inline constexpr std::array<InputHandling, 2> kAllHandlings{InputHandling::Consumed,
                                                            InputHandling::Constant};

inline std::string_view to_string(DataType v) { return detail::kDataTypeNames.name(v); }
inline std::string_view to_string(InputConstraint v) { return detail::kConstraintNames.name(v); }
inline std::string_view to_string(InputHandling v) { return detail::kHandlingNames.name(v); }

inline DataType parse_data_type(std::string_view token) {
  if (auto v = detail::kDataTypeNames.parse(token)) return *v;
  throw Error(ErrorKind::UnknownEnumValue, "dataType '" + std::string(token) + "'");
}

inline InputConstraint parse_constraint(std::string_view token) {
  if (auto v = detail::kConstraintNames.parse(token)) return *v;
  throw Error(ErrorKind::UnknownEnumValue, "constraint '" + std::string(token) + "'");
}

inline InputHandling parse_handling(std::string_view token) {
  if (auto v = detail::kHandlingNames.parse(token)) return *v;
  throw Error(ErrorKind::UnknownEnumValue, "handling '" + std::string(token) + "'");
}

struct ToolInstance {
  std::string id;
  std::string tool;
  std::optional<std::string> label;  // user grouping annotation, never read by clustering

  bool operator==(const ToolInstance&) const = default;
};

struct Connection {
  std::string source;
  std::string target;
  DataType data_type = DataType::Bool;
  InputConstraint constraint = InputConstraint::None;
  InputHandling handling = InputHandling::Consumed;

  bool operator==(const Connection&) const = default;
};

struct Workflow {
  std::string name;
  std::vector<ToolInstance> instances;
  std::vector<Connection> connections;

  bool operator==(const Workflow&) const = default;
};

enum class ViolationKind { EmptyField, DuplicateInstanceId, DanglingEndpoint };

struct Violation {
  ViolationKind kind;
  std::string element;  // offending instance id or connection locator
  std::string message;

  bool operator==(const Violation&) const = default;
};

/// Checks the structural invariants of a workflow. Self-loop connections are
/// legal here; graph construction drops them.
inline std::vector<Violation> validate_workflow(const Workflow& wf) {
  std::vector<Violation> out;
  std::unordered_set<std::string> seen;
  std::unordered_set<std::string> reported;
  for (std::size_t i = 0; i < wf.instances.size(); ++i) {
    const auto& inst = wf.instances[i];
    if (inst.id.empty()) {
      out.push_back({ViolationKind::EmptyField, "instances[" + std::to_string(i) + "]",
                     "instance id is empty"});
    }
    if (inst.tool.empty()) {
      out.push_back({ViolationKind::EmptyField, inst.id, "tool name is empty"});
    }
    if (!seen.insert(inst.id).second && reported.insert(inst.id).second) {
      out.push_back({ViolationKind::DuplicateInstanceId, inst.id,
                     "instance id '" + inst.id + "' is declared more than once"});
    }
  }
  for (std::size_t i = 0; i < wf.connections.size(); ++i) {
    const auto& cn = wf.connections[i];
    for (const auto* endpoint : {&cn.source, &cn.target}) {
      if (!seen.contains(*endpoint)) {
        out.push_back({ViolationKind::DanglingEndpoint, "connections[" + std::to_string(i) + "]",
                       "endpoint '" + *endpoint + "' does not name an instance"});
      }
    }
  }
  return out;
}

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                                     const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorKind::MalformedDocument, where + ": missing key '" + key + "'");
  }
  return *it;
}

inline std::string require_string(const nlohmann::json& obj, const char* key,
                                  const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) {
    throw Error(ErrorKind::MalformedDocument, where + ": key '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

inline const nlohmann::json& require_array(const nlohmann::json& obj, const char* key,
                                           const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_array()) {
    throw Error(ErrorKind::MalformedDocument, where + ": key '" + key + "' must be an array");
  }
  return v;
}

}  // namespace detail

inline Workflow workflow_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::MalformedDocument, "document must be an object");
  Workflow wf;
  wf.name = detail::require_string(doc, "name", "workflow");

  const auto& instances = detail::require_array(doc, "instances", "workflow");
  wf.instances.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& obj = instances[i];
    const std::string where = "instances[" + std::to_string(i) + "]";
    if (!obj.is_object()) throw Error(ErrorKind::MalformedDocument, where + " must be an object");
    ToolInstance inst;
    inst.id = detail::require_string(obj, "id", where);
    inst.tool = detail::require_string(obj, "tool", where);
    if (auto it = obj.find("label"); it != obj.end()) {
      if (!it->is_string()) {
        throw Error(ErrorKind::MalformedDocument, where + ": key 'label' must be a string");
      }
      inst.label = it->get<std::string>();
    }
    wf.instances.push_back(std::move(inst));
  }

  const auto& connections = detail::require_array(doc, "connections", "workflow");
  wf.connections.reserve(connections.size());
  for (std::size_t i = 0; i < connections.size(); ++i) {
    const auto& obj = connections[i];
    const std::string where = "connections[" + std::to_string(i) + "]";
    if (!obj.is_object()) throw Error(ErrorKind::MalformedDocument, where + " must be an object");
    Connection cn;
    cn.source = detail::require_string(obj, "source", where);
    cn.target = detail::require_string(obj, "target", where);
    cn.data_type = parse_data_type(detail::require_string(obj, "dataType", where));
    cn.constraint = parse_constraint(detail::require_string(obj, "constraint", where));
    cn.handling = parse_handling(detail::require_string(obj, "handling", where));
    wf.connections.push_back(std::move(cn));
  }

  for (const auto& v : validate_workflow(wf)) {
    switch (v.kind) {
      case ViolationKind::DuplicateInstanceId:
        throw Error(ErrorKind::DuplicateInstanceId, v.message);
      case ViolationKind::DanglingEndpoint:
        throw Error(ErrorKind::DanglingEndpoint, v.element + ": " + v.message);
      case ViolationKind::EmptyField:
        throw Error(ErrorKind::MalformedDocument, v.element + ": " + v.message);
    }
  }
  return wf;
}

/// Parses and validates a workflow document. Throws wfgroup::Error.
inline Workflow parse_workflow(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedDocument, e.what());
  }
  return workflow_from_json(doc);
}

inline Workflow parse_workflow(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_workflow(buffer.str());
}

inline nlohmann::ordered_json to_json(const Workflow& wf) {
  nlohmann::ordered_json doc;
  doc["name"] = wf.name;
  auto instances = nlohmann::ordered_json::array();
  for (const auto& inst : wf.instances) {
    nlohmann::ordered_json obj;
    obj["id"] = inst.id;
    obj["tool"] = inst.tool;
    if (inst.label) obj["label"] = *inst.label;
    instances.push_back(std::move(obj));
  }
  doc["instances"] = std::move(instances);
  auto connections = nlohmann::ordered_json::array();
  for (const auto& cn : wf.connections) {
    nlohmann::ordered_json obj;
    obj["source"] = cn.source;
    obj["target"] = cn.target;
    obj["dataType"] = std::string(to_string(cn.data_type));
    obj["constraint"] = std::string(to_string(cn.constraint));
    obj["handling"] = std::string(to_string(cn.handling));
    connections.push_back(std::move(obj));
  }
  doc["connections"] = std::move(connections);
  return doc;
}

inline std::string serialize_workflow(const Workflow& wf) { return to_json(wf).dump(2) + "\n"; }

}  // namespace wfgroup
