#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wfgroup {

enum class ErrorKind {
  MalformedDocument,
  UnknownEnumValue,
  DanglingEndpoint,
  DuplicateInstanceId,
  UnknownVertex,
  InvalidClustering,
  DegenerateInput,
  IncompatibleConfig,
  InvalidSpec,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::UnknownEnumValue: return "UnknownEnumValue";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::DuplicateInstanceId: return "DuplicateInstanceId";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::InvalidClustering: return "InvalidClustering";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::IncompatibleConfig: return "IncompatibleConfig";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers can map it
/// to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wfgroup
