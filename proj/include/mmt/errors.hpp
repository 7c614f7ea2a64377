#pragma once

#include <stdexcept>
#include <string>

namespace mmt {

enum class ErrorKind {
  MalformedUri,
  NoModuleContext,
  UnknownModule,
  UnknownConstant,
  UnknownLink,
  UnknownStructure,
  NoAssignment,
  NotFound,
  CyclicDefinition,
  IllFormed,
  XmlSyntax,
  UnresolvableReference,
  Usage,
};

const char* to_string(ErrorKind k);

/// Hard failure of a kernel operation. Validation problems are reported as
/// Diagnostic values instead (see check.hpp); Error is for callers that asked
/// for something that does not exist or cannot be computed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mmt
