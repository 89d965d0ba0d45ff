#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace varpart {

enum class ErrorKind {
  InvalidDataset,
  InvalidArgument,
  NonFiniteValue,
  ConstantColumn,
  UnknownName,
  EmptySubset,
  SingularDesign,
  InvalidOrdering,
  TooManyOrderings,
  FileNotFound,
  ParseError,
  NonNumericCell,
  MissingColumn,
  EmptyData,
  NotPositiveSemidefinite,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace varpart
