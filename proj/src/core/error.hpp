#pragma once

#include <stdexcept>
#include <string>

namespace heurbench {

enum class Errc {
  InvalidValue,
  UnknownId,
  AlreadyDiscarded,
  StaleConflict,
  IdCollision,
  IncompleteRow,
  OutOfRangeGsi,
  MissingGsiRow,
  InvalidTemplate,
  MissingFsi,
  MissingSpecificity,
  PrerequisiteMissing,
  NoAdviceYet,
  InvalidTarget,
  MalformedRow,
  DuplicateId,
  NothingToExport,
  IoFailure,
  SchemaViolation,
  UnsupportedVersion,
  Usage,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, std::string message) {
  throw Error(code, std::move(message));
}

} // namespace heurbench
