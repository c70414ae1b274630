#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bdiv {

enum class ErrorKind {
  // tom_core
  ConflictingRecord,
  EmptyInput,
  AllColumnsDropped,
  TooFewMutants,
  // ingest
  MalformedXml,
  MissingStatus,
  RaggedRow,
  DuplicateId,
  BadCell,
  MissingFile,
  EmptyPayload,
  // distance
  LengthMismatch,
  UnknownCell,
  BothEmpty,
  TooFewTests,
  // evaluate
  NoKillableMutants,
  UncoveredMutant,
  DegenerateSamples,
  // synthgen
  InvalidParams,
  // anything else the caller got wrong (bad argument, mismatched ids, ...)
  InvalidInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bdiv
