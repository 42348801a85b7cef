#pragma once

#include <stdexcept>
#include <string>

namespace twwgeo {

enum class ErrorCode {
  InvalidVertex,
  InvalidPartition,
  InvalidOrder,
  InvalidRelation,
  EmptyInput,
  TooLarge,
  OddOrder,
  InvalidWitness,
  MissingColor,
  InvalidMerge,
  LengthMismatch,
  NotBlockStructured,
  BadBlockSequence,
  InvalidOp,
  InconsistentResolve,
  WrongGraph,
  PathTooShort,
  NotMinimized,
  GridTooSmall,
  EmptyCell,
  NotBipartite,
  StructureMismatch,
  NotATerrain,
  PrecisionExhausted,
  BadFormat,
};

const char* error_code_name(ErrorCode c);

/// Library-wide exception; carries a machine-readable code plus a message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace twwgeo
