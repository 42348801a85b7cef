#include "twwgeo/error.hpp"

namespace twwgeo {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::InvalidRelation: return "InvalidRelation";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::OddOrder: return "OddOrder";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::MissingColor: return "MissingColor";
    case ErrorCode::InvalidMerge: return "InvalidMerge";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotBlockStructured: return "NotBlockStructured";
    case ErrorCode::BadBlockSequence: return "BadBlockSequence";
    case ErrorCode::InvalidOp: return "InvalidOp";
    case ErrorCode::InconsistentResolve: return "InconsistentResolve";
    case ErrorCode::WrongGraph: return "WrongGraph";
    case ErrorCode::PathTooShort: return "PathTooShort";
    case ErrorCode::NotMinimized: return "NotMinimized";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::EmptyCell: return "EmptyCell";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::NotATerrain: return "NotATerrain";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::BadFormat: return "BadFormat";
  }
  return "UnknownError";
}

}  // namespace twwgeo
