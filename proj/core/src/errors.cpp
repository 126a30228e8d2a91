#include "flosim/errors.hpp"

namespace flosim {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Dimension: return "DimensionError";
    case ErrorCode::Shape: return "ShapeError";
    case ErrorCode::NotPassive: return "NotPassiveError";
    case ErrorCode::Index: return "IndexError";
    case ErrorCode::PhaseRecovery: return "PhaseRecoveryError";
    case ErrorCode::Capacity: return "CapacityError";
    case ErrorCode::Parity: return "ParityError";
    case ErrorCode::Adjacency: return "AdjacencyError";
    case ErrorCode::NotMatchgate: return "NotMatchgateError";
    case ErrorCode::Param: return "ParamError";
    case ErrorCode::Internal: return "InternalError";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::Io: return "IoError";
  }
  return "UnknownError";
}

bool is_invariant_breach(ErrorCode code) {
  return code == ErrorCode::Internal || code == ErrorCode::PhaseRecovery;
}

Error::Error(ErrorCode code, const std::string& what, int line, int column)
    : std::runtime_error(what), code_(code), line_(line), column_(column) {}

void throw_error(ErrorCode code, const std::string& what, int line, int column) {
  switch (code) {
    case ErrorCode::Dimension: throw DimensionError(what, line, column);
    case ErrorCode::Shape: throw ShapeError(what, line, column);
    case ErrorCode::NotPassive: throw NotPassiveError(what, line, column);
    case ErrorCode::Index: throw IndexError(what, line, column);
    case ErrorCode::PhaseRecovery: throw PhaseRecoveryError(what, line, column);
    case ErrorCode::Capacity: throw CapacityError(what, line, column);
    case ErrorCode::Parity: throw ParityError(what, line, column);
    case ErrorCode::Adjacency: throw AdjacencyError(what, line, column);
    case ErrorCode::NotMatchgate: throw NotMatchgateError(what, line, column);
    case ErrorCode::Param: throw ParamError(what, line, column);
    case ErrorCode::Internal: throw InternalError(what, line, column);
    case ErrorCode::Syntax: throw SyntaxError(what, line, column);
    case ErrorCode::Io: throw IoError(what, line, column);
  }
  throw Error(code, what, line, column);
}

}  // namespace flosim
