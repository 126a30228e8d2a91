#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flosim {

enum class ErrorCode {
  Dimension,
  Shape,
  NotPassive,
  Index,
  PhaseRecovery,
  Capacity,
  Parity,
  Adjacency,
  NotMatchgate,
  Param,
  Internal,
  Syntax,
  Io,
};

std::string_view error_code_name(ErrorCode code);

// Validation errors map to exit status 2, invariant breaches to 3.
bool is_invariant_breach(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int line = 0, int column = 0);

  ErrorCode code() const noexcept { return code_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  int line_;
  int column_;
};

#define FLOSIM_DEFINE_ERROR(Name, Code)                                    \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what, int line = 0, int column = 0)   \
        : Error(ErrorCode::Code, what, line, column) {}                    \
  };

FLOSIM_DEFINE_ERROR(DimensionError, Dimension)
FLOSIM_DEFINE_ERROR(ShapeError, Shape)
FLOSIM_DEFINE_ERROR(NotPassiveError, NotPassive)
FLOSIM_DEFINE_ERROR(IndexError, Index)
FLOSIM_DEFINE_ERROR(PhaseRecoveryError, PhaseRecovery)
FLOSIM_DEFINE_ERROR(CapacityError, Capacity)
FLOSIM_DEFINE_ERROR(ParityError, Parity)
FLOSIM_DEFINE_ERROR(AdjacencyError, Adjacency)
FLOSIM_DEFINE_ERROR(NotMatchgateError, NotMatchgate)
FLOSIM_DEFINE_ERROR(ParamError, Param)
FLOSIM_DEFINE_ERROR(InternalError, Internal)
FLOSIM_DEFINE_ERROR(SyntaxError, Syntax)
FLOSIM_DEFINE_ERROR(IoError, Io)

#undef FLOSIM_DEFINE_ERROR

// Throws the subclass matching `code`.
[[noreturn]] void throw_error(ErrorCode code, const std::string& what, int line = 0, int column = 0);

}  // namespace flosim
