#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lya {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define LYA_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
  };

LYA_DEFINE_ERROR(ShapeMismatch)
LYA_DEFINE_ERROR(NotASubspace)
LYA_DEFINE_ERROR(InvalidAlgebra)
LYA_DEFINE_ERROR(InvalidRepresentation)
LYA_DEFINE_ERROR(NotALieAlgebra)
LYA_DEFINE_ERROR(NotALeibnizAlgebra)
LYA_DEFINE_ERROR(NotReductive)
LYA_DEFINE_ERROR(CocycleContainmentFailure)
LYA_DEFINE_ERROR(SizeCapExceeded)
LYA_DEFINE_ERROR(UnknownIdentifier)
LYA_DEFINE_ERROR(EvalError)
LYA_DEFINE_ERROR(UnknownSample)
LYA_DEFINE_ERROR(NotASubalgebra)
LYA_DEFINE_ERROR(UnknownExample)
LYA_DEFINE_ERROR(ParseError)
LYA_DEFINE_ERROR(InvalidBundle)

#undef LYA_DEFINE_ERROR

/// Expression syntax error; `offset` is the byte offset into the source.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  const char* kind() const noexcept override { return "SyntaxError"; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace lya
