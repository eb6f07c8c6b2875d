#pragma once

#include <stdexcept>
#include <string>

namespace maup {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MAUP_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

MAUP_DEFINE_ERROR(FormatError);          // malformed MAUP-TENSOR header or payload
MAUP_DEFINE_ERROR(DataError);            // non-finite or out-of-domain values
MAUP_DEFINE_ERROR(TypeError);            // tensor kind differs from the requested one
MAUP_DEFINE_ERROR(IoError);
MAUP_DEFINE_ERROR(ShapeError);
MAUP_DEFINE_ERROR(EmptyMaskError);
MAUP_DEFINE_ERROR(SeedError);
MAUP_DEFINE_ERROR(EmptyStackError);
MAUP_DEFINE_ERROR(EmptyCandidateError);
MAUP_DEFINE_ERROR(EmptyPeripheryError);
MAUP_DEFINE_ERROR(ConfigError);
MAUP_DEFINE_ERROR(SpecError);

#undef MAUP_DEFINE_ERROR

/// Wraps an error raised inside a named pipeline stage ("RPG: empty foreground").
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace maup
