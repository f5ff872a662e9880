#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dqw {

// Library failures, each with a stable kind tag for CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define DQW_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(#Name, what) {}         \
  }

DQW_DEFINE_ERROR(ModelMismatch);
DQW_DEFINE_ERROR(IndexOutOfRange);
DQW_DEFINE_ERROR(DimensionMismatch);
DQW_DEFINE_ERROR(NotAUnit);
DQW_DEFINE_ERROR(NotADerivation);
DQW_DEFINE_ERROR(NonConstantBracket);
DQW_DEFINE_ERROR(FirstOrderMismatch);
DQW_DEFINE_ERROR(NotAnEquivalence);
DQW_DEFINE_ERROR(NotAnAutomorphism);
DQW_DEFINE_ERROR(NonzeroClassicalPart);
DQW_DEFINE_ERROR(NotNormalized);
DQW_DEFINE_ERROR(NotPoisson);
DQW_DEFINE_ERROR(NotDecomposable);
DQW_DEFINE_ERROR(NotQuantizable);
DQW_DEFINE_ERROR(NotAConnection);
DQW_DEFINE_ERROR(UnsupportedModel);
DQW_DEFINE_ERROR(NotReduced);
DQW_DEFINE_ERROR(CapExceeded);
DQW_DEFINE_ERROR(ZeroRank);
DQW_DEFINE_ERROR(SchemaError);
DQW_DEFINE_ERROR(UnitalityError);
DQW_DEFINE_ERROR(InternalError);

#undef DQW_DEFINE_ERROR

// Syntax errors keep the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error("ParseError", what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dqw
