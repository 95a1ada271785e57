#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mforge {

// Base of every error raised by the library. Carries optional witness ids so
// that callers can report the offending points/lines without string parsing.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, std::vector<int> witness = {})
      : std::runtime_error(what), witness_(std::move(witness)) {}

  const std::vector<int>& witness() const noexcept { return witness_; }

 private:
  std::vector<int> witness_;
};

#define MFORGE_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what, std::vector<int> witness = {})  \
        : Error(#Name ": " + what, std::move(witness)) {}                  \
  }

MFORGE_DEFINE_ERROR(UnsupportedField);
MFORGE_DEFINE_ERROR(DegenerateForm);
MFORGE_DEFINE_ERROR(AxiomViolation);
MFORGE_DEFINE_ERROR(PreconditionError);
MFORGE_DEFINE_ERROR(BadDimension);
MFORGE_DEFINE_ERROR(NotOpposite);
MFORGE_DEFINE_ERROR(ConsecutiveNotOpposite);
MFORGE_DEFINE_ERROR(NoFrame);
MFORGE_DEFINE_ERROR(BadIndices);
MFORGE_DEFINE_ERROR(RecipeDegenerate);
MFORGE_DEFINE_ERROR(ChainNotOpposite);
MFORGE_DEFINE_ERROR(BadConfiguration);
MFORGE_DEFINE_ERROR(LinesNotOpposite);
MFORGE_DEFINE_ERROR(CoverageIncomplete);
MFORGE_DEFINE_ERROR(NoHostPair);
MFORGE_DEFINE_ERROR(ClosureCapExceeded);
MFORGE_DEFINE_ERROR(CacheError);

#undef MFORGE_DEFINE_ERROR

}  // namespace mforge
