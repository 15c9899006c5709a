#pragma once

#include <stdexcept>
#include <string>

namespace sdg {

// Every failure surfaced by the library carries a stable short code
// (e.g. "InfeasibleBaseline") that the CLI prints verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* kInfeasibleBaseline = "InfeasibleBaseline";
inline constexpr const char* kInfeasibleFixedAssignment = "InfeasibleFixedAssignment";
inline constexpr const char* kIndexOutOfRange = "IndexOutOfRange";
inline constexpr const char* kInstanceTooLarge = "InstanceTooLarge";
inline constexpr const char* kInvalidPsi = "InvalidPsi";
inline constexpr const char* kInvalidCoalition = "InvalidCoalition";
inline constexpr const char* kInvalidPermutation = "InvalidPermutation";
inline constexpr const char* kPreconditionNotMet = "PreconditionNotMet";
inline constexpr const char* kParseError = "ParseError";
inline constexpr const char* kValidationFailed = "ValidationFailed";
inline constexpr const char* kInternal = "InternalError";
}  // namespace errc

}  // namespace sdg
