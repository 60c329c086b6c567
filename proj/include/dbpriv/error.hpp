#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dbpriv {

// All library failures carry a stable machine-readable kind alongside the
// human message. The CLI maps kind -> error JSON and a nonzero exit code.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

namespace errkind {
inline constexpr const char* schema = "schema";
inline constexpr const char* empty_dataset = "empty-dataset";
inline constexpr const char* invalid_intent = "invalid-intent";
inline constexpr const char* degenerate_intent = "degenerate-intent";
inline constexpr const char* infeasible = "infeasible";
inline constexpr const char* config = "config";
inline constexpr const char* no_feasible_allocation = "no-feasible-allocation";
inline constexpr const char* no_candidate = "no-candidate";
inline constexpr const char* invalid_operation = "invalid-operation";
inline constexpr const char* io = "io";
}  // namespace errkind

}  // namespace dbpriv
