#pragma once

#include <stdexcept>
#include <string>

namespace ncr {

// Base class for all library errors. `code()` is a short machine-readable
// tag, surfaced verbatim in CLI JSON output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse_error", what) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what)
      : Error("validation_error", what) {}
};

struct DepthCapExceeded : Error {
  explicit DepthCapExceeded(const std::string& what)
      : Error("depth_cap_exceeded", what) {}
};

struct DomainEscape : Error {
  explicit DomainEscape(const std::string& what)
      : Error("domain_escape", what) {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what)
      : Error("budget_exceeded", what) {}
};

struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error("cap_exceeded", what) {}
};

struct RefinementExhausted : Error {
  explicit RefinementExhausted(const std::string& what)
      : Error("refinement_exhausted", what) {}
};

}  // namespace ncr
