#pragma once

#include <stdexcept>
#include <string>

namespace qdilog {

/// Base of every error raised by the library. `kind()` is a stable tag used by
/// the CLI to pick exit codes and by reports to label failures.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define QDILOG_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

QDILOG_DEFINE_ERROR(DomainError)
QDILOG_DEFINE_ERROR(BadContour)
QDILOG_DEFINE_ERROR(OutOfStrip)
QDILOG_DEFINE_ERROR(StripViolation)
QDILOG_DEFINE_ERROR(PoleHit)
QDILOG_DEFINE_ERROR(BranchCut)
QDILOG_DEFINE_ERROR(ConvergenceViolation)
QDILOG_DEFINE_ERROR(PinchedContour)
QDILOG_DEFINE_ERROR(DegreeLimit)

#undef QDILOG_DEFINE_ERROR

}  // namespace qdilog
