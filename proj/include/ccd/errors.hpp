#pragma once

#include <stdexcept>
#include <string>

namespace ccd {

/// Machine-readable failure categories raised by the evaluation layers.
enum class ErrorCode {
  cap_exceeded,
  invalid_probability,
  foreign_event,
  unknown_event,
  shared_leaf,
  shared_leaf_across_boxes,
  empty_path,
  not_disjoint,
  duplicate_path,
  negative_rate,
  negative_time,
  non_positive_rate,
  missing_load_prob,
  zero_customers,
  duplicate_name,
  unresolved_reference,
  parse_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ccd
