#pragma once

#include <string>
#include <variant>

namespace ccd {

/// Failure probability that does not depend on mission time.
struct ConstantProb {
  double p = 0.0;
};

/// Exponentially distributed time to failure, rate in failures/year.
struct ExponentialRate {
  double lambda = 0.0;
};

using FailureModel = std::variant<ConstantProb, ExponentialRate>;

/// An independently failing component.
struct BasicEvent {
  std::string id;
  FailureModel model;
};

inline bool is_constant(const FailureModel& model) {
  return std::holds_alternative<ConstantProb>(model);
}

}  // namespace ccd
