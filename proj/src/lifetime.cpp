#include "ccd/lifetime.hpp"

#include <cmath>

namespace ccd {

void Assignment::set(const std::string& id, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorCode::invalid_probability,
         "probability for '" + id + "' is " + std::to_string(p));
  }
  probs_[id] = p;
}

double Assignment::at(const std::string& id) const {
  auto it = probs_.find(id);
  if (it == probs_.end()) {
    fail(ErrorCode::unknown_event, "no probability assigned to '" + id + "'");
  }
  return it->second;
}

bool Assignment::contains(const std::string& id) const {
  return probs_.count(id) != 0;
}

double exp_cdf(double lambda, double t) {
  if (lambda < 0.0) {
    fail(ErrorCode::negative_rate, "rate " + std::to_string(lambda));
  }
  if (t < 0.0) {
    fail(ErrorCode::negative_time, "time " + std::to_string(t));
  }
  // -expm1 keeps precision for small lambda*t.
  return -std::expm1(-lambda * t);
}

Assignment instantiate(std::span<const BasicEvent> events, double t_years) {
  if (t_years < 0.0) {
    fail(ErrorCode::negative_time, "mission time " + std::to_string(t_years));
  }
  Assignment assign(t_years);
  for (const BasicEvent& event : events) {
    if (const auto* constant = std::get_if<ConstantProb>(&event.model)) {
      assign.set(event.id, constant->p);
    } else {
      assign.set(event.id, exp_cdf(std::get<ExponentialRate>(event.model).lambda,
                                   t_years));
    }
  }
  return assign;
}

}  // namespace ccd
