#pragma once

#include <map>
#include <span>
#include <string>

#include "ccd/basic_event.hpp"
#include "ccd/errors.hpp"

namespace ccd {

/// Per-event failure probabilities at a fixed mission time, in years.
/// The map is ordered by event id so iteration is deterministic.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(double t_years) : t_years_(t_years) {}

  /// Throws invalid_probability outside [0,1].
  void set(const std::string& id, double p);

  /// Throws unknown_event when the id has no entry.
  double at(const std::string& id) const;

  bool contains(const std::string& id) const;
  const std::map<std::string, double>& entries() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double mission_time() const { return t_years_; }

 private:
  std::map<std::string, double> probs_;
  double t_years_ = 1.0;
};

/// Probability that an exponentially failing component has failed by time t:
/// 1 - exp(-lambda * t). Rates are per year, t in years.
double exp_cdf(double lambda, double t);

/// Evaluates each event's failure model at mission time t (years).
/// Constant probabilities ignore t; exponential rates go through exp_cdf.
Assignment instantiate(std::span<const BasicEvent> events, double t_years);

}  // namespace ccd
