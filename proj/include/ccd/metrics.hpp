#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccd/ccd_core.hpp"

namespace ccd {

class Model;

/// One supplied load point: its failure consequence, repair duration, and
/// customer count.
struct LoadSpec {
  std::string label;
  std::string consequence;
  double mttr_hours = 0.0;
  long customers = 0;
};

struct GridStudy {
  std::vector<LoadSpec> loads;
  double t_years = 1.0;
};

/// Unavailability of a generation unit at mission time t: its failure tree
/// evaluated at the instantiated per-component probabilities.
double forced_outage_rate(const FtExpr& ft, std::span<const BasicEvent> rates,
                          double t_years);

/// Probability that exactly one of n independent supplies fails:
/// sum_i f_i * prod_{j != i} (1 - f_j).
double partial_blackout_prob(std::span<const double> gen_fors);

/// Customer-weighted average interruption duration in hours:
/// sum(prob * mttr * customers) / sum(customers).
double saidi(const GridStudy& study,
             const std::map<std::string, double>& load_probs);

struct LoadBreakdown {
  std::string label;
  double probability = 0.0;
  double mttr_hours = 0.0;
  long customers = 0;
  double term = 0.0;  // probability * mttr * customers
};

struct SaidiReport {
  double saidi_hours = 0.0;
  std::vector<LoadBreakdown> loads;
  double t_years = 1.0;
};

enum class EvalMethod { closed, oracle, mcs };

const char* to_string(EvalMethod method);

/// End-to-end index: evaluates each load's consequence box from the model by
/// the chosen method, then folds the SAIDI quotient. Sample count and seed
/// apply to the mcs method only (all loads share one sample stream).
SaidiReport saidi_full(const GridStudy& study, const Model& model,
                       double t_years, EvalMethod method = EvalMethod::closed,
                       std::uint64_t samples = 100000, std::uint64_t seed = 1);

/// Alternate route for grids where every consequence box has the
/// exactly-one-supply shape: per-load probability via partial_blackout_prob
/// over the boxes' closed-form failure probabilities. Returns nullopt when
/// some consequence does not have that shape.
std::optional<SaidiReport> saidi_exactly_one(const GridStudy& study,
                                             const Model& model,
                                             double t_years);

}  // namespace ccd
