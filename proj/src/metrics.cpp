#include "ccd/metrics.hpp"

#include <cmath>

#include "ccd/model.hpp"
#include "ccd/montecarlo.hpp"
#include "ccd/oracle.hpp"

namespace ccd {

const char* to_string(EvalMethod method) {
  switch (method) {
    case EvalMethod::closed: return "closed";
    case EvalMethod::oracle: return "oracle";
    case EvalMethod::mcs: return "mcs";
  }
  return "closed";
}

double forced_outage_rate(const FtExpr& ft, std::span<const BasicEvent> rates,
                          double t_years) {
  return ft_prob_closed(ft, instantiate(rates, t_years));
}

double partial_blackout_prob(std::span<const double> gen_fors) {
  for (double f : gen_fors) {
    if (!(f >= 0.0 && f <= 1.0)) {
      fail(ErrorCode::invalid_probability, "FOR value " + std::to_string(f));
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < gen_fors.size(); ++i) {
    double term = gen_fors[i];
    for (std::size_t j = 0; j < gen_fors.size(); ++j) {
      if (j != i) term *= 1.0 - gen_fors[j];
    }
    total += term;
  }
  return total;
}

namespace {

SaidiReport fold_saidi(const GridStudy& study,
                       const std::map<std::string, double>& load_probs) {
  SaidiReport report;
  report.t_years = study.t_years;
  double numerator = 0.0;
  long total_customers = 0;
  for (const LoadSpec& load : study.loads) {
    auto it = load_probs.find(load.label);
    if (it == load_probs.end()) {
      fail(ErrorCode::missing_load_prob,
           "no probability for load '" + load.label + "'");
    }
    if (load.customers <= 0) {
      fail(ErrorCode::zero_customers,
           "load '" + load.label + "' serves no customers");
    }
    LoadBreakdown row;
    row.label = load.label;
    row.probability = it->second;
    row.mttr_hours = load.mttr_hours;
    row.customers = load.customers;
    row.term = row.probability * row.mttr_hours *
               static_cast<double>(row.customers);
    numerator += row.term;
    total_customers += load.customers;
    report.loads.push_back(std::move(row));
  }
  if (total_customers <= 0) {
    fail(ErrorCode::zero_customers, "study serves no customers");
  }
  report.saidi_hours = numerator / static_cast<double>(total_customers);
  return report;
}

}  // namespace

double saidi(const GridStudy& study,
             const std::map<std::string, double>& load_probs) {
  return fold_saidi(study, load_probs).saidi_hours;
}

SaidiReport saidi_full(const GridStudy& study, const Model& model,
                       double t_years, EvalMethod method, std::uint64_t samples,
                       std::uint64_t seed) {
  const Assignment assign = model.assignment(t_years);
  std::map<std::string, double> probs;

  if (method == EvalMethod::mcs) {
    // One joint sample stream across all loads.
    std::vector<ConsequenceBox> boxes;
    boxes.reserve(study.loads.size());
    for (const LoadSpec& load : study.loads) {
      boxes.push_back(model.materialize_box(load.consequence));
    }
    const std::vector<McsEstimate> estimates =
        mcs_estimate_many(boxes, assign, samples, seed);
    for (std::size_t i = 0; i < study.loads.size(); ++i) {
      probs[study.loads[i].label] = estimates[i].mean;
    }
  } else {
    for (const LoadSpec& load : study.loads) {
      const ConsequenceBox cbox = model.materialize_box(load.consequence);
      probs[load.label] = method == EvalMethod::closed
                              ? box_prob_closed(cbox, assign)
                              : box_prob_oracle(cbox, assign);
    }
  }

  SaidiReport report = fold_saidi(study, probs);
  report.t_years = t_years;
  return report;
}

std::optional<SaidiReport> saidi_exactly_one(const GridStudy& study,
                                             const Model& model,
                                             double t_years) {
  const Assignment assign = model.assignment(t_years);
  std::map<std::string, double> probs;
  for (const LoadSpec& load : study.loads) {
    const ConsequenceBox cbox = model.materialize_box(load.consequence);
    const auto failures = detect_exactly_one(cbox);
    if (!failures) return std::nullopt;
    std::vector<double> fors;
    fors.reserve(failures->size());
    for (const FtExpr& ft : *failures) {
      fors.push_back(ft_prob_closed(ft, assign));
    }
    probs[load.label] = partial_blackout_prob(fors);
  }
  SaidiReport report = fold_saidi(study, probs);
  report.t_years = t_years;
  return report;
}

}  // namespace ccd
