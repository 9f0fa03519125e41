#include "ccd/evaluate.hpp"

#include "ccd/oracle.hpp"

namespace ccd {

EvalResult evaluate_target(const Model& model, const std::string& target,
                           EvalMethod method, double t_years,
                           const McsParams& mcs) {
  const Assignment assign = model.assignment(t_years);
  EvalResult result;
  result.target = target;
  result.method = method;

  if (model.find_consequence(target) != nullptr) {
    result.kind = TargetKind::consequence;
    const ConsequenceBox cbox = model.materialize_box(target);
    switch (method) {
      case EvalMethod::closed:
        result.probability = box_prob_closed(cbox, assign);
        break;
      case EvalMethod::oracle:
        result.probability = box_prob_oracle(cbox, assign);
        break;
      case EvalMethod::mcs:
        result.estimate = mcs_estimate(cbox, assign, mcs.samples, mcs.seed);
        result.probability = result.estimate->mean;
        break;
    }
    return result;
  }

  if (model.find_path(target) != nullptr) {
    result.kind = TargetKind::path;
    const ConsequencePath path = model.materialize_path(target);
    switch (method) {
      case EvalMethod::closed:
        result.probability = path_prob_closed(path, assign);
        break;
      case EvalMethod::oracle:
        result.probability = path_prob_oracle(path, assign);
        break;
      case EvalMethod::mcs:
        result.estimate = mcs_estimate(path, assign, mcs.samples, mcs.seed);
        result.probability = result.estimate->mean;
        break;
    }
    return result;
  }

  if (model.find_ft(target) != nullptr) {
    result.kind = TargetKind::fault_tree;
    const FtExpr ft = model.resolved_ft(target);
    switch (method) {
      case EvalMethod::closed:
        result.probability = ft_prob_closed(ft, assign);
        break;
      case EvalMethod::oracle:
        result.probability = ft_prob_oracle(ft, assign);
        break;
      case EvalMethod::mcs:
        result.estimate = mcs_estimate(ft, assign, mcs.samples, mcs.seed);
        result.probability = result.estimate->mean;
        break;
    }
    return result;
  }

  fail(ErrorCode::unknown_event,
       "no consequence, path, or fault tree named '" + target + "'");
}

}  // namespace ccd
