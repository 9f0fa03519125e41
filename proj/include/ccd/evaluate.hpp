#pragma once

#include <optional>
#include <string>

#include "ccd/model.hpp"
#include "ccd/montecarlo.hpp"

namespace ccd {

struct McsParams {
  std::uint64_t samples = kMcsDefaultSamples;
  std::uint64_t seed = 1;
};

enum class TargetKind { consequence, path, fault_tree };

struct EvalResult {
  std::string target;
  TargetKind kind = TargetKind::fault_tree;
  EvalMethod method = EvalMethod::closed;
  double probability = 0.0;
  std::optional<McsEstimate> estimate;  // set for the mcs method
};

/// Evaluates a named consequence, path, or fault tree from the model at
/// mission time t. Resolution tries consequences first, then paths, then
/// trees; an unknown name raises unknown_event.
EvalResult evaluate_target(const Model& model, const std::string& target,
                           EvalMethod method, double t_years,
                           const McsParams& mcs = {});

}  // namespace ccd
