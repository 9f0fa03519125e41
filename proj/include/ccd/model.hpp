#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccd/ccd_core.hpp"
#include "ccd/metrics.hpp"

namespace ccd {

/// Decision-box template: box id plus the name of its failure tree.
/// Selectors are chosen per path step.
struct BoxTemplate {
  std::string id;
  std::string ft;
};

struct PathStep {
  std::string box;
  Selector selector = Selector::no;
};

struct NamedPath {
  std::string id;
  std::vector<PathStep> steps;
};

struct NamedConsequence {
  std::string id;
  std::vector<std::string> paths;
};

struct NamedFt {
  std::string id;
  FtExpr expr;  // leaves may reference events or other named trees
};

/// A complete parsed model. Declaration order is preserved so the printer
/// is canonical and round-trips.
class Model {
 public:
  std::string name = "unnamed";
  std::vector<BasicEvent> events;
  std::vector<NamedFt> fts;
  std::vector<BoxTemplate> boxes;
  std::vector<NamedPath> paths;
  std::vector<NamedConsequence> consequences;
  std::vector<LoadSpec> loads;
  double mission_t_years = 1.0;
  bool mission_declared = false;

  const BasicEvent* find_event(const std::string& id) const;
  const NamedFt* find_ft(const std::string& id) const;
  const BoxTemplate* find_box(const std::string& id) const;
  const NamedPath* find_path(const std::string& id) const;
  const NamedConsequence* find_consequence(const std::string& id) const;
  const LoadSpec* find_load(const std::string& label) const;

  /// Named tree with every tree-name leaf substituted by its definition.
  /// References are acyclic (enforced at parse time).
  FtExpr resolved_ft(const std::string& name) const;

  ConsequencePath materialize_path(const std::string& id) const;
  ConsequenceBox materialize_box(const std::string& id) const;

  /// Per-event probabilities at mission time t (years).
  Assignment assignment(double t_years) const;

  GridStudy study(double t_years) const;

  bool structurally_equal(const Model& other) const;
};

/// Hypothesis and hygiene checks over a parsed model: repeated leaves,
/// shared events across boxes of one path, duplicate or missing expansion
/// paths, degenerate declarations. Errors block evaluation.
std::vector<Diagnostic> validate(const Model& model);

struct ModelReduceSummary {
  std::size_t steps_dropped = 0;
  std::vector<std::string> paths_dropped;
};

/// Model-level reduction: removes skip steps from every path and drops paths
/// left empty (also unlisting them from consequences). Declarations that
/// become unused are kept.
Model reduce_model(const Model& model, ModelReduceSummary* summary = nullptr);

/// Canonical text form; parse(pretty_print(m)) is structurally equal to m.
std::string pretty_print(const Model& model);

}  // namespace ccd
