#include "ccd/model.hpp"

#include <algorithm>
#include <set>

namespace ccd {

namespace {

template <typename T, typename Id>
const T* find_by(const std::vector<T>& items, Id T::*field,
                 const std::string& id) {
  for (const T& item : items) {
    if (item.*field == id) return &item;
  }
  return nullptr;
}

}  // namespace

const BasicEvent* Model::find_event(const std::string& id) const {
  return find_by(events, &BasicEvent::id, id);
}

const NamedFt* Model::find_ft(const std::string& id) const {
  return find_by(fts, &NamedFt::id, id);
}

const BoxTemplate* Model::find_box(const std::string& id) const {
  return find_by(boxes, &BoxTemplate::id, id);
}

const NamedPath* Model::find_path(const std::string& id) const {
  return find_by(paths, &NamedPath::id, id);
}

const NamedConsequence* Model::find_consequence(const std::string& id) const {
  return find_by(consequences, &NamedConsequence::id, id);
}

const LoadSpec* Model::find_load(const std::string& label) const {
  return find_by(loads, &LoadSpec::label, label);
}

namespace {

FtExpr resolve_expr(const Model& model, const FtExpr& expr,
                    std::set<std::string>& visiting) {
  switch (expr.kind()) {
    case FtExpr::Kind::atomic: {
      const std::string& id = expr.event();
      if (model.find_event(id) != nullptr) return expr;
      const NamedFt* named = model.find_ft(id);
      if (named == nullptr) {
        fail(ErrorCode::unresolved_reference,
             "'" + id + "' names neither an event nor a fault tree");
      }
      if (!visiting.insert(id).second) {
        fail(ErrorCode::unresolved_reference,
             "fault tree '" + id + "' references itself");
      }
      FtExpr resolved = resolve_expr(model, named->expr, visiting);
      visiting.erase(id);
      return resolved;
    }
    case FtExpr::Kind::and_gate:
    case FtExpr::Kind::or_gate: {
      std::vector<FtExpr> children;
      children.reserve(expr.children().size());
      for (const FtExpr& child : expr.children()) {
        children.push_back(resolve_expr(model, child, visiting));
      }
      return expr.kind() == FtExpr::Kind::and_gate
                 ? FtExpr::and_of(std::move(children))
                 : FtExpr::or_of(std::move(children));
    }
    case FtExpr::Kind::not_gate:
      return FtExpr::not_of(resolve_expr(model, expr.children()[0], visiting));
  }
  return expr;
}

}  // namespace

FtExpr Model::resolved_ft(const std::string& name) const {
  const NamedFt* named = find_ft(name);
  if (named == nullptr) {
    fail(ErrorCode::unresolved_reference, "no fault tree named '" + name + "'");
  }
  std::set<std::string> visiting{name};
  return resolve_expr(*this, named->expr, visiting);
}

ConsequencePath Model::materialize_path(const std::string& id) const {
  const NamedPath* named = find_path(id);
  if (named == nullptr) {
    fail(ErrorCode::unresolved_reference, "no path named '" + id + "'");
  }
  ConsequencePath path;
  path.id = named->id;
  path.boxes.reserve(named->steps.size());
  for (const PathStep& step : named->steps) {
    const BoxTemplate* box = find_box(step.box);
    if (box == nullptr) {
      fail(ErrorCode::unresolved_reference, "no box named '" + step.box + "'");
    }
    path.boxes.push_back({box->id, resolved_ft(box->ft), step.selector});
  }
  return path;
}

ConsequenceBox Model::materialize_box(const std::string& id) const {
  const NamedConsequence* named = find_consequence(id);
  if (named == nullptr) {
    fail(ErrorCode::unresolved_reference, "no consequence named '" + id + "'");
  }
  ConsequenceBox cbox;
  cbox.label = named->id;
  cbox.paths.reserve(named->paths.size());
  for (const std::string& path_id : named->paths) {
    cbox.paths.push_back(materialize_path(path_id));
  }
  return cbox;
}

Assignment Model::assignment(double t_years) const {
  return instantiate(events, t_years);
}

GridStudy Model::study(double t_years) const { return {loads, t_years}; }

namespace {

bool same_model(const FailureModel& a, const FailureModel& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ca = std::get_if<ConstantProb>(&a)) {
    return ca->p == std::get<ConstantProb>(b).p;
  }
  return std::get<ExponentialRate>(a).lambda ==
         std::get<ExponentialRate>(b).lambda;
}

}  // namespace

bool Model::structurally_equal(const Model& other) const {
  if (name != other.name || mission_t_years != other.mission_t_years) {
    return false;
  }
  if (events.size() != other.events.size() || fts.size() != other.fts.size() ||
      boxes.size() != other.boxes.size() || paths.size() != other.paths.size() ||
      consequences.size() != other.consequences.size() ||
      loads.size() != other.loads.size()) {
    return false;
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].id != other.events[i].id ||
        !same_model(events[i].model, other.events[i].model)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < fts.size(); ++i) {
    if (fts[i].id != other.fts[i].id || !(fts[i].expr == other.fts[i].expr)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].id != other.boxes[i].id || boxes[i].ft != other.boxes[i].ft) {
      return false;
    }
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].id != other.paths[i].id ||
        paths[i].steps.size() != other.paths[i].steps.size()) {
      return false;
    }
    for (std::size_t j = 0; j < paths[i].steps.size(); ++j) {
      if (paths[i].steps[j].box != other.paths[i].steps[j].box ||
          paths[i].steps[j].selector != other.paths[i].steps[j].selector) {
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < consequences.size(); ++i) {
    if (consequences[i].id != other.consequences[i].id ||
        consequences[i].paths != other.consequences[i].paths) {
      return false;
    }
  }
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (loads[i].label != other.loads[i].label ||
        loads[i].consequence != other.loads[i].consequence ||
        loads[i].mttr_hours != other.loads[i].mttr_hours ||
        loads[i].customers != other.loads[i].customers) {
      return false;
    }
  }
  return true;
}

Model reduce_model(const Model& model, ModelReduceSummary* summary) {
  Model reduced = model;
  ModelReduceSummary local;
  std::set<std::string> dropped_paths;

  reduced.paths.clear();
  for (const NamedPath& path : model.paths) {
    NamedPath kept;
    kept.id = path.id;
    for (const PathStep& step : path.steps) {
      if (step.selector == Selector::irrelevant) {
        ++local.steps_dropped;
      } else {
        kept.steps.push_back(step);
      }
    }
    if (kept.steps.empty() && !path.steps.empty()) {
      local.paths_dropped.push_back(path.id);
      dropped_paths.insert(path.id);
    } else {
      reduced.paths.push_back(std::move(kept));
    }
  }
  for (NamedConsequence& cons : reduced.consequences) {
    std::erase_if(cons.paths, [&dropped_paths](const std::string& id) {
      return dropped_paths.count(id) != 0;
    });
  }
  if (summary != nullptr) *summary = std::move(local);
  return reduced;
}

}  // namespace ccd
