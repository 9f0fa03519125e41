#include <algorithm>
#include <map>
#include <set>

#include "ccd/model.hpp"

namespace ccd {

namespace {

void check_path(const Model& model, const NamedPath& named,
                std::vector<Diagnostic>& out) {
  if (named.steps.empty()) {
    out.push_back({Severity::error, 0, 0, "EmptyPath",
                   "path '" + named.id + "' has no decision boxes"});
    return;
  }
  bool all_skip = true;
  std::map<std::string, std::string> owner;  // event -> box that uses it
  for (const PathStep& step : named.steps) {
    if (step.selector != Selector::irrelevant) all_skip = false;
    const BoxTemplate* box = model.find_box(step.box);
    if (box == nullptr) continue;  // parse already reported the reference
    if (step.selector == Selector::irrelevant) continue;
    std::vector<std::string> ids;
    collect_leaves(model.resolved_ft(box->ft), ids);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (const std::string& id : ids) {
      auto [it, inserted] = owner.emplace(id, box->id);
      if (!inserted && it->second != box->id) {
        out.push_back({Severity::error, 0, 0, "SharedLeafAcrossBoxes",
                       "path '" + named.id + "' uses event '" + id +
                           "' in boxes '" + it->second + "' and '" + box->id +
                           "'; closed-form evaluation is unsound there"});
      }
    }
  }
  if (all_skip) {
    out.push_back({Severity::warning, 0, 0, "AllIrrelevantPath",
                   "path '" + named.id + "' is all skip selectors; it denotes "
                   "the whole sample space and reduction drops it"});
  }
}

void check_consequence(const Model& model, const NamedConsequence& cons,
                       std::vector<Diagnostic>& out) {
  if (cons.paths.empty()) {
    out.push_back({Severity::warning, 0, 0, "EmptyConsequence",
                   "consequence '" + cons.id + "' has no paths and evaluates "
                   "to probability 0"});
    return;
  }
  for (std::size_t i = 0; i < cons.paths.size(); ++i) {
    for (std::size_t j = i + 1; j < cons.paths.size(); ++j) {
      if (cons.paths[i] == cons.paths[j]) {
        out.push_back({Severity::error, 0, 0, "DuplicatePath",
                       "consequence '" + cons.id + "' lists path '" +
                           cons.paths[i] + "' twice"});
      }
    }
  }

  // Full-expansion probe: when every path ranges over one box sequence with
  // only yes/no selectors, the 2^k selector vectors should all be present.
  std::vector<const NamedPath*> paths;
  for (const std::string& id : cons.paths) {
    const NamedPath* path = model.find_path(id);
    if (path == nullptr) return;
    paths.push_back(path);
  }
  const NamedPath* first = paths.front();
  bool same_sequence = true;
  bool pure_yes_no = true;
  for (const NamedPath* path : paths) {
    if (path->steps.size() != first->steps.size()) {
      same_sequence = false;
      break;
    }
    for (std::size_t k = 0; k < path->steps.size(); ++k) {
      if (path->steps[k].box != first->steps[k].box) same_sequence = false;
      if (path->steps[k].selector == Selector::irrelevant) pure_yes_no = false;
    }
  }
  if (same_sequence && pure_yes_no && !first->steps.empty() &&
      first->steps.size() <= 16) {
    const std::size_t expected = std::size_t{1} << first->steps.size();
    if (paths.size() < expected) {
      out.push_back({Severity::notice, 0, 0, "NotFullExpansion",
                     "consequence '" + cons.id + "' covers " +
                         std::to_string(paths.size()) + " of " +
                         std::to_string(expected) +
                         " selector vectors over its box sequence"});
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate(const Model& model) {
  std::vector<Diagnostic> out;

  std::set<std::string> event_ids;
  for (const BasicEvent& event : model.events) event_ids.insert(event.id);

  // Trees are checked in resolved form so repeats introduced by name
  // references are caught too.
  for (const NamedFt& ft : model.fts) {
    try {
      for (Diagnostic d : validate_ft(model.resolved_ft(ft.id), event_ids)) {
        d.message = "in fault tree '" + ft.id + "': " + d.message;
        out.push_back(std::move(d));
      }
    } catch (const Error& e) {
      out.push_back({Severity::error, 0, 0, to_string(e.code()), e.what()});
    }
  }
  for (const NamedPath& path : model.paths) {
    try {
      check_path(model, path, out);
    } catch (const Error& e) {
      out.push_back({Severity::error, 0, 0, to_string(e.code()), e.what()});
    }
  }
  for (const NamedConsequence& cons : model.consequences) {
    check_consequence(model, cons, out);
  }
  if (!model.mission_declared) {
    out.push_back({Severity::notice, 0, 0, "MissionDefaulted",
                   "no mission declaration; defaulting to t=1 year"});
  }
  return out;
}

}  // namespace ccd
