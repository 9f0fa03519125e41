#include "ccd/ccd_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ccd {

const char* to_string(Selector selector) {
  switch (selector) {
    case Selector::no: return "no";
    case Selector::yes: return "yes";
    case Selector::irrelevant: return "skip";
  }
  return "no";
}

EventSet dec_box_semantics(const DecisionBox& box, const FiniteSpace& space) {
  switch (box.selector) {
    case Selector::yes:
      return ft_semantics(box.failure, space).complement();
    case Selector::no:
      return ft_semantics(box.failure, space);
    case Selector::irrelevant:
      return space.full_set();
  }
  return space.full_set();
}

EventSet path_semantics(const ConsequencePath& path, const FiniteSpace& space) {
  if (path.boxes.empty()) {
    fail(ErrorCode::empty_path, "path '" + path.id + "' has no decision boxes");
  }
  // BRANCH left-fold; with single-child branches this is just the
  // intersection of all box outcomes.
  EventSet acc = dec_box_semantics(path.boxes.front(), space);
  for (std::size_t i = 1; i < path.boxes.size(); ++i) {
    acc = acc & dec_box_semantics(path.boxes[i], space);
  }
  return acc;
}

EventSet box_semantics(const ConsequenceBox& cbox, const FiniteSpace& space) {
  EventSet acc = space.empty_set();
  for (const ConsequencePath& path : cbox.paths) {
    acc = acc | path_semantics(path, space);
  }
  return acc;
}

namespace {

// Leaves of the boxes that actually contribute a factor. Irrelevant boxes
// denote the full space and are exempt from the independence hypothesis.
void check_leaf_disjointness(const ConsequencePath& path) {
  std::set<std::string> seen;
  for (const DecisionBox& box : path.boxes) {
    if (box.selector == Selector::irrelevant) continue;
    std::set<std::string> own;
    for (const std::string& id : leaves(box.failure)) own.insert(id);
    for (const std::string& id : own) {
      if (!seen.insert(id).second) {
        fail(ErrorCode::shared_leaf_across_boxes,
             "event '" + id + "' is shared between decision boxes of path '" +
                 path.id + "'; the product rule needs disjoint leaf sets, use "
                 "the oracle instead");
      }
    }
  }
}

}  // namespace

double path_prob_closed(const ConsequencePath& path, const Assignment& assign) {
  if (path.boxes.empty()) {
    fail(ErrorCode::empty_path, "path '" + path.id + "' has no decision boxes");
  }
  check_leaf_disjointness(path);
  double product = 1.0;
  for (const DecisionBox& box : path.boxes) {
    switch (box.selector) {
      case Selector::no:
        product *= ft_prob_closed(box.failure, assign);
        break;
      case Selector::yes:
        product *= 1.0 - ft_prob_closed(box.failure, assign);
        break;
      case Selector::irrelevant:
        break;
    }
  }
  return product;
}

namespace {

bool same_box_sequence(const ConsequencePath& a, const ConsequencePath& b) {
  if (a.boxes.size() != b.boxes.size()) return false;
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    if (a.boxes[i].id != b.boxes[i].id ||
        !(a.boxes[i].failure == b.boxes[i].failure)) {
      return false;
    }
  }
  return true;
}

bool duplicate_paths(const ConsequencePath& a, const ConsequencePath& b) {
  if (!same_box_sequence(a, b)) return false;
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    if (a.boxes[i].selector != b.boxes[i].selector) return false;
  }
  return true;
}

// Two paths over one box sequence are provably disjoint when some position
// opposes yes and no: the factors are complementary events. A mere selector
// difference is not enough (irrelevant covers the whole space).
bool structurally_disjoint(const ConsequencePath& a, const ConsequencePath& b) {
  if (!same_box_sequence(a, b)) return false;
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    const Selector sa = a.boxes[i].selector;
    const Selector sb = b.boxes[i].selector;
    if ((sa == Selector::yes && sb == Selector::no) ||
        (sa == Selector::no && sb == Selector::yes)) {
      return true;
    }
  }
  return false;
}

}  // namespace

double box_prob_closed(const ConsequenceBox& cbox, const Assignment& assign) {
  for (std::size_t i = 0; i < cbox.paths.size(); ++i) {
    for (std::size_t j = i + 1; j < cbox.paths.size(); ++j) {
      if (duplicate_paths(cbox.paths[i], cbox.paths[j])) {
        fail(ErrorCode::duplicate_path,
             "paths '" + cbox.paths[i].id + "' and '" + cbox.paths[j].id +
                 "' of consequence '" + cbox.label + "' are identical");
      }
    }
  }
  // Pairwise disjointness beyond the structural rule is the caller's
  // obligation here; the space overload settles it by enumeration.
  double sum = 0.0;
  for (const ConsequencePath& path : cbox.paths) {
    sum += path_prob_closed(path, assign);
  }
  return sum;
}

double box_prob_closed(const ConsequenceBox& cbox, const Assignment& assign,
                       const FiniteSpace& space) {
  for (std::size_t i = 0; i < cbox.paths.size(); ++i) {
    for (std::size_t j = i + 1; j < cbox.paths.size(); ++j) {
      if (duplicate_paths(cbox.paths[i], cbox.paths[j])) {
        fail(ErrorCode::duplicate_path,
             "paths '" + cbox.paths[i].id + "' and '" + cbox.paths[j].id +
                 "' of consequence '" + cbox.label + "' are identical");
      }
      if (structurally_disjoint(cbox.paths[i], cbox.paths[j])) continue;
      if (path_semantics(cbox.paths[i], space)
              .intersects(path_semantics(cbox.paths[j], space))) {
        fail(ErrorCode::not_disjoint,
             "paths '" + cbox.paths[i].id + "' and '" + cbox.paths[j].id +
                 "' of consequence '" + cbox.label + "' overlap");
      }
    }
  }
  return box_prob_closed(cbox, assign);
}

ReduceResult reduce(std::span<const ConsequenceBox> ccd) {
  ReduceResult result;
  result.boxes.reserve(ccd.size());
  for (const ConsequenceBox& cbox : ccd) {
    ConsequenceBox reduced;
    reduced.label = cbox.label;
    for (const ConsequencePath& path : cbox.paths) {
      ConsequencePath kept;
      kept.id = path.id;
      for (const DecisionBox& box : path.boxes) {
        if (box.selector == Selector::irrelevant) {
          ++result.boxes_dropped;
        } else {
          kept.boxes.push_back(box);
        }
      }
      if (kept.boxes.empty()) {
        result.paths_dropped.push_back(path.id);
      } else {
        reduced.paths.push_back(std::move(kept));
      }
    }
    result.boxes.push_back(std::move(reduced));
  }
  return result;
}

HomogeneousPath build_homogeneous_paths(
    HomogeneousKind kind, const std::vector<std::vector<double>>& no_group,
    const std::vector<std::vector<double>>& yes_group) {
  HomogeneousPath out;
  out.path.id = "homogeneous";
  int box_counter = 0;
  auto add_boxes = [&](const std::vector<std::vector<double>>& group,
                       Selector selector, bool and_gate) {
    for (const std::vector<double>& leaf_probs : group) {
      const std::string box_id = "b" + std::to_string(++box_counter);
      std::vector<FtExpr> atoms;
      atoms.reserve(leaf_probs.size());
      for (std::size_t j = 0; j < leaf_probs.size(); ++j) {
        std::string event_id = box_id + "_e" + std::to_string(j + 1);
        out.assign.set(event_id, leaf_probs[j]);
        atoms.push_back(FtExpr::atomic(std::move(event_id)));
      }
      FtExpr gate = and_gate ? FtExpr::and_of(std::move(atoms))
                             : FtExpr::or_of(std::move(atoms));
      out.path.boxes.push_back({box_id, std::move(gate), selector});
    }
  };
  switch (kind) {
    case HomogeneousKind::type_a:
      add_boxes(no_group, Selector::no, /*and_gate=*/true);
      add_boxes(yes_group, Selector::yes, /*and_gate=*/true);
      break;
    case HomogeneousKind::type_b:
      add_boxes(no_group, Selector::no, /*and_gate=*/false);
      add_boxes(yes_group, Selector::yes, /*and_gate=*/false);
      break;
    case HomogeneousKind::type_c:
      add_boxes(no_group, Selector::no, /*and_gate=*/true);
      add_boxes(yes_group, Selector::yes, /*and_gate=*/false);
      break;
  }
  return out;
}

namespace {

std::vector<Diagnostic> validate_box_impl(const ConsequenceBox& cbox,
                                          const FiniteSpace* space) {
  std::vector<Diagnostic> out;
  if (cbox.paths.empty()) {
    out.push_back({Severity::warning, 0, 0, "EmptyConsequence",
                   "consequence '" + cbox.label + "' has no paths and "
                   "evaluates to probability 0"});
    return out;
  }
  for (std::size_t i = 0; i < cbox.paths.size(); ++i) {
    for (std::size_t j = i + 1; j < cbox.paths.size(); ++j) {
      const ConsequencePath& a = cbox.paths[i];
      const ConsequencePath& b = cbox.paths[j];
      if (duplicate_paths(a, b)) {
        out.push_back({Severity::error, 0, 0, "DuplicatePath",
                       "paths '" + a.id + "' and '" + b.id + "' of '" +
                           cbox.label + "' are identical"});
        continue;
      }
      if (structurally_disjoint(a, b)) continue;
      if (space == nullptr) {
        out.push_back({Severity::warning, 0, 0, "UnverifiedDisjointness",
                       "paths '" + a.id + "' and '" + b.id + "' of '" +
                           cbox.label +
                           "' cannot be proven disjoint structurally; "
                           "supply a space for an exact check"});
      } else if (path_semantics(a, *space).intersects(path_semantics(b, *space))) {
        out.push_back({Severity::error, 0, 0, "NotDisjoint",
                       "paths '" + a.id + "' and '" + b.id + "' of '" +
                           cbox.label + "' overlap"});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Diagnostic> validate_box(const ConsequenceBox& cbox) {
  return validate_box_impl(cbox, nullptr);
}

std::vector<Diagnostic> validate_box(const ConsequenceBox& cbox,
                                     const FiniteSpace& space) {
  return validate_box_impl(cbox, &space);
}

std::vector<std::string> path_events(const ConsequencePath& path) {
  std::vector<std::string> ids;
  for (const DecisionBox& box : path.boxes) collect_leaves(box.failure, ids);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<std::string> box_events(const ConsequenceBox& cbox) {
  std::vector<std::string> ids;
  for (const ConsequencePath& path : cbox.paths) {
    for (const DecisionBox& box : path.boxes) collect_leaves(box.failure, ids);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::optional<std::vector<FtExpr>> detect_exactly_one(
    const ConsequenceBox& cbox) {
  if (cbox.paths.empty()) return std::nullopt;
  const ConsequencePath& first = cbox.paths.front();
  const std::size_t n = first.boxes.size();
  if (cbox.paths.size() != n) return std::nullopt;
  for (const ConsequencePath& path : cbox.paths) {
    if (!same_box_sequence(first, path)) return std::nullopt;
  }
  // Each path selects `no` at exactly one position, and every position is
  // covered exactly once across the paths.
  std::vector<bool> covered(n, false);
  for (const ConsequencePath& path : cbox.paths) {
    std::size_t no_count = 0;
    std::size_t no_pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      switch (path.boxes[j].selector) {
        case Selector::no:
          ++no_count;
          no_pos = j;
          break;
        case Selector::yes:
          break;
        case Selector::irrelevant:
          return std::nullopt;
      }
    }
    if (no_count != 1 || covered[no_pos]) return std::nullopt;
    covered[no_pos] = true;
  }
  std::vector<FtExpr> failures;
  failures.reserve(n);
  for (const DecisionBox& box : first.boxes) failures.push_back(box.failure);
  return failures;
}

}  // namespace ccd
