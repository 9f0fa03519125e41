#include "ccd/oracle.hpp"

#include <algorithm>
#include <set>

namespace ccd {

FiniteSpace space_for(std::span<const std::string> event_ids,
                      const Assignment& assign, std::size_t cap) {
  std::vector<std::pair<std::string, double>> events;
  events.reserve(event_ids.size());
  for (const std::string& id : event_ids) {
    events.emplace_back(id, assign.at(id));
  }
  return FiniteSpace(std::move(events), cap);
}

double ft_prob_oracle(const FtExpr& ft, const Assignment& assign,
                      std::size_t cap) {
  std::vector<std::string> ids = leaves(ft);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  FiniteSpace space = space_for(ids, assign, cap);
  return space.prob(ft_semantics(ft, space));
}

double path_prob_oracle(const ConsequencePath& path, const Assignment& assign,
                        std::size_t cap) {
  FiniteSpace space = space_for(path_events(path), assign, cap);
  return space.prob(path_semantics(path, space));
}

namespace {

// Replaces each decision box's failure tree by a single Bernoulli whose
// marginal is enumerated over that tree's own leaves. Exact when distinct
// trees have disjoint leaf sets (they are then independent).
double box_prob_hierarchical(const ConsequenceBox& cbox,
                             const Assignment& assign, std::size_t cap) {
  struct SubTree {
    FtExpr expr;
    std::string pseudo_id;
  };
  std::vector<SubTree> subtrees;
  std::set<std::string> claimed;  // leaves owned by an already-seen subtree

  auto find_subtree = [&](const FtExpr& expr) -> const SubTree* {
    for (const SubTree& st : subtrees) {
      if (st.expr == expr) return &st;
    }
    return nullptr;
  };

  std::vector<std::pair<std::string, double>> pseudo_events;
  for (const ConsequencePath& path : cbox.paths) {
    for (const DecisionBox& box : path.boxes) {
      if (find_subtree(box.failure) != nullptr) continue;
      std::vector<std::string> own = leaves(box.failure);
      std::sort(own.begin(), own.end());
      own.erase(std::unique(own.begin(), own.end()), own.end());
      for (const std::string& id : own) {
        if (claimed.count(id)) {
          fail(ErrorCode::cap_exceeded,
               "consequence '" + cbox.label + "' spans more than " +
                   std::to_string(cap) + " events and its decision boxes "
                   "share event '" + id + "', so it cannot be decomposed "
                   "for enumeration");
        }
      }
      claimed.insert(own.begin(), own.end());
      std::string pseudo_id = "sub" + std::to_string(subtrees.size());
      pseudo_events.emplace_back(pseudo_id,
                                 ft_prob_oracle(box.failure, assign, cap));
      subtrees.push_back({box.failure, std::move(pseudo_id)});
    }
  }

  FiniteSpace grid(std::move(pseudo_events), cap);
  ConsequenceBox lifted;
  lifted.label = cbox.label;
  for (const ConsequencePath& path : cbox.paths) {
    ConsequencePath lifted_path;
    lifted_path.id = path.id;
    for (const DecisionBox& box : path.boxes) {
      const SubTree* st = find_subtree(box.failure);
      lifted_path.boxes.push_back(
          {box.id, FtExpr::atomic(st->pseudo_id), box.selector});
    }
    lifted.paths.push_back(std::move(lifted_path));
  }
  return grid.prob(box_semantics(lifted, grid));
}

}  // namespace

double box_prob_oracle(const ConsequenceBox& cbox, const Assignment& assign,
                       std::size_t cap) {
  const std::vector<std::string> ids = box_events(cbox);
  if (ids.size() <= cap) {
    FiniteSpace space = space_for(ids, assign, cap);
    return space.prob(box_semantics(cbox, space));
  }
  return box_prob_hierarchical(cbox, assign, cap);
}

}  // namespace ccd
