#include "ccd/event_tree.hpp"

#include <algorithm>
#include <cmath>

namespace ccd {

EtExpr EtExpr::atomic(FtExpr leaf) {
  EtExpr e;
  e.kind_ = Kind::atomic;
  e.leaf_ = std::move(leaf);
  return e;
}

EtExpr EtExpr::node(std::vector<EtExpr> children) {
  EtExpr e;
  e.kind_ = Kind::node;
  e.children_ = std::move(children);
  return e;
}

EtExpr EtExpr::branch(FtExpr condition, std::vector<EtExpr> children) {
  EtExpr e;
  e.kind_ = Kind::branch;
  e.leaf_ = std::move(condition);
  e.children_ = std::move(children);
  return e;
}

EventSet et_semantics(const EtExpr& et, const FiniteSpace& space) {
  switch (et.kind()) {
    case EtExpr::Kind::atomic:
      return ft_semantics(et.leaf(), space);
    case EtExpr::Kind::node: {
      // NODE(h::L) = sem(h) u NODE(L); empty NODE is the impossible event.
      EventSet acc = space.empty_set();
      for (const EtExpr& child : et.children()) {
        acc = acc | et_semantics(child, space);
      }
      return acc;
    }
    case EtExpr::Kind::branch: {
      // BRANCH X (h::L) = X n (sem(h) u BRANCH X L), which folds to the
      // condition intersected with the union of all children.
      EventSet acc = space.empty_set();
      for (const EtExpr& child : et.children()) {
        acc = acc | et_semantics(child, space);
      }
      return ft_semantics(et.condition(), space) & acc;
    }
  }
  return space.empty_set();
}

namespace {
constexpr double kSumSlack = 1e-12;
}

double node_prob(std::span<const double> child_probs) {
  double sum = 0.0;
  for (double p : child_probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      fail(ErrorCode::invalid_probability, "child probability " + std::to_string(p));
    }
    sum += p;
  }
  if (sum > 1.0 + kSumSlack) {
    fail(ErrorCode::not_disjoint,
         "child probabilities sum to " + std::to_string(sum) +
             "; the children cannot be pairwise disjoint");
  }
  return std::min(sum, 1.0);
}

double node_prob(const FiniteSpace& space, std::span<const EventSet> children) {
  if (!check_disjoint(space, children)) {
    fail(ErrorCode::not_disjoint, "NODE children overlap");
  }
  std::vector<double> probs;
  probs.reserve(children.size());
  for (const EventSet& child : children) probs.push_back(space.prob(child));
  return node_prob(probs);
}

double branch_prob(double y, std::span<const double> child_probs) {
  if (!(y >= 0.0 && y <= 1.0)) {
    fail(ErrorCode::invalid_probability, "condition probability " + std::to_string(y));
  }
  return y * node_prob(child_probs);
}

double branch_prob(const FiniteSpace& space, const EventSet& condition,
                   std::span<const EventSet> children) {
  if (!check_disjoint(space, children)) {
    fail(ErrorCode::not_disjoint, "BRANCH children overlap");
  }
  std::vector<double> probs;
  probs.reserve(children.size());
  for (const EventSet& child : children) probs.push_back(space.prob(child));
  return branch_prob(space.prob(condition), probs);
}

}  // namespace ccd
