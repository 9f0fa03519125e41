#pragma once

#include <span>
#include <vector>

#include "ccd/fault_tree.hpp"

namespace ccd {

/// Event-tree combinator expression. NODE is the union of its alternatives;
/// BRANCH intersects a conditioning event with the union of its children.
/// Leaves carry fault-tree expressions, which over a finite product space can
/// denote any event.
class EtExpr {
 public:
  enum class Kind { atomic, node, branch };

  static EtExpr atomic(FtExpr leaf);
  static EtExpr node(std::vector<EtExpr> children);
  static EtExpr branch(FtExpr condition, std::vector<EtExpr> children);

  Kind kind() const { return kind_; }
  const FtExpr& leaf() const { return leaf_; }
  const FtExpr& condition() const { return leaf_; }
  std::span<const EtExpr> children() const { return children_; }

 private:
  EtExpr() : leaf_(FtExpr::atomic("")) {}
  Kind kind_ = Kind::atomic;
  FtExpr leaf_;  // atomic payload, or the branch condition
  std::vector<EtExpr> children_;
};

EventSet et_semantics(const EtExpr& et, const FiniteSpace& space);

/// NODE probability: sum of child probabilities. The children must be
/// pairwise disjoint; that hypothesis is the caller's obligation here, but a
/// sum exceeding 1 + 1e-12 is proof of a violation and raises not_disjoint.
double node_prob(std::span<const double> child_probs);

/// NODE probability with the disjointness hypothesis checked exactly
/// against the space.
double node_prob(const FiniteSpace& space, std::span<const EventSet> children);

/// BRANCH probability: prob(y) * sum(children). Same hypothesis handling
/// as node_prob; y must additionally be independent of the children.
double branch_prob(double y, std::span<const double> child_probs);
double branch_prob(const FiniteSpace& space, const EventSet& condition,
                   std::span<const EventSet> children);

}  // namespace ccd
