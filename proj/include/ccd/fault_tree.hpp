#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "ccd/diagnostics.hpp"
#include "ccd/lifetime.hpp"
#include "ccd/sample_space.hpp"

namespace ccd {

/// Static fault-tree gate expression over basic events.
/// Immutable value type; freely shareable across threads.
class FtExpr {
 public:
  enum class Kind { atomic, and_gate, or_gate, not_gate };

  static FtExpr atomic(std::string event_id);
  static FtExpr and_of(std::vector<FtExpr> children);
  static FtExpr or_of(std::vector<FtExpr> children);
  static FtExpr not_of(FtExpr child);

  Kind kind() const { return kind_; }
  const std::string& event() const { return event_; }
  std::span<const FtExpr> children() const { return children_; }

  bool operator==(const FtExpr& other) const;

 private:
  FtExpr() = default;
  Kind kind_ = Kind::atomic;
  std::string event_;
  std::vector<FtExpr> children_;
};

/// All leaf event ids in expression order, duplicates preserved.
std::vector<std::string> leaves(const FtExpr& ft);
void collect_leaves(const FtExpr& ft, std::vector<std::string>& out);
bool leaves_distinct(const FtExpr& ft);

/// Event-set denotation: atomic -> the event's outcomes, OR -> union,
/// AND -> intersection, NOT -> complement in the space. Empty AND is the
/// full space and empty OR the empty set (neutral elements).
EventSet ft_semantics(const FtExpr& ft, const FiniteSpace& space);

/// Closed-form probability assuming all leaves are independent:
/// AND -> product, OR -> 1 - prod(1 - child), NOT -> 1 - child.
/// Repeated leaf ids make the product rule unsound, so they are rejected
/// (shared_leaf) instead of silently mis-multiplied.
double ft_prob_closed(const FtExpr& ft, const Assignment& assign);

/// Structural health check: unknown events, repeated leaves, empty gates.
std::vector<Diagnostic> validate_ft(const FtExpr& ft,
                                    const std::set<std::string>& known_events);

}  // namespace ccd
