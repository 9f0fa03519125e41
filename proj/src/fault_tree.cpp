#include "ccd/fault_tree.hpp"

#include <algorithm>

namespace ccd {

FtExpr FtExpr::atomic(std::string event_id) {
  FtExpr e;
  e.kind_ = Kind::atomic;
  e.event_ = std::move(event_id);
  return e;
}

FtExpr FtExpr::and_of(std::vector<FtExpr> children) {
  FtExpr e;
  e.kind_ = Kind::and_gate;
  e.children_ = std::move(children);
  return e;
}

FtExpr FtExpr::or_of(std::vector<FtExpr> children) {
  FtExpr e;
  e.kind_ = Kind::or_gate;
  e.children_ = std::move(children);
  return e;
}

FtExpr FtExpr::not_of(FtExpr child) {
  FtExpr e;
  e.kind_ = Kind::not_gate;
  e.children_.push_back(std::move(child));
  return e;
}

bool FtExpr::operator==(const FtExpr& other) const {
  return kind_ == other.kind_ && event_ == other.event_ &&
         children_ == other.children_;
}

void collect_leaves(const FtExpr& ft, std::vector<std::string>& out) {
  if (ft.kind() == FtExpr::Kind::atomic) {
    out.push_back(ft.event());
    return;
  }
  for (const FtExpr& child : ft.children()) collect_leaves(child, out);
}

std::vector<std::string> leaves(const FtExpr& ft) {
  std::vector<std::string> out;
  collect_leaves(ft, out);
  return out;
}

bool leaves_distinct(const FtExpr& ft) {
  std::vector<std::string> ids = leaves(ft);
  std::sort(ids.begin(), ids.end());
  return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
}

EventSet ft_semantics(const FtExpr& ft, const FiniteSpace& space) {
  switch (ft.kind()) {
    case FtExpr::Kind::atomic:
      return space.atomic(ft.event());
    case FtExpr::Kind::or_gate: {
      EventSet acc = space.empty_set();
      for (const FtExpr& child : ft.children()) {
        acc = acc | ft_semantics(child, space);
      }
      return acc;
    }
    case FtExpr::Kind::and_gate: {
      EventSet acc = space.full_set();
      for (const FtExpr& child : ft.children()) {
        acc = acc & ft_semantics(child, space);
      }
      return acc;
    }
    case FtExpr::Kind::not_gate:
      return ft_semantics(ft.children()[0], space).complement();
  }
  return space.empty_set();
}

namespace {

double prob_closed_unchecked(const FtExpr& ft, const Assignment& assign) {
  switch (ft.kind()) {
    case FtExpr::Kind::atomic:
      return assign.at(ft.event());
    case FtExpr::Kind::and_gate: {
      double product = 1.0;
      for (const FtExpr& child : ft.children()) {
        product *= prob_closed_unchecked(child, assign);
      }
      return product;
    }
    case FtExpr::Kind::or_gate: {
      double miss = 1.0;
      for (const FtExpr& child : ft.children()) {
        miss *= 1.0 - prob_closed_unchecked(child, assign);
      }
      return 1.0 - miss;
    }
    case FtExpr::Kind::not_gate:
      return 1.0 - prob_closed_unchecked(ft.children()[0], assign);
  }
  return 0.0;
}

}  // namespace

double ft_prob_closed(const FtExpr& ft, const Assignment& assign) {
  std::vector<std::string> ids = leaves(ft);
  std::sort(ids.begin(), ids.end());
  auto dup = std::adjacent_find(ids.begin(), ids.end());
  if (dup != ids.end()) {
    fail(ErrorCode::shared_leaf,
         "event '" + *dup + "' appears more than once; the product rule "
         "requires independent leaves, use the oracle instead");
  }
  return prob_closed_unchecked(ft, assign);
}

namespace {

void validate_rec(const FtExpr& ft, const std::set<std::string>& known,
                  std::vector<Diagnostic>& out) {
  switch (ft.kind()) {
    case FtExpr::Kind::atomic:
      if (!known.count(ft.event())) {
        out.push_back({Severity::error, 0, 0, "UnknownEvent",
                       "event '" + ft.event() + "' is not declared"});
      }
      return;
    case FtExpr::Kind::and_gate:
      if (ft.children().empty()) {
        out.push_back({Severity::notice, 0, 0, "EmptyGate",
                       "empty AND denotes the certain event"});
      }
      break;
    case FtExpr::Kind::or_gate:
      if (ft.children().empty()) {
        out.push_back({Severity::notice, 0, 0, "EmptyGate",
                       "empty OR denotes the impossible event"});
      }
      break;
    case FtExpr::Kind::not_gate:
      break;
  }
  for (const FtExpr& child : ft.children()) validate_rec(child, known, out);
}

}  // namespace

std::vector<Diagnostic> validate_ft(const FtExpr& ft,
                                    const std::set<std::string>& known_events) {
  std::vector<Diagnostic> out;
  validate_rec(ft, known_events, out);
  std::vector<std::string> ids = leaves(ft);
  std::sort(ids.begin(), ids.end());
  auto it = std::adjacent_find(ids.begin(), ids.end());
  while (it != ids.end()) {
    const std::string dup = *it;
    out.push_back({Severity::warning, 0, 0, "SharedLeaf",
                   "event '" + dup + "' appears more than once; closed-form "
                   "evaluation will refuse this tree"});
    it = std::find_if(it, ids.end(),
                      [&dup](const std::string& s) { return s != dup; });
    it = std::adjacent_find(it, ids.end());
  }
  return out;
}

}  // namespace ccd
