#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccd/event_tree.hpp"

namespace ccd {

/// Decision-box outcome selector. `no` keeps the failure event, `yes` its
/// complement, `irrelevant` the whole sample space (the reduction marker).
enum class Selector { no = 0, yes = 1, irrelevant = 2 };

const char* to_string(Selector selector);

/// A component question in a consequence path. The failure expression is the
/// NO event; YES is always its exact complement.
struct DecisionBox {
  std::string id;
  FtExpr failure;
  Selector selector = Selector::no;
};

/// Ordered sequence of decision boxes; denotes the intersection of their
/// selected outcomes (a BRANCH left-fold).
struct ConsequencePath {
  std::string id;
  std::vector<DecisionBox> boxes;
};

/// A labeled outcome: the disjoint union of the consequence paths that end
/// in it.
struct ConsequenceBox {
  std::string label;
  std::vector<ConsequencePath> paths;
};

EventSet dec_box_semantics(const DecisionBox& box, const FiniteSpace& space);
EventSet path_semantics(const ConsequencePath& path, const FiniteSpace& space);
EventSet box_semantics(const ConsequenceBox& cbox, const FiniteSpace& space);

/// Closed-form path probability: product over boxes of
/// yes -> 1 - P(failure), no -> P(failure), irrelevant -> 1.
/// Requires the non-irrelevant boxes' leaf sets to be pairwise disjoint
/// (shared_leaf_across_boxes otherwise); shared events need the oracle.
double path_prob_closed(const ConsequencePath& path, const Assignment& assign);

/// Closed-form consequence-box probability: sum of path probabilities.
/// Duplicate paths are rejected structurally. Disjointness is proven
/// structurally where possible; the overload taking a space settles the
/// remaining pairs by exact enumeration and raises not_disjoint on failure.
double box_prob_closed(const ConsequenceBox& cbox, const Assignment& assign);
double box_prob_closed(const ConsequenceBox& cbox, const Assignment& assign,
                       const FiniteSpace& space);

struct ReduceResult {
  std::vector<ConsequenceBox> boxes;
  std::size_t boxes_dropped = 0;
  std::vector<std::string> paths_dropped;  // ids of all-irrelevant paths
};

/// Drops every irrelevant-selector box from every path; paths left empty are
/// removed and reported. Labels and ordering are preserved. Sound because an
/// irrelevant box denotes the full space, so intersections are unchanged.
ReduceResult reduce(std::span<const ConsequenceBox> ccd);

enum class HomogeneousKind { type_a, type_b, type_c };

struct HomogeneousPath {
  ConsequencePath path;
  Assignment assign;  // synthetic leaf events with the given probabilities
};

/// Builds the canonical n-box path over synthetic events:
///   type_a: NO group and YES group both AND-gated,
///   type_b: both OR-gated,
///   type_c: NO group AND-gated, YES group OR-gated.
/// Each inner vector is one box's leaf probabilities.
HomogeneousPath build_homogeneous_paths(
    HomogeneousKind kind, const std::vector<std::vector<double>>& no_group,
    const std::vector<std::vector<double>>& yes_group);

/// Checks the consequence-box hypotheses: paths pairwise distinct and
/// disjoint. Pairs over an identical box sequence are disjoint when some
/// position opposes yes and no; other pairs need the space overload, which
/// decides them by enumeration.
std::vector<Diagnostic> validate_box(const ConsequenceBox& cbox);
std::vector<Diagnostic> validate_box(const ConsequenceBox& cbox,
                                     const FiniteSpace& space);

/// Distinct leaf events of a path/box, sorted.
std::vector<std::string> path_events(const ConsequencePath& path);
std::vector<std::string> box_events(const ConsequenceBox& cbox);

/// When every path ranges over one fixed box sequence and path i selects
/// `no` exactly at position i (`yes` elsewhere), returns the boxes' failure
/// expressions. This is the exactly-one-supply-fails shape.
std::optional<std::vector<FtExpr>> detect_exactly_one(
    const ConsequenceBox& cbox);

}  // namespace ccd
