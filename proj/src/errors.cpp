#include "ccd/errors.hpp"

namespace ccd {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::invalid_probability: return "InvalidProbability";
    case ErrorCode::foreign_event: return "ForeignEvent";
    case ErrorCode::unknown_event: return "UnknownEvent";
    case ErrorCode::shared_leaf: return "SharedLeaf";
    case ErrorCode::shared_leaf_across_boxes: return "SharedLeafAcrossBoxes";
    case ErrorCode::empty_path: return "EmptyPath";
    case ErrorCode::not_disjoint: return "NotDisjoint";
    case ErrorCode::duplicate_path: return "DuplicatePath";
    case ErrorCode::negative_rate: return "NegativeRate";
    case ErrorCode::negative_time: return "NegativeTime";
    case ErrorCode::non_positive_rate: return "NonPositiveRate";
    case ErrorCode::missing_load_prob: return "MissingLoadProb";
    case ErrorCode::zero_customers: return "ZeroCustomers";
    case ErrorCode::duplicate_name: return "DuplicateName";
    case ErrorCode::unresolved_reference: return "UnresolvedReference";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Error";
}

}  // namespace ccd
