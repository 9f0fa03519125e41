#pragma once

#include <span>
#include <string>
#include <vector>

#include "ccd/ccd_core.hpp"

namespace ccd {

/// Space over the named events with probabilities taken from the assignment.
FiniteSpace space_for(std::span<const std::string> event_ids,
                      const Assignment& assign, std::size_t cap = oracle_cap());

/// Exact probabilities by enumeration. Each builds a space over the target's
/// own leaf events, so the cap applies to that count only.
double ft_prob_oracle(const FtExpr& ft, const Assignment& assign,
                      std::size_t cap = oracle_cap());
double path_prob_oracle(const ConsequencePath& path, const Assignment& assign,
                        std::size_t cap = oracle_cap());

/// Exact consequence-box probability. Uses flat enumeration when the box's
/// leaf count fits the cap. Beyond the cap it enumerates hierarchically:
/// each distinct failure tree becomes one Bernoulli whose marginal is
/// enumerated over that tree's private leaves, and the box semantics is then
/// enumerated over those per-box Bernoullis. The decomposition is exact
/// because boxes with disjoint leaf sets are independent; boxes sharing
/// leaves cannot be decomposed and raise cap_exceeded.
double box_prob_oracle(const ConsequenceBox& cbox, const Assignment& assign,
                       std::size_t cap = oracle_cap());

}  // namespace ccd
