#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccd/errors.hpp"

namespace ccd {

class FiniteSpace;

/// A subset of one FiniteSpace's outcomes, stored as a bitset indexed by
/// outcome number. Sets are canonical per space, so equality is decidable.
class EventSet {
 public:
  bool test(std::size_t outcome) const {
    return (bits_[outcome >> 6] >> (outcome & 63)) & 1u;
  }
  void set(std::size_t outcome) { bits_[outcome >> 6] |= 1ull << (outcome & 63); }
  void reset(std::size_t outcome) {
    bits_[outcome >> 6] &= ~(1ull << (outcome & 63));
  }

  std::size_t n_outcomes() const { return n_outcomes_; }
  std::uint64_t space_id() const { return space_id_; }

  bool empty() const;
  std::size_t count() const;
  bool intersects(const EventSet& other) const;
  bool is_subset_of(const EventSet& other) const;

  EventSet operator&(const EventSet& other) const;
  EventSet operator|(const EventSet& other) const;
  EventSet complement() const;

  bool operator==(const EventSet& other) const;

  std::span<const std::uint64_t> words() const { return bits_; }

 private:
  friend class FiniteSpace;
  EventSet(std::uint64_t space_id, std::size_t n_outcomes, bool full);
  void check_same_space(const EventSet& other) const;

  std::uint64_t space_id_ = 0;
  std::size_t n_outcomes_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Exact product-Bernoulli probability space over n independent basic events.
/// Outcome k has event i occurred iff bit i of k is set; its weight is the
/// product of per-event marginals. This is the brute-force oracle every
/// closed form is tested against, so it stays desk-scale: construction is
/// capped (default 20 events, 2^20 outcomes).
class FiniteSpace {
 public:
  static constexpr std::size_t kDefaultCap = 20;

  FiniteSpace(std::vector<std::pair<std::string, double>> events,
              std::size_t cap = kDefaultCap);

  std::size_t n_events() const { return events_.size(); }
  std::size_t n_outcomes() const { return weights_.size(); }
  std::uint64_t id() const { return id_; }

  const std::string& event_id(std::size_t index) const {
    return events_[index].first;
  }
  double event_probability(std::size_t index) const {
    return events_[index].second;
  }
  bool has_event(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;  // throws unknown_event

  double weight(std::size_t outcome) const { return weights_[outcome]; }

  EventSet empty_set() const;
  EventSet full_set() const;
  /// Outcomes in which the named event occurred.
  EventSet atomic(const std::string& id) const;
  EventSet atomic(std::size_t index) const;

  /// Total weight of the set's outcomes. Deterministic for any thread count:
  /// the sum is accumulated over fixed-size chunks combined in index order,
  /// with the chunks themselves evaluated in parallel when OpenMP is enabled.
  double prob(const EventSet& set) const;

 private:
  std::uint64_t id_;
  std::vector<std::pair<std::string, double>> events_;
  std::vector<double> weights_;
};

double prob(const FiniteSpace& space, const EventSet& set);

FiniteSpace build_space(std::vector<std::pair<std::string, double>> events,
                        std::size_t cap = FiniteSpace::kDefaultCap);

/// True iff every pair of sets has empty intersection.
bool check_disjoint(const FiniteSpace& space, std::span<const EventSet> sets);

/// True iff every non-empty sub-collection S satisfies
/// prob(intersection of S) = product of probs, within tol.
/// Enumerates 2^|sets| subsets; capped at 20 sets.
bool check_mutual_independence(const FiniteSpace& space,
                               std::span<const EventSet> sets,
                               double tol = 1e-9);

/// Enumeration cap honoring the CCD_ORACLE_CAP environment override.
/// Values are clamped to [1, 24] to keep the weight table in memory.
std::size_t oracle_cap();

namespace reference {
/// Straight single-accumulator sweep over all outcomes. Kept as the serial
/// baseline for tests and the kernel benchmark.
double prob_serial(const FiniteSpace& space, const EventSet& set);
}  // namespace reference

}  // namespace ccd
