#include "ccd/sample_space.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>

namespace ccd {

namespace {

std::uint64_t next_space_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

constexpr std::size_t kHardCap = 24;  // 2^24 weights = 128 MiB

std::size_t word_count(std::size_t n_outcomes) { return (n_outcomes + 63) / 64; }

}  // namespace

// ---------------------------------------------------------------------------
// EventSet

EventSet::EventSet(std::uint64_t space_id, std::size_t n_outcomes, bool full)
    : space_id_(space_id),
      n_outcomes_(n_outcomes),
      bits_(word_count(n_outcomes), full ? ~0ull : 0ull) {
  if (full && n_outcomes % 64 != 0) {
    bits_.back() = (1ull << (n_outcomes % 64)) - 1;
  }
}

void EventSet::check_same_space(const EventSet& other) const {
  if (space_id_ != other.space_id_) {
    fail(ErrorCode::foreign_event, "event sets belong to different spaces");
  }
}

bool EventSet::empty() const {
  for (std::uint64_t w : bits_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t EventSet::count() const {
  std::size_t total = 0;
  for (std::uint64_t w : bits_) total += std::popcount(w);
  return total;
}

bool EventSet::intersects(const EventSet& other) const {
  check_same_space(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & other.bits_[i]) return true;
  }
  return false;
}

bool EventSet::is_subset_of(const EventSet& other) const {
  check_same_space(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

EventSet EventSet::operator&(const EventSet& other) const {
  check_same_space(other);
  EventSet result = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) result.bits_[i] &= other.bits_[i];
  return result;
}

EventSet EventSet::operator|(const EventSet& other) const {
  check_same_space(other);
  EventSet result = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) result.bits_[i] |= other.bits_[i];
  return result;
}

EventSet EventSet::complement() const {
  EventSet result = *this;
  for (std::uint64_t& w : result.bits_) w = ~w;
  if (n_outcomes_ % 64 != 0) {
    result.bits_.back() &= (1ull << (n_outcomes_ % 64)) - 1;
  }
  return result;
}

bool EventSet::operator==(const EventSet& other) const {
  return space_id_ == other.space_id_ && bits_ == other.bits_;
}

// ---------------------------------------------------------------------------
// FiniteSpace

FiniteSpace::FiniteSpace(std::vector<std::pair<std::string, double>> events,
                         std::size_t cap)
    : id_(next_space_id()), events_(std::move(events)) {
  if (events_.size() > cap) {
    fail(ErrorCode::cap_exceeded,
         std::to_string(events_.size()) + " events exceed the enumeration cap of " +
             std::to_string(cap));
  }
  if (events_.size() > kHardCap) {
    fail(ErrorCode::cap_exceeded,
         "enumeration over " + std::to_string(events_.size()) +
             " events does not fit in memory (hard cap " +
             std::to_string(kHardCap) + ")");
  }
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const auto& [id, p] = events_[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      fail(ErrorCode::invalid_probability,
           "event '" + id + "' has probability " + std::to_string(p));
    }
    for (std::size_t j = i + 1; j < events_.size(); ++j) {
      if (events_[j].first == id) {
        fail(ErrorCode::duplicate_name, "event '" + id + "' appears twice");
      }
    }
  }

  // Product expansion, one event at a time: weights over k+1 events are the
  // weights over k events scaled by (1-p) in the lower half and p in the
  // upper half (bit k set = event k occurred).
  weights_.assign(std::size_t{1} << events_.size(), 0.0);
  weights_[0] = 1.0;
  std::size_t filled = 1;
  for (const auto& [id, p] : events_) {
    for (std::size_t k = 0; k < filled; ++k) {
      weights_[filled + k] = weights_[k] * p;
      weights_[k] *= 1.0 - p;
    }
    filled *= 2;
  }
}

bool FiniteSpace::has_event(const std::string& id) const {
  for (const auto& [event_id, p] : events_) {
    if (event_id == id) return true;
  }
  return false;
}

std::size_t FiniteSpace::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].first == id) return i;
  }
  fail(ErrorCode::unknown_event, "event '" + id + "' is not in the space");
}

EventSet FiniteSpace::empty_set() const { return EventSet(id_, n_outcomes(), false); }

EventSet FiniteSpace::full_set() const { return EventSet(id_, n_outcomes(), true); }

EventSet FiniteSpace::atomic(std::size_t index) const {
  EventSet set = empty_set();
  const std::size_t bit = std::size_t{1} << index;
  for (std::size_t outcome = 0; outcome < n_outcomes(); ++outcome) {
    if (outcome & bit) set.set(outcome);
  }
  return set;
}

EventSet FiniteSpace::atomic(const std::string& id) const {
  return atomic(index_of(id));
}

namespace {

// Fixed chunking, independent of thread count, so the combine order (and
// therefore the float result) never changes between serial and parallel runs.
constexpr std::size_t kChunkOutcomes = 1 << 14;

double masked_sum(const std::vector<double>& weights,
                  std::span<const std::uint64_t> words, std::size_t begin,
                  std::size_t end) {
  double sum = 0.0;
  for (std::size_t w = begin / 64; w * 64 < end; ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      bits &= bits - 1;
      sum += weights[w * 64 + static_cast<std::size_t>(b)];
    }
  }
  return sum;
}

}  // namespace

double FiniteSpace::prob(const EventSet& set) const {
  if (set.space_id() != id_) {
    fail(ErrorCode::foreign_event, "event set was built from another space");
  }
  const std::size_t n = n_outcomes();
  const std::size_t n_chunks = (n + kChunkOutcomes - 1) / kChunkOutcomes;
  if (n_chunks <= 1) {
    return masked_sum(weights_, set.words(), 0, n);
  }
  std::vector<double> partial(n_chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < n_chunks; ++c) {
    const std::size_t begin = c * kChunkOutcomes;
    const std::size_t end = std::min(begin + kChunkOutcomes, n);
    partial[c] = masked_sum(weights_, set.words(), begin, end);
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double prob(const FiniteSpace& space, const EventSet& set) {
  return space.prob(set);
}

FiniteSpace build_space(std::vector<std::pair<std::string, double>> events,
                        std::size_t cap) {
  return FiniteSpace(std::move(events), cap);
}

bool check_disjoint(const FiniteSpace& space, std::span<const EventSet> sets) {
  for (const EventSet& set : sets) {
    if (set.space_id() != space.id()) {
      fail(ErrorCode::foreign_event, "event set was built from another space");
    }
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i].intersects(sets[j])) return false;
    }
  }
  return true;
}

bool check_mutual_independence(const FiniteSpace& space,
                               std::span<const EventSet> sets, double tol) {
  if (sets.size() > 20) {
    fail(ErrorCode::cap_exceeded,
         "independence check over " + std::to_string(sets.size()) +
             " sets enumerates 2^n subsets; cap is 20");
  }
  std::vector<double> probs;
  probs.reserve(sets.size());
  for (const EventSet& set : sets) probs.push_back(space.prob(set));

  const std::size_t n_subsets = std::size_t{1} << sets.size();
  for (std::size_t mask = 1; mask < n_subsets; ++mask) {
    EventSet meet = space.full_set();
    double product = 1.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        meet = meet & sets[i];
        product *= probs[i];
      }
    }
    if (std::abs(space.prob(meet) - product) > tol) return false;
  }
  return true;
}

std::size_t oracle_cap() {
  if (const char* env = std::getenv("CCD_ORACLE_CAP")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && value >= 1) {
      return std::min<std::size_t>(static_cast<std::size_t>(value), kHardCap);
    }
  }
  return FiniteSpace::kDefaultCap;
}

namespace reference {

double prob_serial(const FiniteSpace& space, const EventSet& set) {
  if (set.space_id() != space.id()) {
    fail(ErrorCode::foreign_event, "event set was built from another space");
  }
  double sum = 0.0;
  for (std::size_t outcome = 0; outcome < space.n_outcomes(); ++outcome) {
    if (set.test(outcome)) sum += space.weight(outcome);
  }
  return sum;
}

}  // namespace reference

}  // namespace ccd
