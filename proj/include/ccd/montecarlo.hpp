#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ccd/ccd_core.hpp"

namespace ccd {

/// Frequency estimate of an event probability from n joint Bernoulli draws.
/// Reproducible: (seed, n, target) fully determine the result, independent
/// of thread count.
struct McsEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kMcsDefaultSamples = 100000;

/// PRNG scheme, pinned for cross-platform reproducibility:
/// mt19937_64 engines seeded per block of 4096 samples with
/// derive_stream_seed(base, block); uniforms take the top 53 bits.
/// Blocks tally integer hit counts and are merged in index order, so the
/// estimate is bit-identical with or without OpenMP.
std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t stream);
double uniform01(std::mt19937_64& rng);

McsEstimate mcs_estimate(const FtExpr& target, const Assignment& assign,
                         std::uint64_t n = kMcsDefaultSamples,
                         std::uint64_t seed = 1);
McsEstimate mcs_estimate(const ConsequencePath& target,
                         const Assignment& assign,
                         std::uint64_t n = kMcsDefaultSamples,
                         std::uint64_t seed = 1);
McsEstimate mcs_estimate(const ConsequenceBox& target, const Assignment& assign,
                         std::uint64_t n = kMcsDefaultSamples,
                         std::uint64_t seed = 1);

/// Estimates several boxes from one shared sample stream (one joint state
/// per iteration over the union of their events).
std::vector<McsEstimate> mcs_estimate_many(
    std::span<const ConsequenceBox> targets, const Assignment& assign,
    std::uint64_t n = kMcsDefaultSamples, std::uint64_t seed = 1);

/// Sequential availability study: alternate time-to-fail and time-to-repair
/// draws until the horizon, then report the fraction of time spent in
/// repair. The draw formulas follow the source procedure verbatim, where the
/// repair parameter r divides like a rate (TTR = -ln U / r); corrected_ttr
/// instead treats r as a mean repair time (TTR = -r ln U).
struct TtfTtrResult {
  double unavailability = 0.0;
  std::uint64_t cycles = 0;
  double horizon_hours = 0.0;
  std::uint64_t seed = 0;
  bool corrected_ttr = false;
};

double draw_ttf(double u, double lambda);
double draw_ttr(double u, double r, bool corrected);

TtfTtrResult ttf_ttr_study(double lambda_per_hour, double repair_hours,
                           double horizon_hours, std::uint64_t seed,
                           bool corrected_ttr = false);

namespace reference {
/// Single-stream sampler: one engine, one loop. Distributionally equivalent
/// to the block kernel; kept for tests and the benchmark.
McsEstimate mcs_single_stream(const ConsequenceBox& target,
                              const Assignment& assign, std::uint64_t n,
                              std::uint64_t seed);
McsEstimate mcs_single_stream(const FtExpr& target, const Assignment& assign,
                              std::uint64_t n, std::uint64_t seed);
}  // namespace reference

}  // namespace ccd
